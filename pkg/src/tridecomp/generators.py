"""Named fixture graphs and seeded random planar graphs."""

from __future__ import annotations

import random
import re
from typing import Callable

import networkx as nx

from .errors import UnknownName
from .graph import Multigraph, double


def _from_nx(g: nx.Graph) -> Multigraph:
    g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    edges = sorted((min(u, v), max(u, v)) for u, v in g.edges())
    return Multigraph(g.number_of_nodes(), tuple(edges))


def _simple(n: int, edges) -> Multigraph:
    return Multigraph(n, tuple(sorted((min(u, v), max(u, v)) for u, v in edges)))


def complete(n: int) -> Multigraph:
    return _simple(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle(n: int) -> Multigraph:
    return _simple(n, ((i, (i + 1) % n) for i in range(n)))


def k4_minus_e() -> Multigraph:
    # the missing pair is 2-3
    return _simple(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def k5_minus_e() -> Multigraph:
    return _simple(5, [(i, j) for i in range(5) for j in range(i + 1, 5) if (i, j) != (3, 4)])


def h_counterexample() -> Multigraph:
    """K(2,7) with its two degree-7 vertices (0 and 1) joined."""
    return _simple(9, [(0, 1)] + [(hub, leaf) for hub in (0, 1) for leaf in range(2, 9)])


def wheel(k: int) -> Multigraph:
    """Hub 0 joined to the cycle 1..k."""
    return _simple(k + 1, [(0, i) for i in range(1, k + 1)] + [(i, i % k + 1) for i in range(1, k + 1)])


def bipyramid(k: int) -> Multigraph:
    """Apexes 0 and 1 over the cycle 2..k+1; Eulerian exactly when k is even."""
    ring = list(range(2, k + 2))
    edges = [(ring[i], ring[(i + 1) % k]) for i in range(k)]
    edges += [(apex, v) for apex in (0, 1) for v in ring]
    return _simple(k + 2, edges)


def prism() -> Multigraph:
    return _simple(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def bowtie() -> Multigraph:
    return _simple(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def stacked_k4() -> Multigraph:
    """K4 with a fifth vertex inside the face 1 2 3."""
    return _simple(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 1), (4, 2), (4, 3)])


def nested_triangles(layers: int = 4) -> Multigraph:
    """Concentric triangles, consecutive layers joined as an octahedral band.

    Every face is a triangle and every vertex has even degree, so this is an
    Eulerian triangulation rich in separating triangles.
    """
    edges = []
    for k in range(layers):
        a = 3 * k
        edges += [(a, a + 1), (a + 1, a + 2), (a, a + 2)]
        if k:
            p = a - 3
            for i in range(3):
                edges += [(p + i, a + i), (p + i, a + (i + 1) % 3)]
    return _simple(3 * layers, edges)


NAMED: dict[str, Callable[[], Multigraph]] = {
    "k3": lambda: complete(3),
    "k4": lambda: complete(4),
    "k4_minus_e": k4_minus_e,
    "octahedron": lambda: _from_nx(nx.octahedral_graph()),
    "icosahedron": lambda: _from_nx(nx.icosahedral_graph()),
    "h_counterexample": h_counterexample,
    "k5_minus_e": k5_minus_e,
    "k5": lambda: complete(5),
    "c4": lambda: cycle(4),
    "c5": lambda: cycle(5),
    "c6": lambda: cycle(6),
    "bowtie": bowtie,
    "prism": prism,
    "stacked_k4": stacked_k4,
    "nested_triangles": nested_triangles,
    "wheel5": lambda: wheel(5),
    "wheel6": lambda: wheel(6),
    "bipyramid3": lambda: bipyramid(3),
    "bipyramid5": lambda: bipyramid(5),
    "bipyramid6": lambda: bipyramid(6),
    "bipyramid8": lambda: bipyramid(8),
}

_DOUBLE = re.compile(r"double\((.+)\)$")


def generate_named(name: str) -> Multigraph:
    """Fixture by name; ``double(<name>)`` doubles every edge of a fixture."""
    name = name.strip()
    m = _DOUBLE.match(name)
    if m:
        return double(generate_named(m.group(1)))
    try:
        return NAMED[name]()
    except KeyError:
        raise UnknownName(name) from None


def named_fixtures(include_doubles: bool = True) -> dict[str, Multigraph]:
    """Every named fixture, plus the doubles of the small planar ones."""
    out = {name: build() for name, build in NAMED.items()}
    if include_doubles:
        for name in ("k3", "k4", "k4_minus_e", "bowtie", "c4"):
            out[f"double({name})"] = double(out[name])
    return out


def generate_random_maximal_planar(n: int, seed: int, flips: int = 0) -> Multigraph:
    """A maximal planar simple graph on n vertices; deterministic per seed.

    Starts from a triangle and repeatedly inserts the next vertex into a
    uniformly chosen face. ``flips`` further random edge flips (skipping any
    that would create a parallel edge) move away from stacked triangulations,
    which for n >= 5 always have a degree-3 vertex and so are never Eulerian.
    """
    if n < 3:
        raise ValueError("a maximal planar graph needs at least 3 vertices")
    rng = random.Random(seed)
    # both sides of the first triangle are faces
    faces = [(0, 1, 2), (0, 1, 2)]
    adj = {0: {1, 2}, 1: {0, 2}, 2: {0, 1}}
    for v in range(3, n):
        i = rng.randrange(len(faces))
        a, b, c = faces[i]
        faces[i] = (a, b, v)
        faces += [(b, c, v), (a, c, v)]
        adj[v] = {a, b, c}
        for w in (a, b, c):
            adj[w].add(v)
    if n == 3:
        faces = faces[:1]
    for _ in range(flips if n >= 5 else 0):
        edges = sorted((u, w) for u in adj for w in adj[u] if u < w)
        u, w = edges[rng.randrange(len(edges))]
        sides = [i for i, f in enumerate(faces) if u in f and w in f]
        if len(sides) != 2:
            continue
        x, y = (next(z for z in faces[i] if z not in (u, w)) for i in sides)
        if y in adj[x] or min(len(adj[u]), len(adj[w])) <= 3:
            continue
        adj[u].discard(w)
        adj[w].discard(u)
        adj[x].add(y)
        adj[y].add(x)
        faces[sides[0]] = (u, x, y)
        faces[sides[1]] = (w, x, y)
    return _simple(n, ((u, w) for u in adj for w in adj[u] if u < w))


def generate_random_planar(n: int, seed: int, keep: float = 0.75) -> Multigraph:
    """Random spanning subgraph of a random triangulation; each edge is kept
    with probability ``keep``."""
    rng = random.Random(seed)
    T = generate_random_maximal_planar(n, rng.randrange(2**32), flips=2 * n)
    return Multigraph(n, tuple(e for e in T.edges if rng.random() < keep))
