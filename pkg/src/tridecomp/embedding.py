"""Combinatorial plane embeddings (rotation systems), faces and duals.

Darts: edge ``e = (u, v)`` has dart ``2e`` leaving ``u`` and dart ``2e + 1``
leaving ``v``; the reverse of dart ``d`` is ``d ^ 1``.

Face traversal convention: the dart after ``d`` on its face is the rotation
successor, at the head of ``d``, of the reverse of ``d``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

import networkx as nx

from .errors import GraphError, LoopEdge, NotConnected, NotPlanar
from .graph import Multigraph, blocks, connected_components

DEFAULT_EMBEDDING_CAP = 10**6


def tail(G: Multigraph, d: int) -> int:
    return G.edges[d >> 1][d & 1]


def head(G: Multigraph, d: int) -> int:
    return G.edges[d >> 1][1 - (d & 1)]


def target_face_count(G: Multigraph) -> int:
    """Faces a genus-0 embedding of G has, summed over components with edges."""
    total = 0
    for comp in connected_components(G):
        if len(comp) < 2:
            continue
        cs = set(comp)
        e = sum(1 for u, _ in G.edges if u in cs)
        total += 2 - len(comp) + e
    return total


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic order of outgoing darts at every vertex of ``graph``."""

    graph: Multigraph
    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        G = self.graph
        rot = tuple(tuple(r) for r in self.rotation)
        object.__setattr__(self, "rotation", rot)
        if len(rot) != G.vertex_count:
            raise GraphError("rotation system needs one cyclic order per vertex")
        seen = set()
        for v, darts in enumerate(rot):
            for d in darts:
                if not 0 <= d < 2 * G.edge_count or tail(G, d) != v or d in seen:
                    raise GraphError(f"dart {d} misplaced at vertex {v}")
                seen.add(d)
        if len(seen) != 2 * G.edge_count:
            raise GraphError("rotation system misses darts")

    @cached_property
    def successor(self) -> tuple[int, ...]:
        succ = [0] * (2 * self.graph.edge_count)
        for darts in self.rotation:
            for i, d in enumerate(darts):
                succ[d] = darts[(i + 1) % len(darts)]
        return tuple(succ)

    def next_on_face(self, d: int) -> int:
        return self.successor[d ^ 1]

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Face boundaries as dart cycles, each starting at its smallest dart.

        Faces are ordered by that smallest dart.
        """
        succ = self.successor
        seen = [False] * len(succ)
        out = []
        for d0 in range(len(succ)):
            if seen[d0]:
                continue
            face = []
            d = d0
            while not seen[d]:
                seen[d] = True
                face.append(d)
                d = succ[d ^ 1]
            out.append(tuple(face))
        return tuple(out)

    @cached_property
    def face_of_dart(self) -> tuple[int, ...]:
        owner = [0] * (2 * self.graph.edge_count)
        for i, face in enumerate(self.faces):
            for d in face:
                owner[d] = i
        return tuple(owner)

    def is_planar(self) -> bool:
        """Euler's formula holds for every component."""
        return len(self.faces) == target_face_count(self.graph)

    def face_structure(self) -> tuple[tuple[int, ...], ...]:
        """Canonical face key: sorted multiset of sorted face edge lists.

        Mirror-image rotation systems share a key.
        """
        return tuple(sorted(tuple(sorted(d >> 1 for d in f)) for f in self.faces))

    def mirror(self) -> "RotationSystem":
        return RotationSystem(self.graph, tuple(tuple(reversed(r)) for r in self.rotation))


def faces(rs: RotationSystem) -> list[tuple[int, ...]]:
    return list(rs.faces)


def face_edges(face: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(d >> 1 for d in face)


def face_vertices(G: Multigraph, face: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(tail(G, d) for d in face)


class Capped:
    """Iterator wrapper that records whether a cap cut the enumeration short.

    Read ``truncated`` after the iterator is exhausted.
    """

    def __init__(self, gen):
        self._gen = gen
        self.truncated = False

    def __iter__(self):
        return self

    def __next__(self):
        return next(self._gen)


def is_planar(G: Multigraph) -> bool:
    planar, _ = nx.check_planarity(_simple_nx(G))
    return planar


def _simple_nx(G: Multigraph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.vertex_count))
    H.add_edges_from(G.pair_edges)
    return H


def embed(G: Multigraph) -> RotationSystem:
    """A genus-0 rotation system of G, or raise :class:`NotPlanar`.

    The underlying simple graph is embedded with the left-right planarity
    test; parallel copies of an edge are then placed next to each other,
    in opposite orders at the two ends, so that they bound digon faces.
    """
    planar, emb = nx.check_planarity(_simple_nx(G))
    if not planar:
        kuratowski = nx.check_planarity(_simple_nx(G), counterexample=True)[1]
        witness = sorted(G.edges_between(u, v)[0] for u, v in kuratowski.edges)
        raise NotPlanar(witness=witness)
    rotation = []
    for v in range(G.vertex_count):
        darts = []
        if G.incidence[v]:
            for w in emb.neighbors_cw_order(v):
                ids = G.edges_between(v, w)
                if v > w:
                    ids = ids[::-1]
                darts.extend(2 * e + (0 if G.edges[e][0] == v else 1) for e in ids)
        rotation.append(tuple(darts))
    rs = RotationSystem(G, tuple(rotation))
    assert rs.is_planar(), "embedding violates Euler's formula"
    return rs


def is_two_connected(G: Multigraph) -> bool:
    """Connected, no cut vertex, and at least 3 vertices or a multi-edge on 2."""
    if G.vertex_count < 2 or len(connected_components(G)) != 1:
        return False
    bl = blocks(G)
    if len(bl) != 1:
        return False
    return G.vertex_count >= 3 or G.edge_count >= 2


def is_three_connected(G: Multigraph) -> bool:
    """Simple-graph 3-connectivity: at least 4 vertices and no 2-vertex cut."""
    n = G.vertex_count
    if n < 4 or not is_two_connected(G):
        return False
    for v in range(n):
        rest = [w for w in range(n) if w != v]
        sub = G.induced(rest).graph
        if not is_two_connected(sub):
            return False
    return True


def _vertex_order(G: Multigraph) -> list[int]:
    """Smallest degree first, ties to the vertex with most placed neighbours.

    Low-degree vertices are cheap to fix and let faces close before the
    expensive high-degree rotations are branched on.
    """
    left = set(range(G.vertex_count))
    placed_nbrs = [0] * G.vertex_count
    order = []
    while left:
        v = min(left, key=lambda x: (G.degree(x), -placed_nbrs[x], x))
        left.discard(v)
        order.append(v)
        for w in G.adjacency[v]:
            placed_nbrs[w] += 1
    return order


def _genus0_rotations(G: Multigraph) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Backtracking over cyclic orders, pruned on reachable face count.

    Choosing ``succ(x) = y`` at a vertex fixes the face step ``x^1 -> y``. The
    partial face permutation is a set of open chains plus closed faces, and a
    chain can only close where it both starts and ends. So open chains whose
    two ends sit at one vertex can each still become a face, while the rest
    need at least two per face; the branch dies once closed faces plus that
    optimistic count falls below the Euler target.
    """
    ndarts = 2 * G.edge_count
    target = target_face_count(G)
    T = [tail(G, d) for d in range(ndarts)]
    H = [head(G, d) for d in range(ndarts)]
    darts_at = [[] for _ in range(G.vertex_count)]
    for d in range(ndarts):
        darts_at[T[d]].append(d)
    start_of = list(range(ndarts))
    end_of = list(range(ndarts))
    succ = [-1] * ndarts
    order = [v for v in _vertex_order(G) if darts_at[v]]
    # closed faces, open chains ending where they start, other open chains
    count = [0, 0, ndarts]

    def link(x, y):
        # the face step runs from x^1 (a chain end) to y (a chain start)
        a = x ^ 1
        s = start_of[a]
        succ[x] = y
        if s == y:
            count[0] += 1
            count[1] -= 1
            return None
        t = end_of[y]
        c1, c2, c3 = T[s] == H[a], T[y] == H[t], T[s] == H[t]
        end_of[s] = t
        start_of[t] = s
        count[1] += c3 - c1 - c2
        count[2] += (not c3) - (not c1) - (not c2)
        return (s, a, t, y, c1, c2, c3)

    def unlink(x, saved):
        succ[x] = -1
        if saved is None:
            count[0] -= 1
            count[1] += 1
            return
        s, a, t, y, c1, c2, c3 = saved
        end_of[s] = a
        start_of[t] = y
        count[1] -= c3 - c1 - c2
        count[2] -= (not c3) - (not c1) - (not c2)

    def alive():
        return count[0] + count[1] + count[2] // 2 >= target

    def rec(k):
        if k == len(order):
            if count[0] == target:
                yield tuple(_cycle(darts_at[v], succ) for v in range(G.vertex_count))
            return
        ds = darts_at[order[k]]
        yield from place(k, ds[0], ds[0], set(ds[1:]))

    def place(k, first, cur, unused):
        # each vertex's cycle is built outward from its smallest dart
        if not unused:
            saved = link(cur, first)
            if alive():
                yield from rec(k + 1)
            unlink(cur, saved)
            return
        for y in sorted(unused):
            saved = link(cur, y)
            if alive():
                unused.discard(y)
                yield from place(k, first, y, unused)
                unused.add(y)
            unlink(cur, saved)

    yield from rec(0)


def _cycle(darts, succ):
    if not darts:
        return ()
    out = [darts[0]]
    d = succ[darts[0]]
    while d != darts[0]:
        out.append(d)
        d = succ[d]
    return tuple(out)


def enumerate_embeddings(G: Multigraph, cap: int = DEFAULT_EMBEDDING_CAP, whitney: bool = True) -> Capped:
    """All plane embeddings of G up to face structure.

    Yields one rotation system per distinct face structure; mirror images and
    per-vertex rotations are not repeated. ``cap`` bounds the number of
    genus-0 rotation systems examined; ``truncated`` is set on the returned
    iterator when it is hit. With ``whitney`` set, a simple 3-connected graph
    yields its single embedding directly.
    """
    it = None

    def gen():
        if whitney and G.is_simple() and is_three_connected(G):
            yield embed(G)
            return
        seen = set()
        for examined, rot in enumerate(_genus0_rotations(G)):
            if examined >= cap:
                it.truncated = True
                return
            rs = RotationSystem(G, rot)
            key = rs.face_structure()
            if key not in seen:
                seen.add(key)
                yield rs

    it = Capped(gen())
    return it


def rotation_count(G: Multigraph) -> int:
    """Number of rotation systems of G, planar or not."""
    return math.prod(math.factorial(max(G.degree(v) - 1, 0)) for v in range(G.vertex_count))


@dataclass(frozen=True)
class DualMultigraph:
    """Dual of a plane multigraph.

    Dual vertex ``i`` is ``primal.faces[i]``; dual edge ``e`` crosses primal
    edge ``e``, so the edge bijection is the identity on ids. ``rotation`` is
    the induced embedding of the dual (driven by face order), which makes
    ``dual(dual(rs).rotation)`` meaningful.
    """

    primal: RotationSystem
    graph: Multigraph
    rotation: RotationSystem

    @property
    def faces(self):
        return self.primal.faces

    def face_degree(self, i: int) -> int:
        return self.graph.degree(i)


def dual(rs: RotationSystem) -> DualMultigraph:
    """Dual multigraph of a connected plane multigraph.

    Raises :class:`NotConnected` when the edges span more than one
    component, and :class:`LoopEdge` when a bridge would give a dual loop.
    """
    G = rs.graph
    # isolated vertices carry no darts and do not affect the faces
    if len([c for c in connected_components(G) if len(c) > 1]) > 1:
        raise NotConnected("dual is only defined for connected plane graphs")
    owner = rs.face_of_dart
    edges = tuple((owner[2 * e], owner[2 * e + 1]) for e in range(G.edge_count))
    for e, (a, b) in enumerate(edges):
        if a == b:
            raise LoopEdge(f"edge {e} is a bridge; its dual edge is a loop")
    D = Multigraph(len(rs.faces), edges)
    # dual dart d leaves face owner[d]; its rotation is the face cycle itself
    drot = RotationSystem(D, tuple(rs.faces))
    return DualMultigraph(rs, D, drot)


class Bipartition(NamedTuple):
    color: tuple[int, ...]
    A: tuple[int, ...]
    B: tuple[int, ...]

    def __bool__(self):
        return True


class OddCycle(NamedTuple):
    """Closed walk of odd length, as vertices ``w0 .. wk`` with ``w0 == wk``."""

    walk: tuple[int, ...]

    def __bool__(self):
        return False

    @property
    def length(self):
        return len(self.walk) - 1


def is_bipartite(G: Multigraph) -> Bipartition | OddCycle:
    """Two-colour every component by BFS (smallest vertex gets colour 0)."""
    n = G.vertex_count
    color = [-1] * n
    parent = [-1] * n
    for s in range(n):
        if color[s] != -1:
            continue
        color[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            for w in sorted(G.adjacency[v]):
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    parent[w] = v
                    q.append(w)
                elif color[w] == color[v]:
                    return OddCycle(_odd_walk(parent, v, w))
    A = tuple(v for v in range(n) if color[v] == 0)
    B = tuple(v for v in range(n) if color[v] == 1)
    return Bipartition(tuple(color), A, B)


def _odd_walk(parent, v, w):
    pv, pw = [v], [w]
    while parent[pv[-1]] != -1:
        pv.append(parent[pv[-1]])
    while parent[pw[-1]] != -1:
        pw.append(parent[pw[-1]])
    anc = set(pv)
    lca = next(x for x in pw if x in anc)
    up = pv[: pv.index(lca) + 1]
    down = pw[: pw.index(lca)]
    # v .. lca .. w, then the edge w-v closes the walk
    return tuple(up + down[::-1] + [v])


def to_dot(G: Multigraph, rs: RotationSystem | None = None, name: str = "G") -> str:
    """DOT text; with an embedding, faces are listed as comments and edges
    carry their face pair."""
    lines = [f"graph {name} {{"]
    for v in range(G.vertex_count):
        lines.append(f"  {v};")
    owner = rs.face_of_dart if rs is not None else None
    for e, (u, v) in enumerate(G.edges):
        label = f"e{e}"
        if owner is not None:
            label += f" f{owner[2 * e]}|f{owner[2 * e + 1]}"
        lines.append(f'  {u} -- {v} [key={e}, label="{label}"];')
    if rs is not None:
        for i, f in enumerate(rs.faces):
            verts = " ".join(str(x) for x in face_vertices(G, f))
            lines.append(f"  // face {i} (length {len(f)}): {verts}")
    lines.append("}")
    return "\n".join(lines) + "\n"
