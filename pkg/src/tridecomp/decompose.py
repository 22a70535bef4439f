"""Triangle decomposition: exact-cover search, face-bipartition certificates,
and the maximal planar fast path."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .embedding import (
    DEFAULT_EMBEDDING_CAP,
    RotationSystem,
    dual,
    embed,
    enumerate_embeddings,
    is_bipartite,
    is_planar,
    is_three_connected,
)
from .errors import (
    DegreeNotThree,
    DualNotBipartite,
    InvalidDepletion,
    InvalidEmbedding,
    NotAPartition,
    NotATriangle,
    NotMaximalPlanar,
    NotPlanar,
)
from .graph import (
    Multigraph,
    Triangle,
    blocks,
    connected_components,
    is_eulerian,
    is_strongly_k3_divisible,
)
from .structure import DEFAULT_DEPLETION_CAP, Deletion, Depletion, TriangleKind, enumerate_depletions


@dataclass(frozen=True)
class ExactCertificate:
    """Edge-disjoint triangles covering every edge, in canonical order."""

    triangles: tuple[Triangle, ...]

    def __post_init__(self):
        object.__setattr__(self, "triangles", tuple(sorted(self.triangles)))

    def __len__(self):
        return len(self.triangles)


def check_partition(G: Multigraph, triangles: Iterable[Triangle]) -> None:
    """Raise :class:`NotAPartition` unless every edge is covered exactly once
    by genuine triangles of G."""
    cover = Counter()
    for t in triangles:
        try:
            real = Triangle.from_edges(G, t.edges)
        except NotATriangle as exc:
            raise NotAPartition(str(exc)) from None
        if real.vertices != tuple(t.vertices):
            raise NotAPartition(f"triangle {t.edges} has vertices {real.vertices}, not {t.vertices}")
        cover.update(t.edges)
    for e in range(G.edge_count):
        if cover[e] != 1:
            raise NotAPartition(f"edge {e} covered {cover[e]} times")
    extra = set(cover) - set(range(G.edge_count))
    if extra:
        raise NotAPartition(f"unknown edge ids {sorted(extra)}")


def is_partition(G: Multigraph, triangles: Iterable[Triangle]) -> bool:
    try:
        check_partition(G, triangles)
    except NotAPartition:
        return False
    return True


def _cover_search(G: Multigraph) -> list[Triangle] | None:
    """Exact cover of edge ids by triangles.

    Always branches on the lowest uncovered edge id, trying candidate
    triangles in canonical order. Parallel edges are interchangeable, so each
    pair is consumed from its lowest id upward and the search state is just
    the number of used edges per pair; failed states are memoized.
    """
    pairs = list(G.pair_edges)
    ids = [G.pair_edges[p] for p in pairs]
    index = {p: i for i, p in enumerate(pairs)}
    third = [[] for _ in pairs]
    for i, (u, v) in enumerate(pairs):
        for w in sorted(G.adjacency[u] & G.adjacency[v]):
            a = index[(min(u, w), max(u, w))]
            b = index[(min(v, w), max(v, w))]
            third[i].append((w, a, b))
    used = [0] * len(pairs)
    failed = set()
    chosen: list[Triangle] = []

    def rem(i):
        return len(ids[i]) - used[i]

    def feasible():
        for i in range(len(pairs)):
            r = rem(i)
            if r and r > sum(min(rem(a), rem(b)) for _, a, b in third[i]):
                return False
        return True

    def rec():
        best = None
        for i in range(len(pairs)):
            if rem(i) and (best is None or ids[i][used[i]] < ids[best][used[best]]):
                best = i
        if best is None:
            return True
        key = tuple(used)
        if key in failed:
            return False
        if feasible():
            u, v = pairs[best]
            e = ids[best][used[best]]
            options = []
            for w, a, b in third[best]:
                if rem(a) and rem(b):
                    tri = tuple(sorted((e, ids[a][used[a]], ids[b][used[b]])))
                    options.append((tri, w, a, b))
            options.sort()
            for tri, w, a, b in options:
                for i in (best, a, b):
                    used[i] += 1
                chosen.append(Triangle(tri, tuple(sorted((u, v, w)))))
                if rec():
                    return True
                chosen.pop()
                for i in (best, a, b):
                    used[i] -= 1
        failed.add(key)
        return False

    return list(chosen) if rec() else None


def decompose_exact(G: Multigraph) -> ExactCertificate | None:
    """A triangle decomposition of G, or None if none exists.

    Each block must be strongly K3-divisible; that is checked first.
    """
    for b in blocks(G):
        if not is_strongly_k3_divisible(b.graph):
            return None
    found = _cover_search(G)
    return None if found is None else ExactCertificate(tuple(found))


def decompose_by_blocks(G: Multigraph) -> ExactCertificate | None:
    """Decompose every block on its own and merge through the id tables."""
    merged = []
    for sub, vmap, emap in blocks(G):
        cert = decompose_exact(sub)
        if cert is None:
            return None
        for t in cert.triangles:
            merged.append(Triangle(tuple(sorted(emap[e] for e in t.edges)), tuple(sorted(vmap[v] for v in t.vertices))))
    return ExactCertificate(tuple(merged))


def is_maximal_planar(G: Multigraph) -> bool:
    n = G.vertex_count
    return n >= 3 and G.is_simple() and G.edge_count == 3 * n - 6 and is_planar(G)


def maximal_planar_decide(G: Multigraph, side: int = 0) -> ExactCertificate | None:
    """Decide a maximal planar graph by 2-colouring its cubic dual.

    Either colour class of the dual is a decomposition; ``side`` picks one.
    """
    if not is_maximal_planar(G):
        raise NotMaximalPlanar("expected a simple planar graph with 3n - 6 edges and n >= 3")
    if not is_eulerian(G):
        return None
    rs = embed(G)
    d = dual(rs)
    colouring = is_bipartite(d.graph)
    assert colouring, "dual of an Eulerian plane graph must be bipartite"
    chosen = colouring.A if side == 0 else colouring.B
    return ExactCertificate(tuple(_face_triangle(G, rs.faces[f]) for f in chosen))


def _face_triangle(G: Multigraph, face: Sequence[int]) -> Triangle:
    return Triangle.from_edges(G, (d >> 1 for d in face))


@dataclass(frozen=True)
class StructuralCertificate:
    """Depletion, plane embedding of what is left, and a dual bipartition.

    ``A`` lists the face indices (into ``embedding.faces``) whose dual vertices
    all have degree three; ``decomposition`` is in base-graph edge ids.
    """

    depletion: Depletion
    embedding: RotationSystem
    A: tuple[int, ...]
    B: tuple[int, ...]
    decomposition: ExactCertificate

    def swapped(self) -> "StructuralCertificate":
        """The same certificate with the partite sets exchanged.

        The decomposition is rebuilt from the new ``A``; it is only valid
        when those faces are triangles too.
        """
        H = self.depletion.result
        emap = self.depletion.edge_map
        tris = list(self.depletion.deleted_triangles)
        for f in self.B:
            face = self.embedding.faces[f]
            tris.append(Triangle(tuple(sorted(emap[d >> 1] for d in face)), tuple(sorted(H.edges[d >> 1][d & 1] for d in face))))
        return StructuralCertificate(self.depletion, self.embedding, self.B, self.A, ExactCertificate(tuple(tris)))


class NoneWithinCaps(NamedTuple):
    """No certificate was found. ``truncated`` says whether a cap cut the
    search short; only ``truncated=False`` proves that none exists."""

    truncated: bool

    def __bool__(self):
        return False


def _degree_three_side(colouring, D: Multigraph):
    for side in (colouring.A, colouring.B):
        if all(D.degree(f) == 3 for f in side):
            return side
    return None


def theorem1_search(
    G: Multigraph,
    depletion_cap: int = DEFAULT_DEPLETION_CAP,
    embedding_cap: int = DEFAULT_EMBEDDING_CAP,
) -> StructuralCertificate | NoneWithinCaps:
    """Search depletions x plane embeddings for a dual that is bipartite with
    an all-degree-3 partite set.

    Depletions are visited breadth-first. A depletion is skipped unless it is
    Eulerian with edge count divisible by 3, which any qualifying dual forces.
    Simple 3-connected depletions are embedded once (their faces are unique).
    """
    if not is_planar(G):
        raise NotPlanar()
    if G.edge_count == 0:
        return StructuralCertificate(Depletion.identity(G), RotationSystem(G, ((),) * G.vertex_count), (), (), ExactCertificate(()))
    if len([c for c in connected_components(G) if len(c) > 1]) > 1:
        raise ValueError("theorem1_search needs the edges to form one connected component")
    if any(b.graph.edge_count == 1 for b in blocks(G)):
        # a bridge lies in no triangle
        return NoneWithinCaps(False)

    truncated = False
    deps = enumerate_depletions(G, depletion_cap)
    for dep in deps:
        H = dep.result
        if H.edge_count % 3 or not is_eulerian(H):
            continue
        if H.is_simple() and is_three_connected(H):
            embeddings = iter([embed(H)])
            capped = None
        else:
            embeddings = capped = enumerate_embeddings(H, embedding_cap, whitney=False)
        for rs in embeddings:
            d = dual(rs)
            colouring = is_bipartite(d.graph)
            if not colouring:
                continue
            side = _degree_three_side(colouring, d.graph)
            if side is None:
                continue
            other = colouring.B if side is colouring.A else colouring.A
            tris = list(dep.deleted_triangles)
            for f in side:
                t = _face_triangle(H, rs.faces[f])
                tris.append(Triangle(tuple(sorted(dep.edge_map[e] for e in t.edges)), t.vertices))
            return StructuralCertificate(dep, rs, tuple(side), tuple(other), ExactCertificate(tuple(tris)))
        if capped is not None and capped.truncated:
            truncated = True
    return NoneWithinCaps(truncated or deps.truncated)


# The verifier below deliberately re-derives everything it needs (replaying
# deletions, component counts, face orbits of the rotation) and relies on the
# embedding module only for dual construction.


def _components_without(n: int, edges: Sequence[tuple[int, int]], removed: set[int]) -> list[set[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if u not in removed and v not in removed:
            parent[find(u)] = find(v)
    groups: dict[int, set[int]] = {}
    for x in range(n):
        if x not in removed:
            groups.setdefault(find(x), set()).add(x)
    return list(groups.values())


def _replay_depletion(G: Multigraph, deletions: Sequence[Deletion]) -> set[int]:
    remaining = set(range(G.edge_count))
    for step, d in enumerate(deletions):
        u, v, w = d.vertices
        pairs = {frozenset((u, v)), frozenset((v, w)), frozenset((u, w))}
        if len({u, v, w}) != 3 or len(set(d.edges)) != 3:
            raise InvalidDepletion(f"deletion {step}: malformed triple")
        got = set()
        for e in d.edges:
            if e not in remaining:
                raise InvalidDepletion(f"deletion {step}: edge {e} already gone")
            got.add(frozenset(G.edges[e]))
        if got != pairs:
            raise InvalidDepletion(f"deletion {step}: edges {d.edges} do not form triangle {d.vertices}")
        live = [G.edges[e] for e in sorted(remaining)]
        mult = Counter(frozenset(uv) for uv in live)
        if d.kind == TriangleKind.DUPLICATE:
            if any(mult[p] < 2 for p in pairs):
                raise InvalidDepletion(f"deletion {step}: {d.vertices} is not a duplicate triangle")
        elif d.kind == TriangleKind.FACELESS:
            hits = 0
            for comp in _components_without(G.vertex_count, live, {u, v, w}):
                seen = {a if b in comp else b for a, b in live if (a in comp) != (b in comp)}
                if {u, v, w} <= seen:
                    hits += 1
            if hits < 2:
                raise InvalidDepletion(f"deletion {step}: {d.vertices} is not faceless")
        else:
            raise InvalidDepletion(f"deletion {step}: unknown kind {d.kind!r}")
        remaining -= set(d.edges)
    return remaining


def verify_structural(G: Multigraph, cert: StructuralCertificate) -> ExactCertificate:
    """Re-check every claim of a structural certificate against G.

    Returns the triangle decomposition it encodes, or raises the error naming
    the first violated property: :class:`InvalidDepletion`,
    :class:`InvalidEmbedding`, :class:`DualNotBipartite`,
    :class:`DegreeNotThree` or :class:`NotAPartition`.
    """
    dep = cert.depletion
    if dep.base != G:
        raise InvalidDepletion("certificate is for a different base graph")
    remaining = _replay_depletion(G, dep.deletions)
    kept = tuple(sorted(remaining))
    H = Multigraph(G.vertex_count, tuple(G.edges[e] for e in kept))
    if dep.result != H or tuple(dep.edge_map) != kept:
        raise InvalidDepletion("recorded result does not match the replayed deletions")

    rs = cert.embedding
    if rs.graph != H:
        raise InvalidEmbedding("embedding is not of the depletion result")
    succ = {}
    for v, darts in enumerate(rs.rotation):
        for i, d in enumerate(darts):
            if H.edges[d >> 1][d & 1] != v:
                raise InvalidEmbedding(f"dart {d} is not at vertex {v}")
            succ[d] = darts[(i + 1) % len(darts)]
    if len(succ) != 2 * H.edge_count:
        raise InvalidEmbedding("rotation does not list every dart once")
    orbits, seen = 0, set()
    for d0 in succ:
        if d0 in seen:
            continue
        orbits += 1
        d = d0
        while d not in seen:
            seen.add(d)
            d = succ[d ^ 1]
    comps = [c for c in _components_without(H.vertex_count, H.edges, set()) if len(c) > 1]
    if orbits != sum(2 - len(c) + sum(1 for a, _ in H.edges if a in c) for c in comps):
        raise InvalidEmbedding("rotation system is not a plane embedding")

    D = dual(rs).graph
    A, B = set(cert.A), set(cert.B)
    if A & B or A | B != set(range(D.vertex_count)):
        raise DualNotBipartite("A and B must split the faces")
    for f in sorted(A):
        if D.degree(f) != 3:
            raise DegreeNotThree(f"face {f} of A has dual degree {D.degree(f)}")
    tris = list(dep.deleted_triangles)
    for f in sorted(A):
        face = rs.faces[f]
        verts = tuple(sorted(H.edges[d >> 1][d & 1] for d in face))
        tris.append(Triangle(tuple(sorted(kept[d >> 1] for d in face)), verts))
    check_partition(G, tris)
    if tuple(sorted(tris)) != cert.decomposition.triangles:
        raise NotAPartition("recorded decomposition differs from the faces of A plus the deletions")
    for a, b in D.edges:
        if (a in A) == (b in A):
            raise DualNotBipartite(f"dual edge {a}-{b} does not cross the bipartition")
    return ExactCertificate(tuple(tris))
