"""Faceless, duplicate and separating triangles; depletions; interior graphs."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .embedding import Capped, RotationSystem, face_vertices, is_planar
from .errors import KindMismatch, NotATriangle, NotPlanar
from .graph import Multigraph, Subgraph, Triangle, connected_components, triangle_triples

DEFAULT_DEPLETION_CAP = 10**5


class TriangleKind(str, enum.Enum):
    FACELESS = "faceless"
    DUPLICATE = "duplicate"


def _triple(G: Multigraph, triple) -> tuple[int, int, int]:
    if isinstance(triple, Triangle):
        return triple.vertices
    t = tuple(sorted(set(triple)))
    if len(t) != 3 or not all(0 <= v < G.vertex_count for v in t):
        raise NotATriangle(f"{triple} is not three distinct vertices")
    u, v, w = t
    if not (G.edges_between(u, v) and G.edges_between(v, w) and G.edges_between(u, w)):
        raise NotATriangle(f"{t} is not pairwise adjacent")
    return t


def is_separating(G: Multigraph, vertex_triple) -> bool:
    """``G - {u, v, w}`` has at least two components."""
    t = _triple(G, vertex_triple)
    return len(connected_components(G, removed=t)) >= 2


def is_duplicate(G: Multigraph, vertex_triple) -> bool:
    u, v, w = _triple(G, vertex_triple)
    return all(len(G.edges_between(a, b)) >= 2 for a, b in ((u, v), (v, w), (u, w)))


def _attached_components(G: Multigraph, t) -> int:
    """Components of ``G - t`` adjacent to every vertex of t."""
    count = 0
    ts = set(t)
    for comp in connected_components(G, removed=t):
        seen = set()
        for x in comp:
            seen |= G.adjacency[x] & ts
        if len(seen) == 3:
            count += 1
    return count


def faceless_condition(G: Multigraph, vertex_triple) -> bool:
    """The two-component criterion, without the planarity precondition check."""
    return _attached_components(G, _triple(G, vertex_triple)) >= 2


def is_faceless(G: Multigraph, vertex_triple) -> bool:
    """Whether the triangle is a face of no plane embedding of G.

    Decided by the component criterion: at least two components of
    ``G - {v1, v2, v3}`` each contain a neighbour of all three vertices. The
    criterion is only valid for planar G, so non-planar input raises.
    """
    t = _triple(G, vertex_triple)
    if not is_planar(G):
        raise NotPlanar("faceless triangles are defined for planar graphs only")
    return _attached_components(G, t) >= 2


def lowest_pair_edges(G: Multigraph, t) -> tuple[int, int, int]:
    u, v, w = t
    return tuple(sorted(G.edges_between(a, b)[0] for a, b in ((u, v), (v, w), (u, w))))


def delete_triangle_edges(G: Multigraph, triangle_or_triple, kind: TriangleKind) -> Multigraph:
    """Remove one edge per pair of a faceless or duplicate triangle.

    A :class:`Triangle` removes exactly its edges; a vertex triple removes the
    lowest-id edge of each pair. Remaining edges keep their relative order.
    """
    kind = TriangleKind(kind)
    t = _triple(G, triangle_or_triple)
    if kind is TriangleKind.DUPLICATE and not is_duplicate(G, t):
        raise KindMismatch(f"{t} is not a duplicate triangle")
    if kind is TriangleKind.FACELESS and not is_faceless(G, t):
        raise KindMismatch(f"{t} is not a faceless triangle")
    if isinstance(triangle_or_triple, Triangle):
        gone = set(triangle_or_triple.edges)
    else:
        gone = set(lowest_pair_edges(G, t))
    sub, _ = G.spanning_subgraph(e for e in range(G.edge_count) if e not in gone)
    return sub


@dataclass(frozen=True)
class Deletion:
    vertices: tuple[int, int, int]
    kind: TriangleKind
    edges: tuple[int, int, int]


@dataclass(frozen=True)
class Depletion:
    """A base graph, the deletions applied in order, and what is left.

    ``edge_map[i]`` is the base id of edge ``i`` of ``result``.
    """

    base: Multigraph
    deletions: tuple[Deletion, ...]
    result: Multigraph
    edge_map: tuple[int, ...]

    @property
    def deleted_triangles(self) -> list[Triangle]:
        return [Triangle(d.edges, d.vertices) for d in self.deletions]

    @classmethod
    def identity(cls, G: Multigraph) -> "Depletion":
        return cls(G, (), G, tuple(range(G.edge_count)))


def deletable_triples(H: Multigraph) -> list[tuple[tuple[int, int, int], TriangleKind]]:
    """Vertex triples of H that are duplicate or faceless (duplicate wins ties)."""
    out = []
    for t in triangle_triples(H):
        if is_duplicate(H, t):
            out.append((t, TriangleKind.DUPLICATE))
        elif _attached_components(H, t) >= 2:
            out.append((t, TriangleKind.FACELESS))
    return out


def enumerate_depletions(G: Multigraph, cap: int = DEFAULT_DEPLETION_CAP) -> Capped:
    """Every depletion of G, one per distinct remaining edge set.

    Breadth-first from G itself. Parallel edges are interchangeable, so each
    deletion takes the lowest remaining id of every pair. At most ``cap``
    states are produced; ``truncated`` is set if more were reachable.
    """
    it = None

    def gen():
        start = frozenset(range(G.edge_count))
        seen = {start}
        queue = deque([(start, ())])
        produced = 0
        while queue:
            if produced >= cap:
                it.truncated = True
                return
            remaining, log = queue.popleft()
            H, emap = G.spanning_subgraph(remaining)
            produced += 1
            yield Depletion(G, log, H, emap)
            for t, kind in deletable_triples(H):
                local = lowest_pair_edges(H, t)
                base_ids = tuple(emap[e] for e in local)
                nxt = remaining.difference(base_ids)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, log + (Deletion(t, kind, base_ids),)))

    it = Capped(gen())
    return it


def default_outer_face(rs: RotationSystem) -> int:
    """Longest face, ties broken by smallest dart."""
    best = 0
    for i, f in enumerate(rs.faces):
        if len(f) > len(rs.faces[best]):
            best = i
    return best


def _cycle_sides(rs: RotationSystem, cycle_edges: Iterable[int], outer_face: int) -> tuple[set[int], set[int]]:
    """Split the faces into those reachable from the outer face without
    crossing the cycle, and the rest."""
    cut = set(cycle_edges)
    owner = rs.face_of_dart
    adj = [[] for _ in rs.faces]
    for e in range(rs.graph.edge_count):
        if e in cut:
            continue
        a, b = owner[2 * e], owner[2 * e + 1]
        adj[a].append(b)
        adj[b].append(a)
    outside = {outer_face}
    stack = [outer_face]
    while stack:
        f = stack.pop()
        for g in adj[f]:
            if g not in outside:
                outside.add(g)
                stack.append(g)
    inside = set(range(len(rs.faces))) - outside
    return inside, outside


def _as_triangle(G: Multigraph, triangle) -> Triangle:
    if isinstance(triangle, Triangle):
        return triangle
    t = _triple(G, triangle)
    return Triangle(lowest_pair_edges(G, t), t)


def interior_vertices(rs: RotationSystem, triangle, outer_face: int | None = None) -> set[int]:
    G = rs.graph
    tri = _as_triangle(G, triangle)
    if outer_face is None:
        outer_face = default_outer_face(rs)
    inside, _ = _cycle_sides(rs, tri.edges, outer_face)
    verts = set()
    for i in inside:
        verts.update(face_vertices(G, rs.faces[i]))
    return verts - set(tri.vertices)


class InteriorGraph(NamedTuple):
    triangle: Triangle
    sub: Subgraph
    interior: frozenset[int]

    @property
    def graph(self) -> Multigraph:
        return self.sub.graph


def interior_graph(rs: RotationSystem, triangle, outer_face: int | None = None) -> InteriorGraph:
    """Subgraph induced by the triangle and every vertex drawn inside it."""
    tri = _as_triangle(rs.graph, triangle)
    inner = interior_vertices(rs, tri, outer_face)
    return InteriorGraph(tri, rs.graph.induced(inner | set(tri.vertices)), frozenset(inner))


class SeparatingExtremes(NamedTuple):
    innermost: list[tuple[int, int, int]]
    outermost: dict[int, list[tuple[int, int, int]]]


def separating_triangle_extremes(rs: RotationSystem, outer_face: int | None = None) -> SeparatingExtremes:
    """Innermost separating triangles, and for each edge of a nontriangular
    face the outermost separating triangles containing it.

    Triangles are reported as vertex triples; nesting is taken with respect
    to ``outer_face``.
    """
    G = rs.graph
    if outer_face is None:
        outer_face = default_outer_face(rs)
    seps = [t for t in triangle_triples(G) if is_separating(G, t)]
    inner = {t: interior_vertices(rs, t, outer_face) for t in seps}
    allv = set(range(G.vertex_count))

    def inside(t2, t1):
        return t2 != t1 and set(t2) <= set(t1) | inner[t1]

    def outside(t2, t1):
        return t2 != t1 and set(t2) <= allv - inner[t1]

    innermost = [t for t in seps if not any(inside(s, t) for s in seps)]
    edge_on_long_face = set()
    for f in rs.faces:
        if len(f) != 3:
            edge_on_long_face.update(d >> 1 for d in f)
    outermost = {}
    for e in sorted(edge_on_long_face):
        u, v = G.edges[e]
        containing = [t for t in seps if u in t and v in t]
        best = [t for t in containing if not any(outside(s, t) for s in containing)]
        if best:
            outermost[e] = best
    return SeparatingExtremes(innermost, outermost)
