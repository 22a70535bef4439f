"""Loop-free multigraphs with edge identities.

Triangles are edge triples rather than vertex triples, so every edge keeps a
dense integer id (its position in ``Multigraph.edges``) and all certificates
refer to those ids.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import LoopEdge, NotATriangle, SameVertex, VertexOutOfRange


@dataclass(frozen=True)
class Multigraph:
    """An immutable loop-free multigraph on vertices ``0..vertex_count-1``.

    Edge ``i`` joins ``edges[i][0]`` and ``edges[i][1]``.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.vertex_count < 0:
            raise VertexOutOfRange(f"negative vertex count {self.vertex_count}")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for i, (u, v) in enumerate(edges):
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise VertexOutOfRange(f"edge {i} = ({u}, {v}) has an endpoint outside 0..{self.vertex_count - 1}")
            if u == v:
                raise LoopEdge(f"edge {i} is a loop at vertex {u}")
        object.__setattr__(self, "edges", edges)

    def __repr__(self):
        return f"Multigraph(vertex_count={self.vertex_count}, edges={list(self.edges)})"

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e]

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if v == a else a

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids incident with each vertex, in increasing id order."""
        inc = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def pair_edges(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """Map ``(min(u, v), max(u, v))`` to the sorted ids of edges joining u and v."""
        pairs = defaultdict(list)
        for i, (u, v) in enumerate(self.edges):
            pairs[(u, v) if u < v else (v, u)].append(i)
        return {p: tuple(ids) for p, ids in sorted(pairs.items())}

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def edges_between(self, u: int, v: int) -> tuple[int, ...]:
        return self.pair_edges.get((u, v) if u < v else (v, u), ())

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def is_simple(self) -> bool:
        return all(len(ids) == 1 for ids in self.pair_edges.values())

    def spanning_subgraph(self, edge_ids: Iterable[int]) -> tuple["Multigraph", tuple[int, ...]]:
        """Keep all vertices and the given edges.

        Returns the subgraph and a tuple mapping each new edge id to the old
        one; new ids follow increasing old id.
        """
        kept = tuple(sorted(set(edge_ids)))
        return Multigraph(self.vertex_count, tuple(self.edges[e] for e in kept)), kept

    def induced(self, vertices: Iterable[int]) -> "Subgraph":
        """Sub-multigraph induced by ``vertices`` with vertices relabelled densely."""
        vs = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(vs)}
        kept = tuple(i for i, (u, v) in enumerate(self.edges) if u in index and v in index)
        sub = Multigraph(len(vs), tuple((index[self.edges[i][0]], index[self.edges[i][1]]) for i in kept))
        return Subgraph(sub, vs, kept)


class Subgraph(NamedTuple):
    """A sub-multigraph with its id remapping tables.

    ``vertices[i]`` and ``edges[j]`` are the parent ids of local vertex ``i``
    and local edge ``j``.
    """

    graph: Multigraph
    vertices: tuple[int, ...]
    edges: tuple[int, ...]


@dataclass(frozen=True, order=True)
class Triangle:
    """Three edges of a multigraph forming a closed walk on three vertices.

    ``edges`` is strictly increasing, which is the canonical form.
    """

    edges: tuple[int, int, int]
    vertices: tuple[int, int, int]

    @classmethod
    def from_edges(cls, G: Multigraph, edge_ids: Iterable[int]) -> "Triangle":
        ids = tuple(sorted(edge_ids))
        if len(ids) != 3 or len(set(ids)) != 3:
            raise NotATriangle(f"{ids} is not three distinct edge ids")
        if not all(0 <= e < G.edge_count for e in ids):
            raise NotATriangle(f"{ids} references an edge outside the graph")
        counts = defaultdict(int)
        for e in ids:
            for v in G.edges[e]:
                counts[v] += 1
        if len(counts) != 3 or any(c != 2 for c in counts.values()):
            raise NotATriangle(f"edges {ids} do not form a triangle")
        return cls(ids, tuple(sorted(counts)))


def build_multigraph(vertex_count: int, edge_endpoint_list: Iterable[Sequence[int]]) -> Multigraph:
    """Build a multigraph with edge ids assigned in input order."""
    return Multigraph(vertex_count, tuple(tuple(e) for e in edge_endpoint_list))


def multiplicity(G: Multigraph, u: int, v: int) -> int:
    if u == v:
        raise SameVertex(f"multiplicity of ({u}, {u}) is undefined")
    for w in (u, v):
        if not 0 <= w < G.vertex_count:
            raise VertexOutOfRange(f"vertex {w} not in graph")
    return len(G.edges_between(u, v))


def triangle_triples(G: Multigraph) -> list[tuple[int, int, int]]:
    """Sorted vertex triples that are pairwise adjacent."""
    out = []
    adj = G.adjacency
    for u in range(G.vertex_count):
        for v in sorted(w for w in adj[u] if w > u):
            for w in sorted(x for x in adj[u] & adj[v] if x > v):
                out.append((u, v, w))
    return out


def enumerate_triangles(G: Multigraph) -> list[Triangle]:
    """All triangles of G in canonical (sorted edge-id) order.

    A vertex triple contributes the product of its three multiplicities.
    """
    tris = []
    for u, v, w in triangle_triples(G):
        for combo in itertools.product(G.edges_between(u, v), G.edges_between(v, w), G.edges_between(u, w)):
            tris.append(Triangle(tuple(sorted(combo)), (u, v, w)))
    tris.sort()
    return tris


def connected_components(G: Multigraph, removed: Iterable[int] = ()) -> list[list[int]]:
    """Vertex sets of the components of ``G - removed`` (isolated vertices included)."""
    gone = set(removed)
    seen = set(gone)
    comps = []
    for s in range(G.vertex_count):
        if s in seen:
            continue
        seen.add(s)
        comp, stack = [s], [s]
        while stack:
            x = stack.pop()
            for y in G.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def is_connected(G: Multigraph) -> bool:
    return len(connected_components(G)) <= 1


def is_eulerian(G: Multigraph) -> bool:
    """Even degrees everywhere and all edges in one component.

    Isolated vertices are ignored; an edgeless graph counts as Eulerian.
    """
    if any(len(inc) % 2 for inc in G.incidence):
        return False
    touched = [c for c in connected_components(G) if len(c) > 1]
    return len(touched) <= 1


def is_k3_divisible(G: Multigraph) -> bool:
    return is_eulerian(G) and G.edge_count % 3 == 0


def is_strongly_k3_divisible(G: Multigraph) -> bool:
    if not is_k3_divisible(G):
        return False
    covered = set()
    for t in enumerate_triangles(G):
        covered.update(t.edges)
    return len(covered) == G.edge_count


def blocks(G: Multigraph) -> list[Subgraph]:
    """Biconnected components, each as an edge-induced sub-multigraph.

    Parallel edges stay together in one block. Isolated vertices belong to no
    block. Blocks are ordered by their smallest edge id.
    """
    n = G.vertex_count
    disc = [-1] * n
    low = [0] * n
    timer = 0
    edge_stack: list[int] = []
    found: list[list[int]] = []

    for root in range(n):
        if disc[root] != -1 or not G.incidence[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # frames: (vertex, edge used to enter it, iterator position)
        stack = [(root, -1, 0)]
        while stack:
            v, via, pos = stack[-1]
            inc = G.incidence[v]
            if pos < len(inc):
                stack[-1] = (v, via, pos + 1)
                e = inc[pos]
                if e == via:
                    continue
                w = G.other_end(e, v)
                if disc[w] == -1:
                    edge_stack.append(e)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, e, 0))
                elif disc[w] < disc[v]:
                    edge_stack.append(e)
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if not stack:
                    break
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    comp = []
                    while True:
                        e = edge_stack.pop()
                        comp.append(e)
                        if e == via:
                            break
                    found.append(comp)

    result = []
    for comp in sorted(found, key=min):
        ids = tuple(sorted(comp))
        vs = tuple(sorted({v for e in ids for v in G.edges[e]}))
        index = {v: i for i, v in enumerate(vs)}
        sub = Multigraph(len(vs), tuple((index[G.edges[e][0]], index[G.edges[e][1]]) for e in ids))
        result.append(Subgraph(sub, vs, ids))
    return result


def double(G: Multigraph) -> Multigraph:
    """Replace every edge by two parallel copies.

    Edge ``e`` of G becomes edges ``2e`` and ``2e + 1``; see :func:`doubled_ids`.
    """
    return Multigraph(G.vertex_count, tuple(uv for uv in G.edges for _ in range(2)))


def doubled_ids(e: int) -> tuple[int, int]:
    return 2 * e, 2 * e + 1


def doubling_edge_map(G: Multigraph) -> tuple[int, ...]:
    """For each edge id of ``double(G)``, the edge of G it copies."""
    return tuple(e for e in range(G.edge_count) for _ in range(2))
