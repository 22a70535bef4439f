"""Brute-force reference implementations used to check the package.

Nothing here imports the search code under test; each oracle works straight
from the definitions and is only fast enough for small graphs.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter

import networkx as nx

from tridecomp.graph import Multigraph


def triangles_by_brute_force(G: Multigraph) -> list[tuple[int, int, int]]:
    """Every 3-subset of edge ids whose endpoints form a closed 3-walk."""
    out = []
    for combo in itertools.combinations(range(G.edge_count), 3):
        ends = Counter(v for e in combo for v in G.edges[e])
        if len(ends) == 3 and all(c == 2 for c in ends.values()):
            out.append(combo)
    return out


def decomposable_by_brute_force(G: Multigraph) -> bool:
    """Plain backtracking over edge-id triangles, no pruning or symmetry."""
    tris = triangles_by_brute_force(G)
    by_edge = {e: [t for t in tris if e in t] for e in range(G.edge_count)}

    def rec(covered: frozenset) -> bool:
        if len(covered) == G.edge_count:
            return True
        e = min(set(range(G.edge_count)) - covered)
        return any(rec(covered | set(t)) for t in by_edge[e] if not covered & set(t))

    return rec(frozenset())


def darts_at(G: Multigraph) -> list[list[int]]:
    out = [[] for _ in range(G.vertex_count)]
    for e, (u, v) in enumerate(G.edges):
        out[u].append(2 * e)
        out[v].append(2 * e + 1)
    return out


def face_orbits(G: Multigraph, rotation) -> list[tuple[int, ...]]:
    succ = {}
    for cyc in rotation:
        for i, d in enumerate(cyc):
            succ[d] = cyc[(i + 1) % len(cyc)]
    seen, faces = set(), []
    for d0 in sorted(succ):
        if d0 in seen:
            continue
        face, d = [], d0
        while d not in seen:
            seen.add(d)
            face.append(d)
            d = succ[d ^ 1]
        faces.append(tuple(face))
    return faces


def euler_faces(G: Multigraph) -> int:
    g = nx.MultiGraph()
    g.add_nodes_from(range(G.vertex_count))
    g.add_edges_from(G.edges)
    total = 0
    for comp in nx.connected_components(g):
        sub = g.subgraph(comp)
        if sub.number_of_edges():
            total += 2 - sub.number_of_nodes() + sub.number_of_edges()
    return total


def all_rotations(G: Multigraph):
    """Every rotation system, each vertex's cycle started at its first dart."""
    choices = []
    for ds in darts_at(G):
        if len(ds) <= 1:
            choices.append([tuple(ds)])
        else:
            choices.append([(ds[0],) + p for p in itertools.permutations(ds[1:])])
    return itertools.product(*choices)


def rotation_total(G: Multigraph) -> int:
    return math.prod(math.factorial(max(len(ds) - 1, 0)) for ds in darts_at(G))


def plane_rotations(G: Multigraph):
    """Rotation systems satisfying Euler's formula, by exhaustive filtering."""
    F = euler_faces(G)
    for rot in all_rotations(G):
        if len(face_orbits(G, rot)) == F:
            yield rot


def face_realizable(triangle_edges, face_lists) -> bool:
    """Whether some face list contains a face with exactly these three edges."""
    want = tuple(sorted(triangle_edges))
    return any(
        len(f) == 3 and tuple(sorted(d >> 1 for d in f)) == want for faces in face_lists for f in faces
    )


def to_nx_multigraph(G: Multigraph) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(range(G.vertex_count))
    g.add_edges_from(G.edges)
    return g


def isomorphic(G1: Multigraph, G2: Multigraph) -> bool:
    a, b = to_nx_multigraph(G1), to_nx_multigraph(G2)
    # multigraph isomorphism: fold parallel edges into a 'count' edge attribute
    def fold(g):
        h = nx.Graph()
        h.add_nodes_from(g.nodes)
        for u, v in g.edges():
            if h.has_edge(u, v):
                h[u][v]["count"] += 1
            else:
                h.add_edge(u, v, count=1)
        return h

    return nx.is_isomorphic(fold(a), fold(b), edge_match=lambda x, y: x["count"] == y["count"])


def two_connected_by_definition(G: Multigraph) -> bool:
    g = to_nx_multigraph(G)
    if G.vertex_count < 2 or not nx.is_connected(g):
        return False
    if G.vertex_count == 2:
        return G.edge_count >= 2
    for v in range(G.vertex_count):
        h = g.copy()
        h.remove_node(v)
        if not nx.is_connected(h):
            return False
    return True
