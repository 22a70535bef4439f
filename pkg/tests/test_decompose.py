import dataclasses

import networkx as nx
import pytest
from hypothesis import given

from conftest import multigraphs
from oracles import decomposable_by_brute_force
from tridecomp.decompose import (
    ExactCertificate,
    NoneWithinCaps,
    StructuralCertificate,
    check_partition,
    decompose_by_blocks,
    decompose_exact,
    is_partition,
    maximal_planar_decide,
    theorem1_search,
    verify_structural,
)
from tridecomp.embedding import dual, is_planar
from tridecomp.errors import (
    DegreeNotThree,
    DualNotBipartite,
    InvalidDepletion,
    NotAPartition,
    NotMaximalPlanar,
    NotPlanar,
)
from tridecomp.generators import complete, generate_named, generate_random_maximal_planar
from tridecomp.graph import Multigraph, Triangle, double, enumerate_triangles, is_eulerian
from tridecomp.structure import Deletion, Depletion, TriangleKind

OCTA = generate_named("octahedron")
H = generate_named("h_counterexample")


def test_h_has_no_decomposition():
    assert decompose_exact(H) is None


def test_octahedron_exact():
    cert = decompose_exact(OCTA)
    assert len(cert) == 4
    check_partition(OCTA, cert.triangles)


def test_fast_rejects():
    assert decompose_exact(generate_named("icosahedron")) is None
    assert decompose_exact(complete(4)) is None
    assert decompose_exact(Multigraph(4, ())) == ExactCertificate(())


def test_check_partition_rejects():
    t = enumerate_triangles(OCTA)
    with pytest.raises(NotAPartition):
        check_partition(OCTA, t[:1])
    with pytest.raises(NotAPartition):
        check_partition(OCTA, [t[0], t[0]])
    with pytest.raises(NotAPartition):
        check_partition(OCTA, [Triangle((0, 1, 2), (0, 1, 2))])
    assert not is_partition(OCTA, t)


def test_decompose_by_blocks_examples():
    two = Multigraph(11, OCTA.edges + tuple((u + 5 if u else 0, v + 5 if v else 0) for u, v in OCTA.edges))
    cert = decompose_by_blocks(two)
    assert len(cert) == 8
    check_partition(two, cert.triangles)
    pendant = Multigraph(7, OCTA.edges + ((0, 6),))
    assert decompose_by_blocks(pendant) is None
    assert decompose_by_blocks(Multigraph(3, ())) == ExactCertificate(())


def test_maximal_planar_fast_path():
    for side in (0, 1):
        cert = maximal_planar_decide(OCTA, side)
        assert len(cert) == 4
        check_partition(OCTA, cert.triangles)
    assert maximal_planar_decide(generate_named("icosahedron")) is None
    assert maximal_planar_decide(complete(4)) is None
    with pytest.raises(NotMaximalPlanar):
        maximal_planar_decide(generate_named("c5"))


def test_theorem1_octahedron_certificate():
    cert = theorem1_search(OCTA)
    assert isinstance(cert, StructuralCertificate)
    assert cert.depletion.deletions == ()
    D = dual(cert.embedding).graph
    assert nx.is_isomorphic(nx.Graph(D.edges), nx.hypercube_graph(3))
    one = verify_structural(OCTA, cert)
    other = verify_structural(OCTA, cert.swapped())
    assert len(one) == len(other) == 4
    assert set(one.triangles).isdisjoint(other.triangles)


def test_theorem1_negative_examples():
    res = theorem1_search(H)
    assert isinstance(res, NoneWithinCaps) and not res and not res.truncated
    res = theorem1_search(complete(4))
    assert not res and not res.truncated
    with pytest.raises(NotPlanar):
        theorem1_search(complete(5))


def test_theorem1_uses_depletions():
    # three parallel copies per pair: no plane embedding has a bipartite
    # dual until one duplicate triangle is deleted
    tripled = Multigraph(3, ((0, 1),) * 3 + ((1, 2),) * 3 + ((0, 2),) * 3)
    cert = theorem1_search(tripled)
    assert cert
    assert [d.kind for d in cert.depletion.deletions] == [TriangleKind.DUPLICATE]
    assert len(verify_structural(tripled, cert)) == 3
    # the doubled triangle needs none: two triangle faces and three digons
    assert theorem1_search(double(complete(3))).depletion.deletions == ()


def test_theorem1_truncation_is_reported():
    res = theorem1_search(generate_named("icosahedron"), depletion_cap=1)
    assert not res


def test_tampered_certificates():
    cert = theorem1_search(OCTA)
    moved = dataclasses.replace(cert, A=cert.A[1:], B=cert.B + cert.A[:1])
    with pytest.raises((DegreeNotThree, NotAPartition, DualNotBipartite)):
        verify_structural(OCTA, moved)
    mixed = dataclasses.replace(cert, A=cert.A[:-1] + cert.B[:1], B=cert.B[1:] + cert.A[-1:])
    with pytest.raises((NotAPartition, DualNotBipartite)):
        verify_structural(OCTA, mixed)
    bogus = Deletion((0, 1, 2), TriangleKind.DUPLICATE, (0, 1, 2))
    bad_dep = dataclasses.replace(cert, depletion=Depletion(OCTA, (bogus,), cert.depletion.result, cert.depletion.edge_map))
    with pytest.raises(InvalidDepletion):
        verify_structural(OCTA, bad_dep)


def test_k4_plus_face():
    G = Multigraph(4, complete(4).edges + ((0, 1), (1, 2), (0, 2)))
    assert decompose_exact(G) is None
    assert not theorem1_search(G)


@given(multigraphs(max_vertices=5, max_edges=10))
def test_exact_matches_brute_force(G):
    cert = decompose_exact(G)
    assert (cert is not None) == decomposable_by_brute_force(G)
    if cert is not None:
        check_partition(G, cert.triangles)


@given(multigraphs(max_vertices=5, max_edges=9))
def test_engines_agree_on_small_planar(G):
    if not is_planar(G) or not _one_component(G):
        return
    res = theorem1_search(G)
    if isinstance(res, NoneWithinCaps) and res.truncated:
        return
    assert bool(res) == (decompose_exact(G) is not None)
    if res:
        verify_structural(G, res)


def _one_component(G):
    g = nx.Graph(G.edges)
    return g.number_of_edges() == 0 or nx.is_connected(g)


@pytest.mark.parametrize("seed", range(5))
def test_random_triangulation_decision(seed):
    T = generate_random_maximal_planar(10, seed, flips=30)
    assert (decompose_exact(T) is not None) == is_eulerian(T)
