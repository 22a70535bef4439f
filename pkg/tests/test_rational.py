import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import simple_graphs
from tridecomp.decompose import ExactCertificate, check_partition, decompose_exact
from tridecomp.embedding import embed, is_planar
from tridecomp.errors import NegativeWeight, NonHalfGranular, NotPlanar, NotSimple, TooLarge, UnknownTriangle
from tridecomp.generators import complete, cycle, generate_named
from tridecomp.graph import Multigraph, Triangle, double, doubling_edge_map, enumerate_triangles
from tridecomp.rational import (
    HALF,
    ONE,
    RationalCertificate,
    doubling_map,
    interior_weight_claim_check,
    lifting_map,
    rational_decompose,
    rational_oracle,
    verify_rational,
)

K4 = complete(4)
OCTA = generate_named("octahedron")


def _all(G, w):
    return RationalCertificate({t: w for t in enumerate_triangles(G)})


def test_k4_all_half():
    cert = rational_decompose(K4)
    assert cert == _all(K4, HALF)
    assert verify_rational(K4, cert)


def test_octahedron_weight_one():
    cert = rational_decompose(OCTA)
    assert verify_rational(OCTA, cert)
    assert list(cert.weights.values()) == [ONE] * 4


def test_cycle_has_none():
    assert rational_decompose(cycle(6)) is None


def test_input_restrictions():
    with pytest.raises(NotSimple):
        rational_decompose(double(complete(3)))
    with pytest.raises(NotPlanar):
        rational_decompose(complete(5))


def test_verify_examples():
    bad = verify_rational(K4, _all(K4, ONE))
    assert not bad and bad.total == 2 and bad.edge is not None
    assert verify_rational(Multigraph(3, ()), RationalCertificate({}))
    with pytest.raises(NegativeWeight):
        t = enumerate_triangles(K4)[0]
        verify_rational(K4, RationalCertificate({t: Fraction(-1, 2)}))
    with pytest.raises(UnknownTriangle):
        verify_rational(K4, RationalCertificate({Triangle((0, 1, 5), (0, 1, 2)): ONE}))


def test_zero_weights_are_dropped():
    t = enumerate_triangles(K4)[0]
    assert RationalCertificate({t: 0}).weights == {}


def test_doubling_map_examples():
    D3 = double(complete(3))
    cert = decompose_exact(D3)
    assert doubling_map(cert, doubling_edge_map(complete(3))) == RationalCertificate(
        {Triangle((0, 1, 2), (0, 1, 2)): ONE}
    )
    # four triangles of the doubled K4, each pair's two copies in different triangles
    D4 = double(K4)
    lifted = lifting_map(_all(K4, HALF), K4)
    check_partition(D4, lifted.triangles)
    assert doubling_map(lifted, doubling_edge_map(K4)) == _all(K4, HALF)
    # two copies of the octahedron's decomposition
    base = decompose_exact(OCTA)
    twice = ExactCertificate(
        tuple(Triangle(tuple(2 * e + c for e in t.edges), t.vertices) for t in base.triangles for c in (0, 1))
    )
    assert doubling_map(twice, doubling_edge_map(OCTA)) == RationalCertificate({t: ONE for t in base.triangles})


def test_lifting_map_examples():
    K3 = complete(3)
    lifted = lifting_map(RationalCertificate({Triangle((0, 1, 2), (0, 1, 2)): ONE}), K3)
    assert lifted.triangles == (Triangle((0, 2, 4), (0, 1, 2)), Triangle((1, 3, 5), (0, 1, 2)))
    lifted = lifting_map(_all(K4, HALF), K4)
    assert len(lifted) == 4
    with pytest.raises(NonHalfGranular):
        lifting_map(RationalCertificate({Triangle((0, 1, 2), (0, 1, 2)): Fraction(1, 3)}), K3)


def test_oracle_examples():
    assert rational_oracle(K4) is not None
    assert rational_oracle(generate_named("h_counterexample")) is None
    k3 = rational_oracle(complete(3))
    assert list(k3.weights.values()) == [ONE]
    with pytest.raises(TooLarge):
        rational_oracle(K4, limit=3)


def test_oracle_objective_picks_a_vertex():
    # minimising the weight of the first face of K4 is still forced to 1/2
    cert = rational_oracle(K4, objective=[1, 0, 0, 0])
    assert cert == _all(K4, HALF)


def _stack(G, face):
    n = G.vertex_count
    return Multigraph(n + 1, G.edges + tuple((v, n) for v in face))


def _sampled_certs(G, k, seed):
    rng = random.Random(seed)
    m = len(enumerate_triangles(G))
    for _ in range(k):
        cert = rational_oracle(G, objective=[rng.randint(-3, 3) for _ in range(m)])
        if cert is not None:
            yield cert


def test_interior_weight_claim_examples():
    stacked = generate_named("stacked_k4")
    rs = embed(stacked)
    certs = list(_sampled_certs(stacked, 8, 0))
    assert certs
    assert all(interior_weight_claim_check(stacked, rs, c) for c in certs)
    octa_cert = rational_decompose(OCTA)
    assert interior_weight_claim_check(OCTA, embed(OCTA), octa_cert)
    ico = generate_named("icosahedron")
    face = enumerate_triangles(ico)[0].vertices
    G = _stack(ico, face)
    rs = embed(G)
    certs = list(_sampled_certs(G, 6, 1))
    assert certs
    assert all(interior_weight_claim_check(G, rs, c) for c in certs)


@given(simple_graphs(max_vertices=7))
def test_rational_decompose_properties(G):
    if not is_planar(G) or len(enumerate_triangles(G)) > 40:
        return
    cert = rational_decompose(G)
    oracle = rational_oracle(G)
    assert (cert is None) == (oracle is None)
    if cert is not None:
        assert verify_rational(G, cert)
        assert cert.is_half_granular()
        assert G.edge_count % 3 == 0
        assert doubling_map(lifting_map(cert, G), doubling_edge_map(G)) == cert
    if oracle is not None:
        assert verify_rational(G, oracle)
