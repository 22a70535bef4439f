"""Rational triangle decompositions of simple planar graphs.

Decisions go through the doubled graph: G is rationally decomposable exactly
when ``double(G)`` has an ordinary triangle decomposition, and such a
decomposition maps back to weights in {1/2, 1}. :func:`rational_oracle` is an
independent exact LP feasibility check used to test that reduction.

All arithmetic is exact (:class:`fractions.Fraction`).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence

from .decompose import ExactCertificate, check_partition, decompose_exact
from .embedding import RotationSystem, is_planar
from .errors import (
    InconsistentCover,
    NegativeWeight,
    NonHalfGranular,
    NotAPartition,
    NotATriangle,
    NotPlanar,
    NotSimple,
    TooLarge,
    UnknownTriangle,
)
from .graph import Multigraph, Triangle, double, doubling_edge_map, enumerate_triangles
from .structure import _cycle_sides, default_outer_face, interior_graph, separating_triangle_extremes

HALF = Fraction(1, 2)
ONE = Fraction(1)
DEFAULT_ORACLE_LIMIT = 40


@dataclass(frozen=True)
class RationalCertificate:
    """Nonnegative exact weights on triangles; zero weights are dropped."""

    weights: Mapping[Triangle, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {t: Fraction(w) for t, w in sorted(self.weights.items()) if Fraction(w) != 0}
        object.__setattr__(self, "weights", clean)

    def weight(self, t: Triangle) -> Fraction:
        return self.weights.get(t, Fraction(0))

    def is_half_granular(self) -> bool:
        return all(w in (HALF, ONE) for w in self.weights.values())

    def __eq__(self, other):
        return isinstance(other, RationalCertificate) and self.weights == other.weights

    def __hash__(self):
        return hash(tuple(self.weights.items()))


class RationalVerdict(NamedTuple):
    """Outcome of :func:`verify_rational`; falsy on failure, carrying the
    first edge whose incident weights do not sum to 1."""

    valid: bool
    edge: int | None = None
    total: Fraction | None = None

    def __bool__(self):
        return self.valid


def _require_simple_planar(G: Multigraph) -> None:
    if not G.is_simple():
        raise NotSimple("rational decompositions are decided for simple graphs only")
    if not is_planar(G):
        raise NotPlanar()


def verify_rational(G: Multigraph, cert: RationalCertificate) -> RationalVerdict:
    """Check exactly that every edge carries total weight 1."""
    totals = defaultdict(Fraction)
    for t, w in cert.weights.items():
        try:
            real = Triangle.from_edges(G, t.edges)
        except NotATriangle as exc:
            raise UnknownTriangle(str(exc)) from None
        if real != t:
            raise UnknownTriangle(f"{t} does not match the graph's triangle {real}")
        if w < 0:
            raise NegativeWeight(f"triangle {t.edges} has weight {w}")
        for e in t.edges:
            totals[e] += w
    for e in range(G.edge_count):
        if totals[e] != 1:
            return RationalVerdict(False, e, totals[e])
    return RationalVerdict(True)


def doubling_map(cert: ExactCertificate, edge_mapping: Sequence[int]) -> RationalCertificate:
    """Weights on G from a decomposition of its double.

    ``edge_mapping[i]`` is the edge of G copied by edge ``i`` of the double.
    Two doubled triangles over the same triangle of G give it weight 1, one
    gives 1/2.
    """
    count = defaultdict(int)
    for t in cert.triangles:
        primal = tuple(sorted(edge_mapping[e] for e in t.edges))
        if len(set(primal)) != 3:
            raise InconsistentCover(f"doubled triangle {t.edges} uses two copies of one edge")
        count[Triangle(primal, t.vertices)] += 1
    weights = {}
    for t, c in count.items():
        if c > 2:
            raise InconsistentCover(f"triangle {t.edges} lifted {c} times")
        weights[t] = ONE if c == 2 else HALF
    return RationalCertificate(weights)


def lifting_map(cert: RationalCertificate, G: Multigraph) -> ExactCertificate:
    """Decomposition of ``double(G)`` from a {0, 1/2, 1}-weighted certificate.

    A weight-1 triangle ``efg`` becomes the two copies built from ``2e, 2f,
    2g`` and ``2e+1, 2f+1, 2g+1``. Every edge of a 1/2-triangle lies in exactly
    one other 1/2-triangle; of the two, the smaller (canonical order) takes
    copy ``2e`` and the larger ``2e + 1``.
    """
    if not all(w in (HALF, ONE) for w in cert.weights.values()):
        bad = next(w for w in cert.weights.values() if w not in (HALF, ONE))
        raise NonHalfGranular(f"weight {bad} is not 0, 1/2 or 1")
    if not verify_rational(G, cert):
        raise InconsistentCover("certificate is not a rational decomposition of G")
    out = []
    halves = defaultdict(list)
    for t, w in cert.weights.items():
        if w == ONE:
            out.append(Triangle(tuple(2 * e for e in t.edges), t.vertices))
            out.append(Triangle(tuple(2 * e + 1 for e in t.edges), t.vertices))
        else:
            for e in t.edges:
                halves[e].append(t)
    copy_for = {}
    for e in sorted(halves):
        first, second = sorted(halves[e])
        copy_for[(first, e)] = 2 * e
        copy_for[(second, e)] = 2 * e + 1
    for t, w in cert.weights.items():
        if w == HALF:
            out.append(Triangle(tuple(sorted(copy_for[(t, e)] for e in t.edges)), t.vertices))
    lifted = ExactCertificate(tuple(out))
    try:
        check_partition(double(G), lifted.triangles)
    except NotAPartition as exc:
        raise InconsistentCover(str(exc)) from None
    return lifted


def rational_decompose(G: Multigraph) -> RationalCertificate | None:
    """Weights in {0, 1/2, 1} if G is rationally decomposable, else None."""
    _require_simple_planar(G)
    cert = decompose_exact(double(G))
    if cert is None:
        return None
    return doubling_map(cert, doubling_edge_map(G))


class _Simplex:
    """Dense exact tableau for ``A x = b, x >= 0`` (``b >= 0``) with Bland's rule."""

    def __init__(self, A: list[list[Fraction]], b: list[Fraction]):
        self.m = len(A)
        self.n = len(A[0]) if A else 0
        # columns: structural 0..n-1, artificial n..n+m-1, then rhs
        self.rows = [list(A[i]) + [ONE if j == i else Fraction(0) for j in range(self.m)] + [b[i]] for i in range(self.m)]
        self.basis = [self.n + i for i in range(self.m)]
        self.width = self.n + self.m

    def _pivot(self, r, c):
        row = self.rows[r]
        p = row[c]
        self.rows[r] = row = [x / p for x in row]
        for i, other in enumerate(self.rows):
            if i != r and other[c] != 0:
                f = other[c]
                self.rows[i] = [x - f * y for x, y in zip(other, row)]
        self.basis[r] = c

    def _optimize(self, cost: list[Fraction], allowed: set[int]) -> None:
        # minimise cost . x; reduced costs recomputed each step, fine at this size
        while True:
            duals = [cost[self.basis[i]] for i in range(self.m)]
            enter = None
            for j in sorted(allowed):
                if j in self.basis:
                    continue
                rc = cost[j] - sum(duals[i] * self.rows[i][j] for i in range(self.m))
                if rc < 0:
                    enter = j
                    break
            if enter is None:
                return
            best = None
            for i in range(self.m):
                a = self.rows[i][enter]
                if a > 0:
                    ratio = self.rows[i][-1] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and self.basis[i] < self.basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                raise ArithmeticError("unbounded direction")
            self._pivot(best[1], enter)

    def phase_one(self) -> bool:
        cost = [Fraction(0)] * self.n + [ONE] * self.m
        self._optimize(cost, set(range(self.width)))
        if any(self.rows[i][-1] != 0 for i in range(self.m) if self.basis[i] >= self.n):
            return False
        # drive zero-level artificials out of the basis; drop redundant rows
        i = 0
        while i < self.m:
            if self.basis[i] >= self.n:
                col = next((j for j in range(self.n) if self.rows[i][j] != 0), None)
                if col is None:
                    del self.rows[i]
                    del self.basis[i]
                    self.m -= 1
                    continue
                self._pivot(i, col)
            i += 1
        return True

    def phase_two(self, objective: Sequence[Fraction]) -> None:
        cost = list(objective) + [Fraction(0)] * (self.width - self.n)
        self._optimize(cost, set(range(self.n)))

    def solution(self) -> list[Fraction]:
        x = [Fraction(0)] * self.n
        for i, j in enumerate(self.basis):
            if j < self.n:
                x[j] = self.rows[i][-1]
        return x


def rational_oracle(
    G: Multigraph,
    objective: Sequence[Fraction] | None = None,
    limit: int = DEFAULT_ORACLE_LIMIT,
) -> RationalCertificate | None:
    """Exact feasibility of ``{w >= 0 : sum of w over triangles at e = 1}``.

    Returns a basic feasible solution, or None if the system is infeasible.
    With ``objective`` (one coefficient per triangle, in
    :func:`enumerate_triangles` order) the returned vertex minimises it.
    """
    tris = enumerate_triangles(G)
    if len(tris) > limit:
        raise TooLarge(f"{len(tris)} triangles exceed the oracle limit of {limit}")
    if G.edge_count == 0:
        return RationalCertificate({})
    if not tris:
        return None
    A = [[Fraction(0)] * len(tris) for _ in range(G.edge_count)]
    for j, t in enumerate(tris):
        for e in t.edges:
            A[e][j] = ONE
    lp = _Simplex(A, [ONE] * G.edge_count)
    if not lp.phase_one():
        return None
    if objective is not None:
        lp.phase_two([Fraction(c) for c in objective])
    x = lp.solution()
    return RationalCertificate({t: w for t, w in zip(tris, x) if w})


def interior_weight_claim_check(
    G: Multigraph,
    rs: RotationSystem,
    cert: RationalCertificate,
    outer_face: int | None = None,
) -> bool:
    """For each innermost separating triangle T whose interior graph is
    maximal planar, the three faces just inside T carry equal weight."""
    if rs.graph != G:
        raise ValueError("embedding is not of G")
    if outer_face is None:
        outer_face = default_outer_face(rs)
    owner = rs.face_of_dart
    for triple in separating_triangle_extremes(rs, outer_face).innermost:
        ig = interior_graph(rs, triple, outer_face)
        sub = ig.graph
        if not (sub.is_simple() and sub.edge_count == 3 * sub.vertex_count - 6):
            continue
        inside, _ = _cycle_sides(rs, ig.triangle.edges, outer_face)
        weights = set()
        for e in ig.triangle.edges:
            f = next(owner[d] for d in (2 * e, 2 * e + 1) if owner[d] in inside) if inside else None
            if f is None:
                weights.add(cert.weight(ig.triangle))
                continue
            face = rs.faces[f]
            try:
                tri = Triangle.from_edges(G, (d >> 1 for d in face))
            except NotATriangle:
                return False
            weights.add(cert.weight(tri))
        if len(weights) != 1:
            return False
    return True
