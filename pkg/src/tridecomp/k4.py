"""Closed-form decisions for multigraphs whose underlying graph is K4, K4 - e
or K3.

Vertices are labelled a, b, c, d (0..3) and a profile lists the six
multiplicities in the order ab, ac, ad, bc, bd, cd, named r, s, t, x, y, z.
:meth:`K4Profile.realize` groups the edge ids by pair in that order, so the
copies of ab are ``e_1..e_r`` = ids ``0..r-1``, those of ac are ``f_1..f_s``
and so on through ``h, l, m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .decompose import ExactCertificate, check_partition, decompose_exact
from .errors import ConditionUnsatisfied, NotK4MinusEUnderlying, NotK4Underlying
from .graph import Multigraph, Triangle
from .rational import HALF, ONE, RationalCertificate

LABELS = "abcd"
PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PAIR_INDEX = {p: i for i, p in enumerate(PAIRS)}


def _pair(u: int, v: int) -> int:
    return PAIR_INDEX[(u, v) if u < v else (v, u)]


def _vertex(label) -> int:
    if isinstance(label, str):
        return LABELS.index(label)
    return int(label)


@dataclass(frozen=True)
class K4Profile:
    r: int
    s: int
    t: int
    x: int
    y: int
    z: int

    def __post_init__(self):
        for name, m in zip("rstxyz", self.values):
            if int(m) != m or m < 0:
                raise ValueError(f"multiplicity {name}={m} is not a nonnegative integer")

    @classmethod
    def of(cls, values: Sequence[int]) -> "K4Profile":
        if len(values) != 6:
            raise ValueError(f"a profile has six multiplicities, got {len(values)}")
        return cls(*(int(v) for v in values))

    @property
    def values(self) -> tuple[int, ...]:
        return (self.r, self.s, self.t, self.x, self.y, self.z)

    @property
    def total(self) -> int:
        return sum(self.values)

    def mu(self, u, v) -> int:
        return self.values[_pair(_vertex(u), _vertex(v))]

    def zeros(self) -> list[int]:
        return [i for i, m in enumerate(self.values) if m == 0]

    def pair_ids(self) -> list[list[int]]:
        """Edge ids of each pair of :data:`PAIRS` in the realized graph."""
        out, start = [], 0
        for m in self.values:
            out.append(list(range(start, start + m)))
            start += m
        return out

    def realize(self) -> Multigraph:
        edges = [p for p, m in zip(PAIRS, self.values) for _ in range(m)]
        return Multigraph(4, tuple(edges))

    def doubled(self) -> "K4Profile":
        return K4Profile(*(2 * m for m in self.values))


class ApexSolution(NamedTuple):
    """The value of n at the first apex that works, and at every apex."""

    n: int
    apex: str
    apexes: dict[str, int]


def _others(u: int) -> tuple[int, int, int]:
    return tuple(v for v in range(4) if v != u)


def _solve_at(profile: K4Profile, u: int, factor: int) -> int | None:
    """Integer n with ``mu(u, v_i) = mu(v_i, v_j) + mu(v_i, v_k) - factor * n``.

    ``factor`` is 2 for exact decompositions and 1 for rational ones (where
    n stands for n').
    """
    v1, v2, v3 = _others(u)
    mu = profile.mu
    num = mu(v1, v2) + mu(v1, v3) - mu(u, v1)
    if num % factor:
        return None
    n = num // factor
    bound = min(mu(v1, v2), mu(v1, v3), mu(v2, v3))
    if n < 0 or factor * n > 2 * bound:
        return None
    for i, j, k in ((v1, v2, v3), (v2, v1, v3), (v3, v1, v2)):
        if mu(u, i) != mu(i, j) + mu(i, k) - factor * n:
            return None
    return n


def _require_k4(profile: K4Profile) -> None:
    if profile.zeros():
        raise NotK4Underlying(f"profile {profile.values} has a zero multiplicity")


def _apex_values(profile: K4Profile, factor: int) -> dict[str, int]:
    found = {}
    for u in range(4):
        n = _solve_at(profile, u, factor)
        if n is not None:
            found[LABELS[u]] = n
    return found


def decide_k4_exact(profile: K4Profile) -> ApexSolution | None:
    _require_k4(profile)
    found = _apex_values(profile, 2)
    if not found:
        return None
    apex = next(iter(found))
    return ApexSolution(found[apex], apex, found)


def k4_rational_apexes(profile: K4Profile) -> dict[str, int]:
    """n' for every apex at which the rational condition holds."""
    _require_k4(profile)
    return _apex_values(profile, 1)


def decide_k4_rational(profile: K4Profile) -> int | None:
    """n' at the first apex (in a, b, c, d order) where the condition holds."""
    found = k4_rational_apexes(profile)
    return next(iter(found.values()), None)


def _apex_triangles(profile: K4Profile, n: int, u: int, ids: list[list[int]]) -> list[Triangle]:
    """Triangles of the apex construction; zero multiplicities are allowed.

    ``ids`` is consumed from the end for the n opposite triangles, then
    from the front for the apex triangles.
    """
    v1, v2, v3 = _others(u)
    E = {p: list(ids[_pair(*p)]) for p in ((u, v1), (u, v2), (u, v3), (v1, v2), (v1, v3), (v2, v3))}
    e, f, g = E[(u, v1)], E[(u, v2)], E[(u, v3)]
    h, l, m = E[(v1, v2)], E[(v1, v3)], E[(v2, v3)]
    x, y, z = len(h), len(l), len(m)
    if n < 0 or n > min(x, y, z):
        raise ConditionUnsatisfied(f"n={n} is outside 0..{min(x, y, z)}")
    xp, yp, zp = x - n, y - n, z - n
    if (len(e), len(f), len(g)) != (xp + yp, xp + zp, yp + zp):
        raise ConditionUnsatisfied(f"profile {profile.values} does not satisfy the condition at {LABELS[u]} with n={n}")
    out = []
    for i in range(n):
        out.append((h[x - 1 - i], l[y - 1 - i], m[z - 1 - i]))
    for i in range(xp):
        out.append((e[i], f[i], h[i]))
    for i in range(yp):
        out.append((e[xp + i], g[i], l[i]))
    for i in range(zp):
        out.append((f[xp + i], g[yp + i], m[i]))
    G = profile.realize()
    return [Triangle.from_edges(G, t) for t in out]


def construct_k4_decomposition(profile: K4Profile, n: int, apex="a") -> ExactCertificate:
    """Explicit decomposition from a solution n of the exact condition."""
    u = _vertex(apex)
    tris = _apex_triangles(profile, n, u, profile.pair_ids())
    cert = ExactCertificate(tuple(tris))
    check_partition(profile.realize(), cert.triangles)
    return cert


def construct_k4_rational(profile: K4Profile, n_prime: int, apex="a") -> RationalCertificate:
    """Weights in {1/2, 1} from a solution n' of the rational condition.

    Even n' is the exact case. For odd n' the last copy of every pair forms
    a simple K4 that takes its four triangles at 1/2, and the rest is
    decomposed exactly with n = (n' - 1) / 2.
    """
    u = _vertex(apex)
    if _solve_at(profile, u, 1) != n_prime:
        raise ConditionUnsatisfied(f"n'={n_prime} does not solve the rational condition at {LABELS[u]}")
    G = profile.realize()
    if n_prime % 2 == 0:
        tris = _apex_triangles(profile, n_prime // 2, u, profile.pair_ids())
        return RationalCertificate({t: ONE for t in tris})
    ids = profile.pair_ids()
    last = [p[-1] for p in ids]
    rest = [p[:-1] for p in ids]
    weights = {t: ONE for t in _apex_triangles(profile, (n_prime - 1) // 2, u, rest)}
    for triple in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
        a, b, c = triple
        t = Triangle.from_edges(G, (last[_pair(a, b)], last[_pair(a, c)], last[_pair(b, c)]))
        weights[t] = HALF
    return RationalCertificate(weights)


def _minus_e_roles(profile: K4Profile) -> tuple[int, int, int, int]:
    zeros = profile.zeros()
    if len(zeros) != 1:
        raise NotK4MinusEUnderlying(f"profile {profile.values} needs exactly one zero multiplicity")
    v1, v2 = PAIRS[zeros[0]]
    u, v = (w for w in range(4) if w not in (v1, v2))
    return u, v, v1, v2


def decide_k4_minus_e(profile: K4Profile) -> ExactCertificate | None:
    """Decomposition when the underlying graph is K4 - e, or None.

    The missing pair is ``v1 v2``; the other two vertices play u and v, and
    both role assignments are tried.
    """
    u0, v0, v1, v2 = _minus_e_roles(profile)
    mu = profile.mu
    for u, v in ((u0, v0), (v0, u0)):
        if mu(u, v) == mu(v, v1) + mu(v, v2) and mu(u, v1) == mu(v, v1) and mu(u, v2) == mu(v, v2):
            break
    else:
        return None
    ids = profile.pair_ids()
    uv = ids[_pair(u, v)]
    G = profile.realize()
    tris = []
    k1 = mu(v, v1)
    for i in range(k1):
        tris.append(Triangle.from_edges(G, (uv[i], ids[_pair(u, v1)][i], ids[_pair(v, v1)][i])))
    for i in range(mu(v, v2)):
        tris.append(Triangle.from_edges(G, (uv[k1 + i], ids[_pair(u, v2)][i], ids[_pair(v, v2)][i])))
    return ExactCertificate(tuple(tris))


def decide_k3_multigraph(multiplicities: Sequence[int]) -> ExactCertificate | None:
    """Decomposition of a K3-underlying multigraph; equal multiplicities k
    give k triangles, anything else has no exact or rational decomposition.

    Edge ids follow the pairs 01, 02, 12 with multiplicities in that order.
    """
    if len(multiplicities) != 3 or any(int(m) < 1 for m in multiplicities):
        raise ValueError("a K3 profile has three positive multiplicities")
    p, q, w = (int(m) for m in multiplicities)
    if not p == q == w:
        return None
    return ExactCertificate(tuple(Triangle((i, p + i, 2 * p + i), (0, 1, 2)) for i in range(p)))


def k3_multigraph(multiplicities: Sequence[int]) -> Multigraph:
    p, q, w = multiplicities
    return Multigraph(3, ((0, 1),) * p + ((0, 2),) * q + ((1, 2),) * w)


def decide_profile(profile: K4Profile) -> ExactCertificate | None:
    """Route a profile to the right closed form.

    Two or more zeros leave the closed forms' domain, so those go to the
    general exact-cover search on the realized multigraph.
    """
    zeros = profile.zeros()
    if not zeros:
        sol = decide_k4_exact(profile)
        return None if sol is None else construct_k4_decomposition(profile, sol.n, sol.apex)
    if len(zeros) == 1:
        return decide_k4_minus_e(profile)
    return decompose_exact(profile.realize())
