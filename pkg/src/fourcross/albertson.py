"""Albertson's conjecture for r <= 19: edge bounds for critical graphs,
the probabilistic crossing bound, and the case analysis built on them.

The crossing bounds are evaluated exactly (``Fraction``) at the chosen
probability; ``p`` itself is a 3-decimal value, so every ceiling reported
here is the ceiling of an exactly known rational.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

from scipy.optimize import brentq

SLACK = Fraction(1, 20)  # bound on the dropped (1-p)^(n-2) term
THOUSANDTH = Decimal("0.001")

# probabilities at which the written argument states the linear bound in n
ROUNDED_THRESHOLD_P = {17: Decimal("0.727"), 18: Decimal("0.69"), 19: Decimal("0.66")}
PRIOR_WORK_LIMIT = {17: 31}  # n up to which r = 17 was settled earlier


# ---------------------------------------------------------------------------
# edge counts of r-critical graphs


def dirac(n: int, r: int) -> Fraction | None:
    if r < 4 or n < r + 2:
        return None
    return Fraction((r - 1) * n + r - 3, 2)


def ks(n: int, r: int) -> Fraction | None:
    """Kostochka-Stiebitz bound.  For r-critical graphs it needs n != 2r-1;
    without a K_r subdivision it holds at 2r-1 too, so no exclusion here."""
    if r < 4 or n < r + 2:
        return None
    return Fraction((r - 1) * n + 2 * r - 6, 2)


def gallai(n: int, r: int) -> Fraction | None:
    if r < 4 or not r + 2 <= n <= 2 * r - 1:
        return None
    return Fraction((r - 1) * n + (n - r) * (2 * r - n) - 2, 2)


def bt_gallai(n: int, r: int) -> Fraction | None:
    g = gallai(n, r)
    return None if g is None else g + Fraction(1, 2)


def min_edges_critical(n: int, r: int) -> int | None:
    """Lower bound on the edges of an n-vertex r-critical graph.

    ``None`` for n = r + 1, where no r-critical graph exists.
    """
    if n == r:
        return r * (r - 1) // 2
    if n == r + 1:
        return None
    if n < r:
        return 0
    best = math.ceil(Fraction(n * (r - 1), 2))
    for value in (dirac(n, r), ks(n, r) if n != 2 * r - 1 else None, gallai(n, r)):
        if value is not None:
            best = max(best, math.ceil(value))
    return best


def m_lower_nosub(n: int, r: int) -> int:
    """Edge lower bound for an r-critical graph with no K_r subdivision."""
    if n < r + 2:
        raise ValueError(f"need n >= r + 2, got n={n}, r={r}")
    if n <= 2 * r - 2:
        return math.ceil(bt_gallai(n, r))
    return math.ceil(ks(n, r))


def zarankiewicz(r: int) -> int:
    if r < 1:
        raise ValueError("r must be positive")
    prod = (r // 2) * ((r - 1) // 2) * ((r - 2) // 2) * ((r - 3) // 2)
    assert prod % 4 == 0
    return prod // 4


# ---------------------------------------------------------------------------
# crossing bounds


def _prob(p) -> Fraction:
    q = Fraction(str(p)) if isinstance(p, (Decimal, str)) else Fraction(p)
    if not 0 < q <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    return q


def cr_detailed(n: int, m: int, p) -> Fraction:
    """Expected-value crossing bound, including the small-sample term."""
    q = _prob(p)
    if n < 9:
        warnings.warn(f"the detailed bound is stated for n >= 9 (got n={n})", stacklevel=2)
    return (5 * m / q ** 2 - Fraction(139 * n, 6) / q ** 3 + Fraction(139, 3) / q ** 4
            - 6 * n * n * (1 - q) ** (n - 2) / q ** 4)


def cr_simplified(n: int, m: int, p) -> Fraction:
    """The detailed bound with the tail replaced by 0.05 (valid for n >= 22, p >= 0.5)."""
    q = _prob(p)
    if n < 22 or q < Fraction(1, 2):
        warnings.warn(f"simplified bound used outside n >= 22, p >= 0.5 (n={n}, p={p})", stacklevel=2)
    return _simplified(n, m, q)


def _simplified(n, m, q: Fraction) -> Fraction:
    return 5 * m / q ** 2 - Fraction(139 * n, 6) / q ** 3 + Fraction(139, 3) / q ** 4 - SLACK


def stationary_points(n: float, m: float) -> tuple[float, float] | None:
    """Roots of 10m p^2 - (139n/2) p + 556/3, where the simplified bound is stationary."""
    a, b, c = 10 * m, -139 * n / 2, 556 / 3
    disc = b * b - 4 * a * c
    if disc < 0 or a <= 0:
        return None
    s = math.sqrt(disc)
    return (-b - s) / (2 * a), (-b + s) / (2 * a)


def best_p(n: float, m: float) -> float:
    """The local maximum of the simplified bound in p (the larger stationary point)."""
    roots = stationary_points(n, m)
    if roots is None or not 0 < roots[1] <= 1:
        raise ValueError(f"no stationary maximum in (0, 1] for n={n}, m={m}")
    return roots[1]


def round_p(p: float) -> Decimal:
    return Decimal(repr(p)).quantize(THOUSANDTH, rounding=ROUND_HALF_UP)


def optimize_p(n: int, m: int) -> tuple[Decimal, int]:
    p = round_p(best_p(n, m))
    return p, math.ceil(cr_simplified(n, m, p))


@dataclass(frozen=True)
class AlbertsonRow:
    n: int
    m: int
    p: Decimal
    bound: int


def table(r: int, n_from: int, n_to: int) -> list[AlbertsonRow]:
    if n_from < r + 2:
        raise ValueError(f"table starts at n >= r + 2 = {r + 2}")
    rows = []
    for n in range(n_from, n_to + 1):
        m = m_lower_nosub(n, r)
        p, bound = optimize_p(n, m)
        rows.append(AlbertsonRow(n, m, p, bound))
    return rows


def table_markdown(r: int, rows: list[AlbertsonRow]) -> str:
    lines = [f"r = {r}, Z(r) = {zarankiewicz(r)}", "", "| n | m | p | ⌈X(n,m,p)⌉ |", "|---|---|---|---|"]
    lines += [f"| {row.n} | {row.m} | {row.p} | {row.bound} |" for row in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# threshold in n beyond which the linear-in-n bound exceeds Z(r)


def linear_coefficients(r: int, p) -> tuple[Fraction, Fraction]:
    """(a, b) with cr_simplified(n, ks(n, r), p) = a n + b."""
    q = _prob(p)
    a = Fraction(5 * (r - 1), 2) / q ** 2 - Fraction(139, 6) / q ** 3
    b = 5 * Fraction(r - 3) / q ** 2 + Fraction(139, 3) / q ** 4 - SLACK
    return a, b


def _ks_line(r: int, n: float) -> float:
    return ((r - 1) * n + 2 * r - 6) / 2


def _threshold_p(r: int, n: float) -> float:
    # past the larger stationary point the bound falls, and below it (down
    # to the smaller one) it rises, so p = 1 is best when that point exceeds 1
    return min(stationary_points(n, _ks_line(r, n))[1], 1.0)


def _best_bound(r: int, n: float) -> float:
    m = _ks_line(r, n)
    p = _threshold_p(r, n)
    return 5 * m / p ** 2 - 139 * n / (6 * p ** 3) + 139 / (3 * p ** 4) - 0.05


@dataclass(frozen=True)
class ThresholdResult:
    r: int
    p_star: float
    n_star: float
    rounded_p: Decimal
    linear_coeffs: tuple[float, float]
    n_from: int
    """Smallest integer n for which the linear bound at rounded_p reaches Z(r)."""


def threshold(r: int, rounded_p: Decimal | None = None) -> ThresholdResult:
    """Where the p-optimised bound with m = ks(n, r) first reaches Z(r).

    Solves max_p bound(n, p) = Z(r) in n by Brent's method, using the closed
    form of the maximising p for each n.
    """
    if r < 5:
        raise ValueError("threshold needs r >= 5")
    z = zarankiewicz(r)

    def g(n: float) -> float:
        return _best_bound(r, n) - z

    def admissible(n: float) -> bool:
        roots = stationary_points(n, _ks_line(r, n))
        return roots is not None and roots[1] > 0

    lo = float(r + 2)
    while not admissible(lo):
        lo += 1
        if lo > 10 ** 6:
            raise ValueError(f"no admissible p for r={r}")
    hi = 2 * lo
    while g(hi) < 0:
        hi *= 2
        if hi > 1e9:
            raise ValueError(f"the bound never reaches Z({r}) = {z}")
    if g(lo) >= 0:
        n_star = lo
    else:
        n_star = brentq(g, lo, hi, xtol=1e-13, maxiter=200)
    p_star = _threshold_p(r, n_star)
    if rounded_p is None:
        rounded_p = ROUNDED_THRESHOLD_P.get(r) or Decimal(repr(p_star)).quantize(THOUSANDTH, rounding="ROUND_DOWN")
    a, b = linear_coefficients(r, rounded_p)
    n_from = math.ceil((z - b) / a)
    return ThresholdResult(r, p_star, n_star, rounded_p, (float(a), float(b)), n_from)


# ---------------------------------------------------------------------------
# n = 2r - 2: the graph is a join of two smaller critical graphs


@dataclass(frozen=True)
class JoinCase:
    r1: int
    n1: int
    m: int


def join_cases(r: int, n: int) -> list[JoinCase]:
    """Every (r1, n1) split considered, with its edge lower bound."""
    if n != 2 * r - 2:
        raise ValueError(f"join case needs n = 2r - 2 = {2 * r - 2}, got n={n}")
    # r1 = 1: G1 is K1 and G2 has no K_{r-1} subdivision
    cases = [JoinCase(1, 1, (n - 1) + math.ceil(ks(n - 1, r - 1)))]
    for r1 in range(2, r // 2 + 1):
        r2 = r - r1
        max_n1 = 2 if r1 == 2 else n - r2
        for n1 in range(r1, max_n1 + 1):
            n2 = n - n1
            if n1 == r1 + 1 or n2 == r2 + 1:
                continue
            cases.append(JoinCase(r1, n1, min_edges_critical(n1, r1) + min_edges_critical(n2, r2) + n1 * n2))
    return cases


def join_case_min_edges(r: int, n: int) -> int:
    return min(c.m for c in join_cases(r, n))


JOIN_P = Decimal("0.635")


# ---------------------------------------------------------------------------
# size of a smallest counterexample


ALPHA_RANGES = (
    (Fraction("3.17"), Fraction("3.57"), 47),
    (Fraction("3.05"), Fraction("3.17"), 41),
    (Fraction("3.03"), Fraction("3.05"), 40),
)
ALPHA_STEP = Fraction(1, 10000)


def h(alpha: Fraction, r: int, k: int) -> Fraction:
    """Lower-order remainder in the averaging bound over k-vertex subgraphs."""
    a = Fraction(alpha)
    inner = 2 * a + 2 * (a - 1) / (r - 1) + Fraction(r - 3, r - 1) * (a - 1)
    return (a ** 3 * r * (r - 1) * (r - 2) / (2 * (k - 3))
            * (Fraction(10, k - 2) - Fraction(139, 3 * k * (k - 1)) * inner))


def leading_coefficient(alpha: Fraction, k: int) -> Fraction:
    a = Fraction(alpha)
    return a ** 3 / (2 * (k - 3)) * (Fraction(5, k - 2) - 139 * a / (3 * k * (k - 1)))


@dataclass
class RangeCheck:
    lo: Fraction
    hi: Fraction
    k: int
    points: int
    min_h: Fraction
    min_coefficient: Fraction
    witness: Fraction | None  # first alpha where a check fails

    @property
    def ok(self) -> bool:
        return self.witness is None


@dataclass
class CounterexampleReport:
    r: int
    ranges: list[RangeCheck]
    quartic: Fraction
    z: int

    @property
    def ok(self) -> bool:
        return all(rc.ok for rc in self.ranges) and self.quartic >= self.z


def counterexample_check(r: int, step: Fraction = ALPHA_STEP) -> CounterexampleReport:
    """Check on an alpha grid that n >= 3.03r forces cr(G) >= Z(r)."""
    if r < 19:
        raise ValueError("the counterexample bound is argued for r >= 19")
    quarter = Fraction(1, 64)
    checks = []
    for lo, hi, k in ALPHA_RANGES:
        count = int((hi - lo) / step)
        min_h = min_c = None
        witness = None
        for i in range(count + 1):
            alpha = lo + i * step
            hv, cv = h(alpha, r, k), leading_coefficient(alpha, k)
            min_h = hv if min_h is None else min(min_h, hv)
            min_c = cv if min_c is None else min(min_c, cv)
            if witness is None and (hv < 0 or cv < quarter or not k < alpha * r):
                witness = alpha
        checks.append(RangeCheck(lo, hi, k, count + 1, min_h, min_c, witness))
    quartic = Fraction(r * (r - 1) * (r - 2) * (r - 3), 64)
    return CounterexampleReport(r, checks, quartic, zarankiewicz(r))


# ---------------------------------------------------------------------------
# the whole case analysis


@dataclass
class Verdict:
    r: int
    z: int
    threshold: ThresholdResult | None
    categories: dict[int, str]
    tail_from: int
    tail: str
    """Every n >= tail_from is settled by ``tail`` ("threshold" or "external")."""
    rows: list[AlbertsonRow] = field(default_factory=list)
    join_m: int | None = None
    join_bound: int | None = None

    @property
    def exceptions(self) -> list[int]:
        return [n for n, c in self.categories.items() if c == "open"]

    @property
    def verified(self) -> bool:
        return not self.exceptions


def verify(r: int) -> Verdict:
    """Sort every n >= r into the argument that settles it.

    Categories: ``subdivision`` (n <= r + 4), ``table`` (p-optimised bound
    reaches Z(r)), ``join`` (n = 2r - 2 via the join structure),
    ``threshold`` (linear bound in n), ``external`` (settled by earlier
    work: all of r <= 16, and r = 17 up to n = 31), ``open`` (not settled).
    """
    if not 5 <= r <= 19:
        raise ValueError("verify handles 5 <= r <= 19")
    z = zarankiewicz(r)
    try:
        th = threshold(r)
    except ValueError:
        th = None
    first = r + 5
    if r <= 16 or th is None:
        return Verdict(r, z, th, {n: "subdivision" for n in range(r, first)}, first, "external")
    tail_from = max(th.n_from, 22)
    verdict = Verdict(r, z, th, {}, tail_from, "threshold")
    for n in range(r, tail_from):
        if n < first:
            verdict.categories[n] = "subdivision"
        elif n <= PRIOR_WORK_LIMIT.get(r, 0):
            verdict.categories[n] = "external"
        else:
            row = table(r, n, n)[0]
            verdict.rows.append(row)
            if row.bound >= z:
                verdict.categories[n] = "table"
            elif n == 2 * r - 2:
                verdict.join_m = join_case_min_edges(r, n)
                verdict.join_bound = math.ceil(cr_detailed(n, verdict.join_m, JOIN_P))
                verdict.categories[n] = "join" if verdict.join_bound >= z else "open"
            else:
                verdict.categories[n] = "open"
    return verdict
