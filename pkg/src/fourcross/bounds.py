"""Crossing-number lower bounds and edge-count upper bounds.

The five linear bounds are exact rationals because they feed certificates.
The Crossing Lemma and its corollaries are real-valued reproductions and
are evaluated in binary64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

# stored as exact decimals
DENSITY = Fraction("6.95")
C_K_CROSSINGS = Fraction("3.81")
C_K_CROSSINGS_SIMPLE = Fraction("4.108")
C_INCIDENCES = Fraction("2.44")

# m-coefficient and (n-2)-coefficient of each linear bound, in sixths
LINEAR_SIXTHS = {
    1: (6, 18),
    2: (14, 50),
    3: (24, 103),
    4: (30, 150),
    5: (30, 139),
}
LINEAR = {k: (Fraction(a, 6), Fraction(b, 6)) for k, (a, b) in LINEAR_SIXTHS.items()}

LINEAR_TEXT = {
    1: "m - 3(n-2)",
    2: "7/3 m - 25/3 (n-2)",
    3: "4m - 103/6 (n-2)",
    4: "5m - 25(n-2)",
    5: "5m - 139/6 (n-2)",
}


def _need_n(n: int) -> None:
    if n <= 2:
        raise ValueError(f"linear bounds need n > 2, got n={n}")


def linear_bound(formula: int, n: int, m: int) -> Fraction:
    if formula not in LINEAR:
        raise ValueError(f"unknown formula {formula}; expected 1..5")
    _need_n(n)
    a, b = LINEAR_SIXTHS[formula]
    return Fraction(a * m - b * (n - 2), 6)


def linear_best(n: int, m: int) -> tuple[Fraction, int | None]:
    """Largest of the five linear bounds, clamped at 0.

    Ties go to the higher-numbered formula.  When every formula is negative
    the result is ``(0, None)``.
    """
    _need_n(n)
    value, best = max((a * m - b * (n - 2), k) for k, (a, b) in LINEAR_SIXTHS.items())
    if value < 0:
        return Fraction(0), None
    return Fraction(value, 6), best


def edge_removal_identity_check(n: int, m: int) -> bool:
    """Peeling edges down to 6(n-2) turns bound (3) into bound (5), exactly."""
    _need_n(n)
    k = n - 2
    lhs = 5 * (m - 6 * k) + 4 * 6 * k - Fraction(103, 6) * k
    return lhs == 5 * m - Fraction(139, 6) * k


class CrossingLemma(NamedTuple):
    value: float
    branch: str  # "dense" when m >= 6.95n, else "general"


def crossing_lemma(n: int, m: int) -> CrossingLemma:
    if n < 1:
        raise ValueError("crossing lemma needs n >= 1")
    main = m ** 3 / (29 * n * n)
    if m >= DENSITY * n:
        return CrossingLemma(main, "dense")
    return CrossingLemma(max(0.0, main - 35 * n / 29), "general")


def crossing_lemma_constant() -> Fraction:
    """5/p^2 - 139/(6p^3) at p = 6.95, which beats 1/29."""
    p = DENSITY
    c = 5 / p ** 2 - Fraction(139, 6) / p ** 3
    assert c.numerator * 29 > c.denominator, "constant must exceed 1/29"
    return c


def multigraph_bound(n: int, m: int, t: int) -> float:
    if t < 1:
        raise ValueError(f"edge multiplicity must be at least 1, got {t}")
    if n < 1:
        raise ValueError("multigraph bound needs n >= 1")
    return max(0.0, m ** 3 / (29 * t * n * n) - 35 * n * t * t / 29)


def incidences(m_lines: int, n_points: int) -> float:
    if m_lines < 0 or n_points < 0:
        raise ValueError("counts must be nonnegative")
    c = float(C_INCIDENCES)
    return c * (m_lines * n_points) ** (2 / 3) + m_lines + n_points


@dataclass(frozen=True)
class EdgeBound:
    value: Fraction | float
    source: str
    candidates: dict[str, Fraction | float]


def max_edges(n: int, k: int) -> EdgeBound:
    """Smallest applicable upper bound on the edges of a simple drawing with
    at most ``k`` crossings per edge."""
    if n < 3:
        raise ValueError(f"edge bounds need n >= 3, got n={n}")
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    cands: dict[str, Fraction | float] = {}
    if k == 0:
        cands["euler 3n-6"] = Fraction(3 * n - 6)
    if k <= 4:
        cands["(k+3)(n-2)"] = Fraction((k + 3) * (n - 2))
    if k == 3:
        cands["5.5n-11"] = Fraction(11, 2) * n - 11
    if k == 4:
        cands["6n-12"] = Fraction(6 * n - 12)
    if k >= 1:
        cands["4.108 sqrt(k) n"] = float(C_K_CROSSINGS_SIMPLE) * math.sqrt(k) * n
    if k >= 2:
        cands["3.81 sqrt(k) n"] = float(C_K_CROSSINGS) * math.sqrt(k) * n
    source = min(cands, key=cands.__getitem__)  # ties keep the first-listed bound
    return EdgeBound(cands[source], source, cands)


@dataclass
class BoundReport:
    n: int
    m: int
    per_formula: dict[int, Fraction]
    best_linear: Fraction
    best_formula: int | None
    crossing_lemma: float
    crossing_lemma_branch: str
    multiplicity: int | None = None
    multigraph: float | None = None
    k: int | None = None
    edge_bound: EdgeBound | None = None
    notes: list[str] = field(default_factory=list)

    def as_dict(self, fmt=float) -> dict:
        out = {
            "n": self.n,
            "m": self.m,
            "per_formula": {str(k): _q(v) for k, v in self.per_formula.items()},
            "best_linear": {"value": _q(self.best_linear), "formula": self.best_formula},
            "crossing_lemma": {"value": fmt(self.crossing_lemma), "branch": self.crossing_lemma_branch},
        }
        if self.multiplicity is not None:
            out["multigraph"] = {"t": self.multiplicity, "value": fmt(self.multigraph)}
        if self.edge_bound is not None:
            eb = self.edge_bound
            out["max_edges"] = {
                "k": self.k,
                "value": _real(eb.value, fmt),
                "source": eb.source,
                "candidates": {s: _real(v, fmt) for s, v in eb.candidates.items()},
            }
        out["notes"] = list(self.notes)
        return out


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _real(x, fmt):
    return _q(x) if isinstance(x, Fraction) else fmt(x)


def bound_report(n: int, m: int, multiplicity: int | None = None, k: int | None = None) -> BoundReport:
    _need_n(n)
    if m < 0:
        raise ValueError("m must be nonnegative")
    per = {i: linear_bound(i, n, m) for i in LINEAR}
    best, which = linear_best(n, m)
    cl = crossing_lemma(n, m)
    notes = []
    if which is None:
        notes.append("every linear bound is negative; clamped to 0")
    if m > n * (n - 1) // 2:
        notes.append("m exceeds n(n-1)/2, so no simple graph has these parameters")
    report = BoundReport(n, m, per, best, which, cl.value, cl.branch, notes=notes)
    if multiplicity is not None:
        report.multiplicity = multiplicity
        report.multigraph = multigraph_bound(n, m, multiplicity)
    if k is not None:
        report.k = k
        report.edge_bound = max_edges(n, k)
    return report
