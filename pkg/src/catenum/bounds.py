"""Cardinality bounds, non-interferant triple sets and growth-rate estimates.

    2^(floor(n/3)^3) <= ordered count <= 18^C(n,3)
    2^(floor(n/3)^3) / n! <= reduced count <= 18^C(n,3)

The lower bound comes from a non-interferant set H = X1 x X2 x X3 over a
partition of the objects: every subset of H is the support of a valid
alpha.  All bound values are exact integers or fractions.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import AlphaFunction, DomainError, Triple, check_index


@dataclass(frozen=True)
class TripleSet:
    n: int
    members: frozenset[Triple]

    def __post_init__(self) -> None:
        for t in self.members:
            if len(t) != 3:
                raise DomainError(f"not a triple: {t!r}")
            check_index(self.n, *t)
            if len(set(t)) != 3:
                raise DomainError(f"triple {t} is not pairwise distinct")

    @classmethod
    def of(cls, n: int, members: Iterable[Sequence[int]]) -> "TripleSet":
        return cls(n, frozenset(tuple(t) for t in members))

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> list[Triple]:
        return sorted(self.members)


def interference(h: TripleSet) -> tuple[Triple, Triple] | None:
    """First (member, interfering member) pair in sorted order, or None.

    (i, u, j) interferes with (i, j, k) from the left, (j, v, k) from the right.
    """
    members = h.sorted()
    for i, j, k in members:
        for other in members:
            if (other[0] == i and other[2] == j) or (other[0] == j and other[2] == k):
                return (i, j, k), other
    return None


def is_noninterferant(h: TripleSet) -> bool:
    return interference(h) is None


def default_parts(n: int) -> tuple[int, int, int]:
    q = n // 3
    return q, q, n - 2 * q


def build_noninterferant(n: int, sizes: Sequence[int] | None = None) -> TripleSet:
    """H = X1 x X2 x X3 over consecutive index blocks of the given sizes."""
    a, b, c = default_parts(n) if sizes is None else tuple(sizes)
    if min(a, b, c) < 0 or a + b + c != n:
        raise DomainError(f"parts {(a, b, c)} must be non-negative and sum to n={n}")
    x1 = range(1, a + 1)
    x2 = range(a + 1, a + b + 1)
    x3 = range(a + b + 1, n + 1)
    return TripleSet(n, frozenset((i, j, k) for i in x1 for j in x2 for k in x3))


def alpha_from_subset(hprime: TripleSet) -> AlphaFunction:
    return AlphaFunction.from_ones(hprime.n, hprime.members)


def big_str(x: int) -> str:
    """str(x) without the interpreter's digit limit for int -> str conversion."""
    limit = getattr(sys, "get_int_max_str_digits", lambda: 0)()
    if not limit:
        return str(x)
    sys.set_int_max_str_digits(0)
    try:
        return str(x)
    finally:
        sys.set_int_max_str_digits(limit)


@dataclass(frozen=True)
class BoundsReport:
    n: int
    lower_reduced: Fraction
    upper: int
    lower_ordered: int
    binom: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lower_reduced": {
                "num": big_str(self.lower_reduced.numerator),
                "den": big_str(self.lower_reduced.denominator),
            },
            "lower_ordered": big_str(self.lower_ordered),
            "upper": big_str(self.upper),
            "binom": big_str(self.binom),
        }


def bounds_report(n: int) -> BoundsReport:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    binom = math.comb(n, 3)
    lower_ordered = 2 ** ((n // 3) ** 3)
    return BoundsReport(
        n=n,
        lower_reduced=Fraction(lower_ordered, math.factorial(n)),
        upper=18**binom,
        lower_ordered=lower_ordered,
        binom=binom,
    )


@dataclass(frozen=True)
class SigmaEstimate:
    analytic_lower: float = math.log(2) / 27
    analytic_upper: float = math.log(18) / 6
    empirical: list[tuple[int, float]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "lower": self.analytic_lower,
            "upper": self.analytic_upper,
            "empirical": [{"n": n, "value": v} for n, v in self.empirical],
        }


def sigma_estimate(reduced_counts: dict[int, int] | None = None) -> SigmaEstimate:
    """Analytic bounds plus log(reduced count) / n^3 for each supplied n (natural log)."""
    empirical = [(n, math.log(c) / n**3) for n, c in sorted((reduced_counts or {}).items())]
    return SigmaEstimate(empirical=empirical)


def finite_n_slack(n: int) -> float:
    """log(n!) / n^3, the amount the lower chain loses at finite n."""
    return math.lgamma(n + 1) / n**3
