"""Validity of alpha functions via the two classification conditions.

Condition 1 (distinct i, j, k): alpha(i,j,k) = 1 forces alpha(i,k,j) = 0
and alpha(j,i,k) = 0.

Condition 2 (distinct i, j, l, k):
    alpha(i,j,k) = alpha(j,l,k) = 1  <=>  alpha(i,j,l) = alpha(i,l,k) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

import numpy as np

from .core import AlphaFunction, DomainError, Triple, distinct_triples, triple_count, triple_rank

Quad = tuple[int, int, int, int]


@dataclass
class ConditionReport:
    valid: bool
    c1_violations: list[Triple] = field(default_factory=list)
    c2_violations: list[Quad] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "c1_violations": [list(t) for t in self.c1_violations],
            "c2_violations": [list(q) for q in self.c2_violations],
        }


def alpha_check(alpha: AlphaFunction, short_circuit: bool = False) -> ConditionReport:
    """Check both conditions over every ordered distinct triple/quadruple.

    With ``short_circuit`` the scan stops at the first violation.
    """
    n, a = alpha.n, alpha
    c1: list[Triple] = []
    c2: list[Quad] = []
    for i, j, k in distinct_triples(n):
        if a(i, j, k) and (a(i, k, j) or a(j, i, k)):
            c1.append((i, j, k))
            if short_circuit:
                return ConditionReport(False, c1, c2)
    for i, j, l, k in permutations(range(1, n + 1), 4):
        left = a(i, j, k) and a(j, l, k)
        right = a(i, j, l) and a(i, l, k)
        if left != right:
            c2.append((i, j, l, k))
            if short_circuit:
                return ConditionReport(False, c1, c2)
    return ConditionReport(not c1 and not c2, c1, c2)


def product_identity_check(alpha: AlphaFunction) -> bool:
    """alpha(i,j,k)·alpha(j,l,k) == alpha(i,j,l)·alpha(i,l,k) on distinct quadruples."""
    a = alpha
    return all(
        a(i, j, k) * a(j, l, k) == a(i, j, l) * a(i, l, k)
        for i, j, l, k in permutations(range(1, alpha.n + 1), 4)
    )


@lru_cache(maxsize=None)
def constraint_ranks(n: int) -> tuple[tuple[tuple[int, int], ...], tuple[Quad, ...]]:
    """Conditions as rank tuples.

    Returns ``(pairs, quads)``: each pair (a, b) forbids both bits set; each
    quad (a, b, c, d) requires bit_a & bit_b == bit_c & bit_d.
    """
    pairs = set()
    for i, j, k in distinct_triples(n):
        r = triple_rank(n, i, j, k)
        for other in ((i, k, j), (j, i, k)):
            s = triple_rank(n, *other)
            pairs.add((min(r, s), max(r, s)))
    quads = tuple(
        (
            triple_rank(n, i, j, k),
            triple_rank(n, j, l, k),
            triple_rank(n, i, j, l),
            triple_rank(n, i, l, k),
        )
        for i, j, l, k in permutations(range(1, n + 1), 4)
    )
    return tuple(sorted(pairs)), quads


def valid_mask(n: int, masks: np.ndarray) -> np.ndarray:
    """Vectorised ``alpha_check(...).valid`` over integer-encoded alphas."""
    m = triple_count(n)
    if m > 63:
        raise DomainError("vectorised check supports n <= 5")
    masks = np.asarray(masks, dtype=np.uint64)
    bits = [((masks >> np.uint64(m - 1 - r)) & np.uint64(1)).astype(bool) for r in range(m)]
    ok = np.ones(len(masks), dtype=bool)
    pairs, quads = constraint_ranks(n)
    for a, b in pairs:
        ok &= ~(bits[a] & bits[b])
    for a, b, c, d in quads:
        ok &= (bits[a] & bits[b]) == (bits[c] & bits[d])
    return ok
