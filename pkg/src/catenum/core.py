"""Objects, morphisms, ordered distinct triples and alpha functions.

All public interfaces use 1-based object indices.  An alpha function is
stored only on the n(n-1)(n-2) ordered triples of pairwise distinct
indices; every degenerate triple evaluates to 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

Triple = tuple[int, int, int]

KINDS = ("E", "F", "G")


class RangeError(ValueError):
    """An object index lies outside 1..n."""


class DomainError(ValueError):
    """An argument is outside the domain of an operation."""


def check_index(n: int, *indices: int) -> None:
    for x in indices:
        if not isinstance(x, int) or not 1 <= x <= n:
            raise RangeError(f"object index {x!r} not in 1..{n}")


@dataclass(frozen=True, order=True)
class Morphism:
    kind: str
    source: int
    target: int

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise DomainError(f"unknown morphism kind {self.kind!r}")
        if self.source < 1 or self.target < 1:
            raise RangeError(f"object indices must be >= 1: {self}")
        if self.kind == "E" and self.source != self.target:
            raise DomainError("E is only defined on the diagonal")
        if self.kind == "G" and self.source == self.target:
            raise DomainError("G is only defined off the diagonal")

    def __str__(self) -> str:
        return f"{self.kind}^{{{self.source},{self.target}}}"

    @classmethod
    def parse(cls, text: str) -> "Morphism":
        """Inverse of ``str``: ``'G^{1,2}'`` -> ``Morphism('G', 1, 2)``."""
        text = text.strip()
        try:
            kind, rest = text[0], text[1:]
            if not (rest.startswith("^{") and rest.endswith("}")):
                raise ValueError
            i, j = rest[2:-1].split(",")
            return cls(kind, int(i), int(j))
        except (ValueError, IndexError):
            raise DomainError(f"cannot parse morphism {text!r}") from None


def hom(n: int, i: int, j: int) -> tuple[Morphism, Morphism]:
    """The two morphisms of Hom(i, j)."""
    check_index(n, i, j)
    if i == j:
        return Morphism("E", i, i), Morphism("F", i, i)
    return Morphism("F", i, j), Morphism("G", i, j)


def all_morphisms(n: int) -> list[Morphism]:
    return [m for i in range(1, n + 1) for j in range(1, n + 1) for m in hom(n, i, j)]


# --- ordered distinct triples -------------------------------------------------

@lru_cache(maxsize=None)
def distinct_triples(n: int) -> tuple[Triple, ...]:
    """All ordered triples of pairwise distinct indices, lexicographically."""
    return tuple(permutations(range(1, n + 1), 3))


@lru_cache(maxsize=None)
def _rank_table(n: int) -> dict[Triple, int]:
    return {t: r for r, t in enumerate(distinct_triples(n))}


def triple_count(n: int) -> int:
    return n * (n - 1) * (n - 2) if n >= 3 else 0


def triple_rank(n: int, i: int, j: int, k: int) -> int:
    check_index(n, i, j, k)
    if i == j or j == k or i == k:
        raise DomainError(f"triple ({i},{j},{k}) is not pairwise distinct")
    return _rank_table(n)[(i, j, k)]


def triple_unrank(n: int, rank: int) -> Triple:
    triples = distinct_triples(n)
    if not 0 <= rank < len(triples):
        raise DomainError(f"rank {rank} not in 0..{len(triples) - 1}")
    return triples[rank]


# --- alpha functions ----------------------------------------------------------

@dataclass(frozen=True)
class AlphaFunction:
    """Boolean function on {1..n}^3, nonzero only on distinct triples.

    ``bits[r]`` is the value on ``triple_unrank(n, r)``.
    """

    n: int
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if len(self.bits) != triple_count(self.n):
            raise DomainError(
                f"expected {triple_count(self.n)} bits for n={self.n}, got {len(self.bits)}"
            )
        if any(b not in (0, 1) for b in self.bits):
            raise DomainError("bits must be 0 or 1")

    @classmethod
    def zero(cls, n: int) -> "AlphaFunction":
        return cls(n, (0,) * triple_count(n))

    @classmethod
    def from_ones(cls, n: int, ones: Iterable[Sequence[int]]) -> "AlphaFunction":
        bits = [0] * triple_count(n)
        for t in ones:
            if len(t) != 3:
                raise DomainError(f"not a triple: {t!r}")
            bits[triple_rank(n, *t)] = 1
        return cls(n, tuple(bits))

    @classmethod
    def from_bitstring(cls, n: int, text: str) -> "AlphaFunction":
        if set(text) - {"0", "1"}:
            raise DomainError("bit string may only contain '0' and '1'")
        return cls(n, tuple(int(c) for c in text))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "AlphaFunction":
        """Integer encoding with rank 0 as the most significant bit."""
        m = triple_count(n)
        if mask < 0 or mask >> m:
            raise DomainError(f"mask does not fit in {m} bits")
        return cls(n, tuple((mask >> (m - 1 - r)) & 1 for r in range(m)))

    @property
    def mask(self) -> int:
        out = 0
        for b in self.bits:
            out = (out << 1) | b
        return out

    @property
    def bitstring(self) -> str:
        return "".join(map(str, self.bits))

    def ones(self) -> list[Triple]:
        triples = distinct_triples(self.n)
        return [triples[r] for r, b in enumerate(self.bits) if b]

    def __call__(self, i: int, j: int, k: int) -> int:
        return alpha_eval(self, i, j, k)

    def to_json(self) -> dict:
        return {"n": self.n, "ones": [list(t) for t in self.ones()], "bits": self.bitstring}

    @classmethod
    def from_json(cls, data: dict) -> "AlphaFunction":
        """Parse the alpha file format; ``bits`` and ``ones`` must agree when both given."""
        if not isinstance(data, dict):
            raise DomainError("alpha file must hold a JSON object")
        n = data.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise DomainError(f"field 'n' must be a positive integer, got {n!r}")
        if "ones" not in data and "bits" not in data:
            raise DomainError("alpha file needs 'ones' or 'bits'")
        from_ones = from_bits = None
        if "ones" in data:
            ones = data["ones"]
            if not isinstance(ones, list) or not all(isinstance(t, list) for t in ones):
                raise DomainError("field 'ones' must be a list of [i,j,k] triples")
            from_ones = cls.from_ones(n, [tuple(t) for t in ones])
        if "bits" in data:
            if not isinstance(data["bits"], str):
                raise DomainError("field 'bits' must be a string")
            from_bits = cls.from_bitstring(n, data["bits"])
        if from_ones is not None and from_bits is not None and from_ones != from_bits:
            raise DomainError("fields 'ones' and 'bits' disagree")
        return from_ones if from_ones is not None else from_bits


def alpha_eval(alpha: AlphaFunction, i: int, j: int, k: int) -> int:
    check_index(alpha.n, i, j, k)
    if i == j or j == k or i == k:
        return 0
    return alpha.bits[_rank_table(alpha.n)[(i, j, k)]]


def load_alpha(path: str) -> AlphaFunction:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"alpha file is not valid JSON: {exc}") from None
    return AlphaFunction.from_json(data)
