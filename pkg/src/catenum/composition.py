"""Composition tables of the categories determined by alpha functions.

``compose`` encodes the multiplication rules: identities are units, F is
absorbing, and G∘G on a distinct triple is decided by alpha.
``check_axioms`` is the independent oracle: it only looks at the finished
table and tests units, associativity and reducedness exhaustively.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numba
import numpy as np

from .core import (
    AlphaFunction,
    DomainError,
    Morphism,
    alpha_eval,
    all_morphisms,
    check_index,
    triple_count,
    triple_rank,
)


class CompositionError(ValueError):
    """The pair of morphisms is not composable."""


def compose(alpha: AlphaFunction, g: Morphism, f: Morphism) -> Morphism:
    """Return g∘f, for f: i→j and g: j→k."""
    n = alpha.n
    check_index(n, f.source, f.target, g.source, g.target)
    if f.target != g.source:
        raise CompositionError(f"cannot compose {g} after {f}")
    i, j, k = f.source, f.target, g.target
    if g.kind == "E":
        return f
    if f.kind == "E":
        return g
    if g.kind == "F" or f.kind == "F":
        return Morphism("F", i, k)
    if alpha_eval(alpha, i, j, k):
        return Morphism("G", i, k)
    return Morphism("F", i, k)


@dataclass(frozen=True)
class CategoryTable:
    n: int
    compose_map: dict[tuple[Morphism, Morphism], Morphism] = field(hash=False)

    @property
    def morphisms(self) -> list[Morphism]:
        return all_morphisms(self.n)

    def __call__(self, g: Morphism, f: Morphism) -> Morphism:
        try:
            return self.compose_map[(g, f)]
        except KeyError:
            raise CompositionError(f"no product recorded for {g} after {f}") from None

    def rows(self) -> list[tuple[str, str, str]]:
        """(g, f, g∘f) renderings sorted lexicographically by (g, f)."""
        return sorted((str(g), str(f), str(gf)) for (g, f), gf in self.compose_map.items())

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["g", "f", "gf"])
        writer.writerows(self.rows())
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [{"g": g, "f": f, "gf": gf} for g, f, gf in self.rows()]}


def build_table(alpha: AlphaFunction) -> CategoryTable:
    mors = all_morphisms(alpha.n)
    products = {
        (g, f): compose(alpha, g, f) for g, f in product(mors, mors) if f.target == g.source
    }
    return CategoryTable(alpha.n, products)


@dataclass
class AxiomReport:
    identity_ok: bool
    associative_ok: bool
    reduced_ok: bool
    violations: list[tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.identity_ok and self.associative_ok and self.reduced_ok

    def to_json(self) -> dict:
        return {
            "identity_ok": self.identity_ok,
            "associative_ok": self.associative_ok,
            "reduced_ok": self.reduced_ok,
            "violations": [[kind, *map(str, w)] for kind, *w in self.violations],
        }


def check_axioms(table: CategoryTable, first_only: bool = False) -> AxiomReport:
    """Exhaustively check identities, associativity and reducedness.

    Each violation is ``(kind, *witness)`` with kind one of ``identity``,
    ``associativity`` (witness h, g, f) or ``isomorphism`` (witness f, g).
    """
    n = table.n
    mors = all_morphisms(n)
    index = {m: x for x, m in enumerate(mors)}
    by_hom = {(i, j): [] for i in range(1, n + 1) for j in range(1, n + 1)}
    for m in mors:
        by_hom[(m.source, m.target)].append(index[m])
    # dense product table; -1 marks non-composable pairs
    size = len(mors)
    prod = [[-1] * size for _ in range(size)]
    for (g, f), gf in table.compose_map.items():
        if f.target != g.source or (gf.source, gf.target) != (f.source, g.target):
            raise CompositionError(f"ill-typed product {g} ∘ {f} = {gf}")
        prod[index[g]][index[f]] = index[gf]
    for i, j, k in product(range(1, n + 1), repeat=3):
        for g in by_hom[(j, k)]:
            for f in by_hom[(i, j)]:
                if prod[g][f] < 0:
                    raise CompositionError(f"table is missing {mors[g]} ∘ {mors[f]}")

    violations: list[tuple] = []
    identity_ok = associative_ok = reduced_ok = True
    ident = {i: index[Morphism("E", i, i)] for i in range(1, n + 1)}

    for x, m in enumerate(mors):
        if prod[ident[m.target]][x] != x or prod[x][ident[m.source]] != x:
            identity_ok = False
            violations.append(("identity", m))
            if first_only:
                return AxiomReport(identity_ok, associative_ok, reduced_ok, violations)

    for i, j, k, l in product(range(1, n + 1), repeat=4):
        for f in by_hom[(i, j)]:
            for g in by_hom[(j, k)]:
                gf = prod[g][f]
                for h in by_hom[(k, l)]:
                    if prod[prod[h][g]][f] != prod[h][gf]:
                        associative_ok = False
                        violations.append(("associativity", mors[h], mors[g], mors[f]))
                        if first_only:
                            return AxiomReport(identity_ok, associative_ok, reduced_ok, violations)

    for i, j in product(range(1, n + 1), repeat=2):
        if i == j:
            continue
        for f in by_hom[(i, j)]:
            for g in by_hom[(j, i)]:
                if prod[g][f] == ident[i] and prod[f][g] == ident[j]:
                    reduced_ok = False
                    violations.append(("isomorphism", mors[f], mors[g]))
                    if first_only:
                        return AxiomReport(identity_ok, associative_ok, reduced_ok, violations)

    return AxiomReport(identity_ok, associative_ok, reduced_ok, violations)


# --- batched oracle -----------------------------------------------------------

@lru_cache(maxsize=None)
def _batch_layout(n: int):
    """Per composable pair: result when the governing alpha bit is 0 and 1.

    Derived by calling ``compose`` on the all-zero and all-one alpha.
    """
    mors = all_morphisms(n)
    index = {m: x for x, m in enumerate(mors)}
    size = len(mors)
    zero = AlphaFunction.zero(n)
    ones = AlphaFunction(n, (1,) * triple_count(n))
    r0 = np.full((size, size), -1, dtype=np.int16)
    r1 = np.full((size, size), -1, dtype=np.int16)
    bit = np.full((size, size), -1, dtype=np.int32)
    for g, f in product(mors, mors):
        if f.target != g.source:
            continue
        a, b = index[compose(zero, g, f)], index[compose(ones, g, f)]
        r0[index[g], index[f]], r1[index[g], index[f]] = a, b
        if a != b:
            bit[index[g], index[f]] = triple_rank(n, f.source, f.target, g.target)
    triples = np.array(
        [
            (index[h], index[g], index[f])
            for f, g, h in product(mors, mors, mors)
            if f.target == g.source and g.target == h.source
        ],
        dtype=np.int64,
    )
    return size, r0, r1, bit, triples


@numba.njit(cache=True)
def _assoc_kernel(masks, m, size, r0, r1, gov, triples, out):
    table = np.empty((size, size), dtype=np.int32)
    for b in range(masks.shape[0]):
        mask = masks[b]
        for g in range(size):
            for f in range(size):
                t = gov[g, f]
                if t >= 0 and (mask >> np.uint64(m - 1 - t)) & np.uint64(1):
                    table[g, f] = r1[g, f]
                else:
                    table[g, f] = r0[g, f]
        ok = True
        for x in range(triples.shape[0]):
            h, g, f = triples[x, 0], triples[x, 1], triples[x, 2]
            if table[h, table[g, f]] != table[table[h, g], f]:
                ok = False
                break
        out[b] = ok


def associative_mask(n: int, masks: np.ndarray) -> np.ndarray:
    """Batched associativity test of build_table(alpha) for many alphas.

    ``masks`` holds integer encodings (rank 0 = most significant bit).
    Returns a boolean array, True where every composable triple associates.
    """
    m = triple_count(n)
    if m > 64:
        raise DomainError("batched oracle supports n <= 5")
    masks = np.ascontiguousarray(masks, dtype=np.uint64)
    size, r0, r1, gov, triples = _batch_layout(n)
    out = np.empty(len(masks), dtype=np.bool_)
    _assoc_kernel(masks, m, size, r0.astype(np.int32), r1.astype(np.int32), gov, triples, out)
    return out
