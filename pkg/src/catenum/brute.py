"""Brute-force census of every composition table on two objects.

Each of the four hom-sets has two morphisms.  On the diagonal the first one
is declared the identity; nothing else is assumed.  Products involving an
identity are forced, which leaves 18 products of non-identity composable
pairs, each with 2 candidate values: 2^18 raw tables.  Associativity is
tested for all of them at once with numpy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .composition import build_table
from .core import AlphaFunction, Morphism

# morphism ids: 2 * hom_index + slot, hom_index over (1,1), (1,2), (2,1), (2,2)
HOMS = ((1, 1), (1, 2), (2, 1), (2, 2))
SIZE = 8


def _hom_index(i: int, j: int) -> int:
    return HOMS.index((i, j))


def _src_tgt(x: int) -> tuple[int, int]:
    return HOMS[x // 2]


def _is_identity(x: int) -> bool:
    i, j = _src_tgt(x)
    return i == j and x % 2 == 0


def composable_pairs() -> list[tuple[int, int]]:
    """(g, f) with target(f) == source(g)."""
    return [(g, f) for g, f in product(range(SIZE), repeat=2) if _src_tgt(f)[1] == _src_tgt(g)[0]]


def free_pairs() -> list[tuple[int, int]]:
    return [(g, f) for g, f in composable_pairs() if not _is_identity(g) and not _is_identity(f)]


@dataclass
class TwoObjectCensus:
    raw_tables: int
    associative: int
    reduced: int
    non_reduced: int
    reduced_classes: int
    representatives: list[dict[tuple[int, int], int]] = field(default_factory=list)
    matches_expected: bool = False

    def to_json(self) -> dict:
        return {
            "raw_tables": self.raw_tables,
            "associative": self.associative,
            "reduced": self.reduced,
            "non_reduced": self.non_reduced,
            "reduced_classes": self.reduced_classes,
            "matches_expected": self.matches_expected,
        }


def _tables(codes: np.ndarray) -> np.ndarray:
    """Dense (len(codes), 8, 8) product tables; -1 where not composable."""
    free = free_pairs()
    tab = np.full((len(codes), SIZE, SIZE), -1, dtype=np.int8)
    for g, f in composable_pairs():
        if _is_identity(g):
            tab[:, g, f] = f
        elif _is_identity(f):
            tab[:, g, f] = g
    for bit, (g, f) in enumerate(free):
        i, k = _src_tgt(f)[0], _src_tgt(g)[1]
        base = 2 * _hom_index(i, k)
        tab[:, g, f] = base + ((codes >> bit) & 1)
    return tab


def _associative(tab: np.ndarray) -> np.ndarray:
    rows = np.arange(len(tab))
    ok = np.ones(len(tab), dtype=bool)
    pairs = set(composable_pairs())
    for g, f in sorted(pairs):
        gf = tab[:, g, f]
        for h in range(SIZE):
            if (h, g) not in pairs:
                continue
            hg = tab[:, h, g]
            ok &= tab[rows, h, gf] == tab[rows, hg, f]
    return ok


def _reduced(tab: np.ndarray) -> np.ndarray:
    """No pair f: 1→2, g: 2→1 with g∘f = id_1 and f∘g = id_2."""
    iso = np.zeros(len(tab), dtype=bool)
    id1, id2 = 2 * _hom_index(1, 1), 2 * _hom_index(2, 2)
    for f in (2, 3):
        for g in (4, 5):
            iso |= (tab[:, g, f] == id1) & (tab[:, f, g] == id2)
    return ~iso


def relabelings() -> list[list[int]]:
    """Isomorphisms of the underlying graph: swap objects, swap within hom-sets.

    Identities are fixed; the non-identity endomorphism of each object is
    carried to that of its image.  Returns permutations of morphism ids.
    """
    out = []
    for swap_objects, s12, s21 in product((False, True), repeat=3):
        perm = [0] * SIZE
        for x in range(SIZE):
            i, j = _src_tgt(x)
            slot = x % 2
            if i != j:
                if (i, j) == (1, 2) and s12 or (i, j) == (2, 1) and s21:
                    slot ^= 1
            if swap_objects:
                i, j = 3 - i, 3 - j
            perm[x] = 2 * _hom_index(i, j) + slot
        out.append(perm)
    return out


def _serialize(table: dict[tuple[int, int], int]) -> tuple[int, ...]:
    return tuple(table[p] for p in composable_pairs())


def _relabel(table: dict[tuple[int, int], int], perm: list[int]) -> dict[tuple[int, int], int]:
    return {(perm[g], perm[f]): perm[gf] for (g, f), gf in table.items()}


def canonical_table(table: dict[tuple[int, int], int]) -> tuple[int, ...]:
    return min(_serialize(_relabel(table, p)) for p in relabelings())


def expected_table() -> dict[tuple[int, int], int]:
    """build_table(n=2, empty alpha) in raw ids (slot 0 = E or F, slot 1 = F or G)."""
    table = build_table(AlphaFunction.zero(2))

    def raw(m: Morphism) -> int:
        slot = 0 if m.kind == "E" or (m.kind == "F" and m.source != m.target) else 1
        return 2 * _hom_index(m.source, m.target) + slot

    return {(raw(g), raw(f)): raw(gf) for (g, f), gf in table.compose_map.items()}


def named_products(table: dict[tuple[int, int], int]) -> dict[tuple[Morphism, Morphism], Morphism]:
    """Rename a raw table with E/F/G names.

    F^{i,i} is the non-identity endomorphism; for i != j, F^{i,j} is the
    common value of F^{j,j}∘g and g∘F^{i,i} over g in Hom(i, j), and G^{i,j}
    the other morphism.  Raises ValueError when that value is not unique.
    """
    names: dict[int, Morphism] = {}
    for i, j in HOMS:
        if i == j:
            names[2 * _hom_index(i, i)] = Morphism("E", i, i)
            names[2 * _hom_index(i, i) + 1] = Morphism("F", i, i)
    for i, j in HOMS:
        if i == j:
            continue
        fii, fjj = 2 * _hom_index(i, i) + 1, 2 * _hom_index(j, j) + 1
        base = 2 * _hom_index(i, j)
        values = {table[(fjj, g)] for g in (base, base + 1)} | {table[(g, fii)] for g in (base, base + 1)}
        if len(values) != 1:
            raise ValueError(f"no absorbing morphism in Hom({i},{j})")
        (absorbing,) = values
        names[absorbing] = Morphism("F", i, j)
        names[base + (1 - (absorbing - base))] = Morphism("G", i, j)
    return {(names[g], names[f]): names[gf] for (g, f), gf in table.items()}


def brute_force_two_objects(chunk: int = 1 << 16) -> TwoObjectCensus:
    nfree = len(free_pairs())
    total = 1 << nfree
    associative = reduced = 0
    survivors: list[dict[tuple[int, int], int]] = []
    pairs = composable_pairs()
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        tab = _tables(codes)
        assoc = _associative(tab)
        red = assoc & _reduced(tab)
        associative += int(assoc.sum())
        reduced += int(red.sum())
        for row in np.flatnonzero(red):
            survivors.append({(g, f): int(tab[row, g, f]) for g, f in pairs})
    classes: dict[tuple[int, ...], dict] = {}
    for t in survivors:
        classes.setdefault(canonical_table(t), t)
    target = canonical_table(expected_table())
    expected = build_table(AlphaFunction.zero(2)).compose_map
    census = TwoObjectCensus(
        raw_tables=total,
        associative=associative,
        reduced=reduced,
        non_reduced=associative - reduced,
        reduced_classes=len(classes),
        representatives=[classes[k] for k in sorted(classes)],
        matches_expected=bool(survivors)
        and all(canonical_table(t) == target and named_products(t) == expected for t in survivors),
    )
    return census
