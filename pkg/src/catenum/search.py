"""Backtracking search over alpha bit assignments.

Bits are assigned in lexicographic triple order.  A constraint is checked
as soon as its last bit is assigned, so a partial assignment is extended
only while no decidable condition fails.  Optional ``ties`` restrict the
search to alphas fixed by a permutation (bit p must equal bit tie[p]).

Two engines walk the same tree: a pure Python generator (reference, used
for small n) and a numba kernel (counts, collects, or keeps only
orbit-canonical leaves).  Work is split by fixing a prefix of bits; the
subtree results are merged in prefix order, so output does not depend on
the number of workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numba
import numpy as np

from .action import all_perms, canonical_form, source_positions, stabilizer_size
from .conditions import constraint_ranks
from .core import AlphaFunction, DomainError, triple_count

COUNT, COLLECT, CANONICAL = 0, 1, 2


@dataclass(frozen=True)
class Constraints:
    m: int
    c1: tuple[tuple[int, ...], ...]  # c1[p]: earlier bits that may not be 1 together with p
    c2: tuple[tuple[tuple[int, int, int, int], ...], ...]  # quads whose last bit is p


@lru_cache(maxsize=None)
def compile_constraints(n: int) -> Constraints:
    m = triple_count(n)
    pairs, quads = constraint_ranks(n)
    c1: list[list[int]] = [[] for _ in range(m)]
    c2: list[list[tuple[int, int, int, int]]] = [[] for _ in range(m)]
    for a, b in pairs:
        c1[b].append(a)
    for q in quads:
        c2[max(q)].append(q)
    return Constraints(m, tuple(map(tuple, c1)), tuple(map(tuple, c2)))


def fixed_point_ties(n: int, sigma: Sequence[int]) -> tuple[int, ...]:
    """tie[p] = least position in the orbit of p under σ (p itself when minimal)."""
    m = triple_count(n)
    src = source_positions(n, tuple(sigma))
    ties = list(range(m))
    for p in range(m):
        q, least = src[p], p
        while q != p:
            least = min(least, q)
            q = src[q]
        ties[p] = least
    return tuple(ties)


def _consistent(cons: Constraints, bits: list[int], p: int) -> bool:
    if bits[p]:
        for a in cons.c1[p]:
            if bits[a]:
                return False
    for a, b, c, d in cons.c2[p]:
        if (bits[a] & bits[b]) != (bits[c] & bits[d]):
            return False
    return True


def iter_masks(
    n: int,
    ties: Sequence[int] | None = None,
    prefix: Sequence[int] = (),
    stop: int | None = None,
) -> Iterator[int]:
    """Yield integer encodings of every consistent assignment, in increasing order.

    Bits before ``len(prefix)`` are fixed; assignments stop at ``stop`` bits
    (default: all), which is how split prefixes are generated.
    """
    cons = compile_constraints(n)
    m = cons.m
    stop = m if stop is None else stop
    bits = list(prefix) + [0] * (m - len(prefix))
    start = len(prefix)
    for p in range(start):
        if ties is not None and bits[p] != bits[ties[p]]:
            return
        if not _consistent(cons, bits, p):
            return
    if start >= stop:
        yield _pack(bits, stop)
        return

    # explicit stack: choice[p] is the last value tried at depth p
    choice = [-1] * m
    p = start
    while p >= start:
        choice[p] += 1
        if choice[p] > 1:
            choice[p] = -1
            bits[p] = 0
            p -= 1
            continue
        if ties is not None and ties[p] != p:
            if choice[p] != bits[ties[p]]:
                continue
        bits[p] = choice[p]
        if not _consistent(cons, bits, p):
            continue
        if p == stop - 1:
            yield _pack(bits, stop)
            continue
        p += 1


def _pack(bits: Sequence[int], length: int) -> int:
    out = 0
    for b in bits[:length]:
        out = (out << 1) | b
    return out


def unpack(mask: int, length: int) -> list[int]:
    return [(mask >> (length - 1 - r)) & 1 for r in range(length)]


# --- numba engine -------------------------------------------------------------

@lru_cache(maxsize=None)
def _flat(n: int):
    cons = compile_constraints(n)
    m = cons.m
    c1o = np.zeros(m + 1, dtype=np.int64)
    c2o = np.zeros(m + 1, dtype=np.int64)
    for p in range(m):
        c1o[p + 1] = c1o[p] + len(cons.c1[p])
        c2o[p + 1] = c2o[p] + len(cons.c2[p])
    c1i = np.array([a for row in cons.c1 for a in row] or [0], dtype=np.int64)
    c2i = np.array([q for row in cons.c2 for q in row] or [(0, 0, 0, 0)], dtype=np.int64)
    return m, c1o, c1i, c2o, c2i


@lru_cache(maxsize=None)
def _perm_sources(n: int) -> np.ndarray:
    """Row s: source positions for the s-th non-identity permutation."""
    m = triple_count(n)
    rows = [source_positions(n, p) for p in all_perms(n)[1:]]
    return np.array(rows, dtype=np.int64).reshape(len(rows), m)


@numba.njit(cache=True)
def _canonical_stab(bits, psrc, m):
    """0 if some permutation gives a smaller bit string, else the stabilizer size."""
    stab = 1
    for s in range(psrc.shape[0]):
        cmp = 0
        for r in range(m):
            x = bits[psrc[s, r]]
            if x != bits[r]:
                cmp = 1 if x > bits[r] else -1
                break
        if cmp < 0:
            return 0
        if cmp == 0:
            stab += 1
    return stab


@numba.njit(cache=True)
def _pack_bits(bits, m):
    mask = np.uint64(0)
    for r in range(m):
        mask = (mask << np.uint64(1)) | np.uint64(bits[r])
    return mask


@numba.njit(cache=True)
def _dfs(m, c1o, c1i, c2o, c2i, ties, start, bits, mode, psrc, out_mask, out_stab):
    """Walk the subtree below the fixed prefix ``bits[:start]`` (start < m).

    Returns (leaves, stored).  COLLECT stores every leaf mask; CANONICAL
    stores only leaves that are least in their orbit, with stabilizer size.
    """
    leaves = 0
    stored = 0
    cap = out_mask.shape[0]
    choice = np.full(m, -1, dtype=np.int8)
    p = start
    while p >= start:
        choice[p] += 1
        if choice[p] > 1:
            choice[p] = -1
            bits[p] = 0
            p -= 1
            continue
        if ties[p] != p and choice[p] != bits[ties[p]]:
            continue
        bits[p] = choice[p]
        ok = True
        if bits[p] == 1:
            for x in range(c1o[p], c1o[p + 1]):
                if bits[c1i[x]] == 1:
                    ok = False
                    break
        if ok:
            for x in range(c2o[p], c2o[p + 1]):
                if (bits[c2i[x, 0]] & bits[c2i[x, 1]]) != (bits[c2i[x, 2]] & bits[c2i[x, 3]]):
                    ok = False
                    break
        if not ok:
            continue
        if p < m - 1:
            p += 1
            continue
        leaves += 1
        if mode == 1:
            if stored < cap:
                out_mask[stored] = _pack_bits(bits, m)
            stored += 1
        elif mode == 2:
            stab = _canonical_stab(bits, psrc, m)
            if stab > 0:
                if stored < cap:
                    out_mask[stored] = _pack_bits(bits, m)
                    out_stab[stored] = stab
                stored += 1
    return leaves, stored


@dataclass
class SearchResult:
    leaves: int
    masks: list[int] | None = None  # sorted; COLLECT and CANONICAL
    stabilizers: list[int] | None = None  # CANONICAL only, aligned with masks


def _run_prefix(args) -> SearchResult:
    n, ties, prefix, mode, capacity = args
    m, c1o, c1i, c2o, c2i = _flat(n)
    if len(prefix) >= m:
        return _complete_prefix(n, prefix, mode)
    bits = np.zeros(m, dtype=np.int8)
    bits[: len(prefix)] = prefix
    tie_arr = np.array(ties if ties is not None else range(m), dtype=np.int64)
    psrc = _perm_sources(n) if mode == CANONICAL else np.zeros((0, m), dtype=np.int64)
    cap = capacity if mode != COUNT else 0
    out_mask = np.zeros(cap, dtype=np.uint64)
    out_stab = np.zeros(cap, dtype=np.int64)
    leaves, stored = _dfs(m, c1o, c1i, c2o, c2i, tie_arr, len(prefix), bits, mode, psrc,
                          out_mask, out_stab)
    if mode == COUNT:
        return SearchResult(int(leaves))
    if stored > cap:
        raise OverflowError(f"subtree produced {stored} results, capacity {cap}")
    masks = [int(x) for x in out_mask[:stored]]
    stabs = [int(x) for x in out_stab[:stored]] if mode == CANONICAL else None
    return SearchResult(int(leaves), masks, stabs)


def _complete_prefix(n: int, prefix: Sequence[int], mode: int) -> SearchResult:
    # split_prefixes only yields consistent assignments, so this is one leaf
    mask = _pack(prefix, len(prefix))
    if mode == COUNT:
        return SearchResult(1)
    if mode == COLLECT:
        return SearchResult(1, [mask])
    alpha = AlphaFunction.from_mask(n, mask)
    if canonical_form(alpha) != alpha:
        return SearchResult(1, [], [])
    return SearchResult(1, [mask], [stabilizer_size(alpha)])


def split_prefixes(n: int, ties: Sequence[int] | None, depth: int) -> list[tuple[int, ...]]:
    m = triple_count(n)
    depth = min(depth, m)
    return [tuple(unpack(x, depth)) for x in iter_masks(n, ties, stop=depth)]


def run_search(
    n: int,
    mode: int = COUNT,
    jobs: int = 1,
    ties: Sequence[int] | None = None,
    capacity: int = 10**6,
    split_depth: int = 12,
) -> SearchResult:
    """Run the numba engine, partitioned by prefixes, merged deterministically."""
    m = triple_count(n)
    if mode != COUNT and m > 63:
        raise DomainError("collecting alphas requires n <= 5 (64-bit masks)")
    if jobs < 1:
        raise DomainError("jobs must be >= 1")
    prefixes = split_prefixes(n, ties, split_depth)
    tasks = [(n, tuple(ties) if ties is not None else None, pre, mode, capacity)
             for pre in prefixes]
    if jobs == 1 or len(tasks) <= 1:
        parts = [_run_prefix(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_prefix, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    total = sum(p.leaves for p in parts)
    if mode == COUNT:
        return SearchResult(total)
    masks: list[int] = []
    stabs: list[int] = []
    for part in parts:
        masks.extend(part.masks)
        if part.stabilizers is not None:
            stabs.extend(part.stabilizers)
        if len(masks) > capacity:
            raise OverflowError(f"more than {capacity} results")
    # prefixes are generated in increasing order and each subtree is walked in
    # increasing order, so the concatenation is already sorted
    return SearchResult(total, masks, stabs if mode == CANONICAL else None)
