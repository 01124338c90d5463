"""The relabeling action of S_n on alpha functions, orbits and canonical forms.

A permutation is a tuple ``sigma`` of images, ``sigma[x - 1] = σ(x)``.
The action is (σ·α)(i, j, k) = α(σ⁻¹(i), σ⁻¹(j), σ⁻¹(k)).
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import permutations
from math import factorial

from .core import AlphaFunction, DomainError, distinct_triples, triple_rank

Perm = tuple[int, ...]


def check_perm(n: int, sigma: Perm) -> None:
    if len(sigma) != n or sorted(sigma) != list(range(1, n + 1)):
        raise DomainError(f"{sigma!r} is not a permutation of 1..{n}")


def inverse(sigma: Perm) -> Perm:
    inv = [0] * len(sigma)
    for x, y in enumerate(sigma, start=1):
        inv[y - 1] = x
    return tuple(inv)


def compose_perms(sigma: Perm, tau: Perm) -> Perm:
    """σ∘τ, i.e. x ↦ σ(τ(x))."""
    return tuple(sigma[t - 1] for t in tau)


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[Perm, ...]:
    return tuple(permutations(range(1, n + 1)))


@lru_cache(maxsize=None)
def source_positions(n: int, sigma: Perm) -> tuple[int, ...]:
    """``src[r]`` = rank of σ⁻¹ applied to triple r, so (σ·α).bits[r] = α.bits[src[r]]."""
    inv = inverse(sigma)
    return tuple(
        triple_rank(n, inv[i - 1], inv[j - 1], inv[k - 1]) for i, j, k in distinct_triples(n)
    )


def act(sigma: Perm, alpha: AlphaFunction) -> AlphaFunction:
    check_perm(alpha.n, tuple(sigma))
    src = source_positions(alpha.n, tuple(sigma))
    return AlphaFunction(alpha.n, tuple(alpha.bits[s] for s in src))


def canonical_form(alpha: AlphaFunction) -> AlphaFunction:
    """Orbit representative with the lexicographically least bit string."""
    n, bits = alpha.n, alpha.bits
    best = min(tuple(bits[s] for s in source_positions(n, p)) for p in all_perms(n))
    return AlphaFunction(n, best)


def stabilizer_size(alpha: AlphaFunction) -> int:
    n, bits = alpha.n, alpha.bits
    return sum(
        all(bits[s] == b for s, b in zip(source_positions(n, p), bits)) for p in all_perms(n)
    )


def orbit_size(alpha: AlphaFunction) -> int:
    return factorial(alpha.n) // stabilizer_size(alpha)


def cycle_type(sigma: Perm) -> tuple[int, ...]:
    seen, lengths = set(), []
    for start in range(1, len(sigma) + 1):
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = sigma[x - 1]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


@lru_cache(maxsize=None)
def conjugacy_classes(n: int) -> tuple[tuple[Perm, int], ...]:
    """One representative per cycle type with the class size, in a fixed order."""
    sizes = Counter()
    reps: dict[tuple[int, ...], Perm] = {}
    for p in all_perms(n):
        ct = cycle_type(p)
        sizes[ct] += 1
        reps.setdefault(ct, p)
    return tuple((reps[ct], sizes[ct]) for ct in sorted(reps, reverse=True))
