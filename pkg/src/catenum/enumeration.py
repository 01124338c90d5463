"""Ordered and reduced censuses of valid alpha functions.

The ordered census counts valid alphas, one per reduced category with
labeled objects.  The reduced census groups them into S_n orbits.  Orbit
counts are cross-checked by Burnside's lemma, computed independently from
fixed-point counts per conjugacy class.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, fields, replace
from math import factorial

import numpy as np

from .action import canonical_form, conjugacy_classes
from .composition import build_table, check_axioms
from .conditions import valid_mask
from .core import AlphaFunction, DomainError, Triple, triple_count
from .search import CANONICAL, COLLECT, COUNT, fixed_point_ties, iter_masks, run_search

METHODS = ("backtrack", "exhaustive")


class CapabilityError(RuntimeError):
    """The request exceeds a configured enumeration budget."""


class ClassificationError(RuntimeError):
    """The n=3 census does not have the expected five-class structure."""


@dataclass(frozen=True)
class Budget:
    exhaustive_max_n: int = 4
    backtrack_max_n: int = 5
    reduced_max_n: int = 5
    burnside_max_n: int = 5
    reduced_work: int = 10**10  # cap on n! * ordered count
    store_max: int = 10**6  # alphas or classes held in memory
    python_engine_max_n: int = 4

    @classmethod
    def from_env(cls, env: dict | None = None) -> "Budget":
        """Defaults, overridden by ``CATENUM_BUDGET="key=value,key=value"``."""
        raw = (os.environ if env is None else env).get("CATENUM_BUDGET", "").strip()
        if not raw:
            return cls()
        names = {f.name for f in fields(cls)}
        overrides = {}
        for item in raw.split(","):
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in names:
                raise DomainError(f"CATENUM_BUDGET: unknown or malformed entry {item!r}")
            try:
                overrides[key] = int(float(value)) if "e" in value.lower() else int(value)
            except ValueError:
                raise DomainError(f"CATENUM_BUDGET: {key} needs an integer, got {value!r}") from None
        return replace(cls(), **overrides)


@dataclass
class OrderedCensus:
    n: int
    count: int
    method: str
    alphas: list[AlphaFunction] | None = None
    certified: bool = False
    seed: int | None = None


@dataclass
class ReducedCensus:
    n: int
    count: int
    classes: list[tuple[AlphaFunction, int]]  # (canonical alpha, orbit size)
    ordered_count: int


def _engine(n: int, engine: str, budget: Budget, jobs: int = 1) -> str:
    """The pure Python walker for small n on one worker, numba otherwise."""
    if engine == "auto":
        return "python" if n <= budget.python_engine_max_n and jobs == 1 else "numba"
    if engine not in ("python", "numba"):
        raise DomainError(f"unknown engine {engine!r}")
    return engine


def _exhaustive_masks(n: int, chunk: int = 1 << 20) -> list[int]:
    m = triple_count(n)
    found: list[int] = []
    for start in range(0, 1 << m, chunk):
        block = np.arange(start, min(start + chunk, 1 << m), dtype=np.uint64)
        found.extend(int(x) for x in block[valid_mask(n, block)])
    return found


def enumerate_ordered(
    n: int,
    method: str = "backtrack",
    certify: bool = False,
    *,
    keep_alphas: bool | None = None,
    jobs: int = 1,
    seed: int = 0,
    reject_sample: int = 1000,
    budget: Budget | None = None,
    engine: str = "auto",
) -> OrderedCensus:
    """Count valid alphas on n objects.

    ``keep_alphas`` defaults to True when the census fits in memory cheaply
    (n <= 4).  With ``certify`` every survivor is rebuilt as a table and must
    pass ``check_axioms``; a seeded sample of rejected alphas must fail it.
    """
    budget = budget or Budget.from_env()
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}")
    if keep_alphas is None:
        keep_alphas = certify or n <= budget.python_engine_max_n

    if method == "exhaustive":
        if n > budget.exhaustive_max_n:
            raise CapabilityError(
                f"exhaustive scan limited to n <= {budget.exhaustive_max_n} (2^{triple_count(n)} alphas)"
            )
        masks: list[int] | None = _exhaustive_masks(n)
        count = len(masks)
    else:
        if n > budget.backtrack_max_n:
            raise CapabilityError(f"backtracking limited to n <= {budget.backtrack_max_n}")
        if _engine(n, engine, budget, jobs) == "python":
            masks = list(iter_masks(n))
            count = len(masks)
        elif keep_alphas:
            try:
                result = run_search(n, COLLECT, jobs=jobs, capacity=budget.store_max)
            except OverflowError:
                raise CapabilityError(f"more than store_max={budget.store_max} alphas") from None
            masks, count = result.masks, result.leaves
        else:
            masks, count = None, run_search(n, COUNT, jobs=jobs).leaves

    if keep_alphas and count > budget.store_max:
        raise CapabilityError(f"{count} alphas exceed store_max={budget.store_max}")
    alphas = [AlphaFunction.from_mask(n, x) for x in masks] if keep_alphas else None
    census = OrderedCensus(n, count, method, alphas, seed=seed if certify else None)
    if certify:
        _certify(census, seed, reject_sample)
    return census


def _certify(census: OrderedCensus, seed: int, reject_sample: int) -> None:
    n = census.n
    for alpha in census.alphas:
        report = check_axioms(build_table(alpha), first_only=True)
        if not report.ok:
            raise AssertionError(f"valid alpha {alpha.bitstring} fails the axioms: {report.violations}")
    m = triple_count(n)
    valid = {a.mask for a in census.alphas}
    total = 1 << m
    if total - len(valid) <= reject_sample:
        rejects = [x for x in range(total) if x not in valid]
    else:
        rng = np.random.default_rng(seed)
        rejects = []
        while len(rejects) < reject_sample:
            x = int(rng.integers(0, total))
            if x not in valid:
                rejects.append(x)
    for x in rejects:
        alpha = AlphaFunction.from_mask(n, x)
        if check_axioms(build_table(alpha), first_only=True).associative_ok:
            raise AssertionError(f"rejected alpha {alpha.bitstring} is associative")
    census.certified = True


def _check_reduced_work(n: int, ordered: int, budget: Budget) -> None:
    work = factorial(n) * ordered
    if work > budget.reduced_work:
        raise CapabilityError(
            f"n! * count = {work} exceeds reduced_work={budget.reduced_work}; partial results discarded"
        )


def enumerate_reduced(
    n: int,
    method: str = "backtrack",
    *,
    jobs: int = 1,
    budget: Budget | None = None,
    engine: str = "auto",
) -> ReducedCensus:
    """Group the ordered census into S_n orbits keyed by canonical form."""
    budget = budget or Budget.from_env()
    if n > budget.reduced_max_n:
        raise CapabilityError(f"reduced census limited to n <= {budget.reduced_max_n}")
    if method == "exhaustive" or _engine(n, engine, budget, jobs) == "python":
        census = enumerate_ordered(n, method, keep_alphas=True, budget=budget, engine="python")
        _check_reduced_work(n, census.count, budget)
        groups = Counter(canonical_form(a) for a in census.alphas)
        classes = list(groups.items())
        ordered = census.count
    else:
        if method not in METHODS:
            raise DomainError(f"unknown method {method!r}")
        try:
            result = run_search(n, CANONICAL, jobs=jobs, capacity=budget.store_max)
        except OverflowError:
            raise CapabilityError(f"more than store_max={budget.store_max} classes") from None
        _check_reduced_work(n, result.leaves, budget)
        fact = factorial(n)
        classes = [
            (AlphaFunction.from_mask(n, x), fact // s)
            for x, s in zip(result.masks, result.stabilizers)
        ]
        ordered = result.leaves
    classes.sort(key=lambda c: (c[1], c[0].bitstring))
    return ReducedCensus(n, len(classes), classes, ordered)


def fixed_count(n: int, sigma, *, jobs: int = 1, engine: str = "python") -> int:
    """Number of valid alphas with act(sigma, alpha) == alpha."""
    ties = fixed_point_ties(n, sigma)
    if engine == "python":
        return sum(1 for _ in iter_masks(n, ties))
    return run_search(n, COUNT, jobs=jobs, ties=ties).leaves


def burnside_count(
    n: int, *, jobs: int = 1, budget: Budget | None = None, engine: str = "auto"
) -> int:
    """Orbit count (1/n!) * sum over sigma of #fixed valid alphas."""
    budget = budget or Budget.from_env()
    if n > budget.burnside_max_n:
        raise CapabilityError(f"Burnside count limited to n <= {budget.burnside_max_n}")
    eng = _engine(n, engine, budget, jobs)
    total = sum(size * fixed_count(n, rep, jobs=jobs, engine=eng) for rep, size in conjugacy_classes(n))
    orbits, rem = divmod(total, factorial(n))
    if rem:
        raise ArithmeticError(f"Burnside sum {total} not divisible by {n}!")
    return orbits


# --- n = 3 classification -----------------------------------------------------

@dataclass(frozen=True)
class LabeledClass:
    label: str
    canonical: AlphaFunction
    orbit_size: int
    support: tuple[Triple, ...]

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "orbit_size": self.orbit_size,
            "canonical_bits": self.canonical.bitstring,
            "support": [list(t) for t in self.support],
        }


def classify_n3(census: ReducedCensus) -> list[LabeledClass]:
    """Label the five n=3 classes by orbit size and support size."""
    if census.n != 3:
        raise ClassificationError(f"classification needs n=3, got n={census.n}")
    shape_to_label = {(1, 0): "A1", (6, 1): "A2", (3, 2): "A3", (6, 2): "A4", (2, 3): "A5"}
    labeled = {}
    for alpha, size in census.classes:
        key = (size, sum(alpha.bits))
        label = shape_to_label.get(key)
        if label is None or label in labeled:
            raise ClassificationError(f"unexpected class shape (orbit, support) = {key}")
        labeled[label] = LabeledClass(label, alpha, size, tuple(alpha.ones()))
    if len(labeled) != 5:
        raise ClassificationError(f"expected 5 classes, found {len(labeled)}")
    return [labeled[k] for k in sorted(labeled)]
