from itertools import product
from math import factorial

import pytest

from catenum.action import act, all_perms, canonical_form
from catenum.conditions import alpha_check
from catenum.core import AlphaFunction, DomainError
from catenum.enumeration import (
    Budget,
    CapabilityError,
    ClassificationError,
    ReducedCensus,
    burnside_count,
    classify_n3,
    enumerate_ordered,
    enumerate_reduced,
)


@pytest.mark.parametrize("n, ordered, reduced", [(1, 1, 1), (2, 1, 1), (3, 18, 5)])
def test_small_counts(n, ordered, reduced):
    assert enumerate_ordered(n).count == ordered
    assert enumerate_ordered(n, "exhaustive").count == ordered
    assert enumerate_reduced(n).count == reduced
    assert burnside_count(n) == reduced


def test_n3_orbit_sizes():
    sizes = sorted(size for _, size in enumerate_reduced(3).classes)
    assert sizes == [1, 2, 3, 6, 6]


def test_n3_independent_sets_of_conflict_graph():
    # condition 1 forbids pairs along a 6-cycle of triples; n=3 has no quadruples
    triples = [t for t in product(range(1, 4), repeat=3) if len(set(t)) == 3]
    count = 0
    for bits in product((0, 1), repeat=6):
        ones = [t for t, b in zip(triples, bits) if b]
        if all((i, k, j) not in ones and (j, i, k) not in ones for i, j, k in ones):
            count += 1
    assert count == 18


def test_n4_regressions():
    # values pinned from the exhaustive and backtracking runs
    assert enumerate_ordered(4).count == 6278
    assert enumerate_ordered(4, "exhaustive").count == 6278
    red = enumerate_reduced(4)
    assert red.count == 289
    assert red.ordered_count == 6278
    assert sum(size for _, size in red.classes) == 6278
    assert burnside_count(4) == 289


def test_n4_engines_agree():
    py = enumerate_reduced(4, engine="python")
    nb = enumerate_reduced(4, engine="numba")
    assert [(a.mask, s) for a, s in py.classes] == [(a.mask, s) for a, s in nb.classes]
    assert burnside_count(4, engine="numba") == 289


def test_orbit_sizes_divide_factorial_and_are_canonical():
    for n in (3, 4):
        for alpha, size in enumerate_reduced(n).classes:
            assert factorial(n) % size == 0
            assert canonical_form(alpha) == alpha
            assert len({act(p, alpha) for p in all_perms(n)}) == size


def test_classify_n3_labels():
    classes = classify_n3(enumerate_reduced(3))
    by_label = {c.label: c for c in classes}
    assert [c.label for c in classes] == ["A1", "A2", "A3", "A4", "A5"]
    assert by_label["A1"].support == ()
    assert (by_label["A2"].orbit_size, len(by_label["A2"].support)) == (6, 1)
    assert (by_label["A3"].orbit_size, len(by_label["A3"].support)) == (3, 2)
    assert (by_label["A4"].orbit_size, len(by_label["A4"].support)) == (6, 2)
    assert (by_label["A5"].orbit_size, len(by_label["A5"].support)) == (2, 3)


@pytest.mark.parametrize(
    "ones, label",
    [
        ([], "A1"),
        ([(1, 2, 3)], "A2"),
        ([(1, 2, 3), (3, 2, 1)], "A3"),
        ([(1, 2, 3), (2, 3, 1)], "A4"),
    ],
)
def test_known_examples_land_in_their_class(ones, label):
    by_label = {c.label: c.canonical for c in classify_n3(enumerate_reduced(3))}
    alpha = AlphaFunction.from_ones(3, ones)
    assert alpha_check(alpha).valid
    assert canonical_form(alpha) == by_label[label]


def test_three_element_support_class():
    # the only valid 3-element supports are the two cyclic ones
    a5 = AlphaFunction.from_ones(3, [(1, 3, 2), (2, 1, 3), (3, 2, 1)])
    assert alpha_check(a5).valid
    by_label = {c.label: c.canonical for c in classify_n3(enumerate_reduced(3))}
    assert canonical_form(a5) == by_label["A5"]
    # a 3-element support mixing orientations violates condition 1
    bad = AlphaFunction.from_ones(3, [(1, 3, 2), (2, 3, 1), (2, 1, 3)])
    assert not alpha_check(bad).valid


def test_classify_rejects_wrong_n():
    with pytest.raises(ClassificationError):
        classify_n3(enumerate_reduced(2))
    broken = ReducedCensus(3, 1, [(AlphaFunction.zero(3), 1)], 1)
    with pytest.raises(ClassificationError):
        classify_n3(broken)


def test_capability_errors():
    with pytest.raises(CapabilityError):
        enumerate_ordered(5, "exhaustive")
    with pytest.raises(CapabilityError):
        enumerate_ordered(6)
    with pytest.raises(CapabilityError):
        enumerate_reduced(6)
    with pytest.raises(CapabilityError):
        burnside_count(6)
    with pytest.raises(CapabilityError):
        enumerate_reduced(4, budget=Budget(reduced_work=1000))
    with pytest.raises(CapabilityError):
        enumerate_ordered(4, budget=Budget(store_max=100), engine="numba")
    with pytest.raises(DomainError):
        enumerate_ordered(0)


def test_budget_from_env():
    b = Budget.from_env({"CATENUM_BUDGET": "backtrack_max_n=6, store_max=1e5"})
    assert b.backtrack_max_n == 6 and b.store_max == 100000
    assert Budget.from_env({}) == Budget()
    with pytest.raises(DomainError):
        Budget.from_env({"CATENUM_BUDGET": "nope=1"})
    with pytest.raises(DomainError):
        Budget.from_env({"CATENUM_BUDGET": "store_max=lots"})


def test_certify():
    census = enumerate_ordered(3, certify=True, seed=1)
    assert census.certified and census.seed == 1
    census = enumerate_ordered(4, certify=True, seed=5, reject_sample=200)
    assert census.certified


@pytest.mark.slow
def test_n5_counts():
    assert enumerate_ordered(5, keep_alphas=False).count == 77658520
    red = enumerate_reduced(5)
    assert red.count == 649409
    assert red.ordered_count == 77658520
    assert burnside_count(5) == 649409

