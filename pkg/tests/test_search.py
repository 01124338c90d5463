import pytest

from catenum.action import all_perms, act
from catenum.conditions import alpha_check
from catenum.core import AlphaFunction
from catenum.search import (
    CANONICAL,
    COLLECT,
    COUNT,
    fixed_point_ties,
    iter_masks,
    run_search,
    split_prefixes,
    unpack,
)


def brute_valid(n):
    return [x for x in range(2 ** (n * (n - 1) * (n - 2)))
            if alpha_check(AlphaFunction.from_mask(n, x), True).valid]


def test_python_walker_matches_brute_force_n3():
    assert list(iter_masks(3)) == brute_valid(3)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_engines_agree(n):
    ref = list(iter_masks(n))
    assert run_search(n, COUNT).leaves == len(ref)
    assert run_search(n, COLLECT).masks == ref


@pytest.mark.parametrize("depth", [0, 1, 5, 24, 40])
def test_split_depth_does_not_change_results(depth):
    ref = list(iter_masks(4))
    res = run_search(4, COLLECT, split_depth=depth)
    assert res.masks == ref and res.leaves == len(ref)


def test_split_prefixes_are_consistent_assignments():
    prefixes = split_prefixes(3, None, 6)
    assert [int("".join(map(str, p)), 2) for p in prefixes] == list(iter_masks(3))


@pytest.mark.parametrize("sigma", [(2, 1, 3), (2, 3, 1)])
def test_ties_count_fixed_points_n3(sigma):
    fixed = [x for x in iter_masks(3) if act(sigma, AlphaFunction.from_mask(3, x)).mask == x]
    ties = fixed_point_ties(3, sigma)
    assert list(iter_masks(3, ties)) == fixed
    assert run_search(3, COUNT, ties=ties).leaves == len(fixed)


def test_ties_count_fixed_points_n4():
    valid = [AlphaFunction.from_mask(4, x) for x in iter_masks(4)]
    for sigma in [(2, 1, 3, 4), (2, 1, 4, 3), (2, 3, 4, 1), (2, 3, 1, 4)]:
        fixed = sum(act(sigma, a) == a for a in valid)
        assert run_search(4, COUNT, ties=fixed_point_ties(4, sigma)).leaves == fixed


def test_canonical_mode_n3():
    res = run_search(3, CANONICAL)
    assert res.leaves == 18
    assert len(res.masks) == 5
    for x, stab in zip(res.masks, res.stabilizers):
        alpha = AlphaFunction.from_mask(3, x)
        assert min(act(p, alpha).mask for p in all_perms(3)) == x
        assert sum(act(p, alpha) == alpha for p in all_perms(3)) == stab


def test_jobs_do_not_change_results():
    one = run_search(4, CANONICAL, jobs=1)
    two = run_search(4, CANONICAL, jobs=2)
    assert (one.leaves, one.masks, one.stabilizers) == (two.leaves, two.masks, two.stabilizers)


def test_overflow_is_reported():
    with pytest.raises(OverflowError):
        run_search(4, COLLECT, capacity=10)


def test_unpack_roundtrip():
    assert unpack(0b101, 3) == [1, 0, 1]
