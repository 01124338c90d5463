from itertools import permutations

import numpy as np
from hypothesis import given, settings, strategies as st

from catenum.action import act
from catenum.composition import build_table, check_axioms
from catenum.conditions import alpha_check, constraint_ranks, product_identity_check, valid_mask
from catenum.core import AlphaFunction


def test_c1_witness():
    alpha = AlphaFunction.from_ones(3, [(1, 2, 3), (1, 3, 2)])
    report = alpha_check(alpha)
    assert not report.valid
    assert (1, 2, 3) in report.c1_violations
    assert report.c2_violations == []


def test_c2_witness_n4():
    # alpha(1,2,3) = alpha(2,4,3) = 1 forces alpha(1,2,4) = alpha(1,4,3) = 1
    alpha = AlphaFunction.from_ones(4, [(1, 2, 3), (2, 4, 3)])
    report = alpha_check(alpha)
    assert not report.valid
    assert report.c1_violations == []
    assert (1, 2, 4, 3) in report.c2_violations
    fixed = AlphaFunction.from_ones(4, [(1, 2, 3), (2, 4, 3), (1, 2, 4), (1, 4, 3)])
    assert alpha_check(fixed).valid


def test_short_circuit_stops_early():
    alpha = AlphaFunction.from_ones(3, [(1, 2, 3), (1, 3, 2), (2, 1, 3)])
    assert len(alpha_check(alpha, short_circuit=True).c1_violations) == 1
    assert len(alpha_check(alpha).c1_violations) > 1


def test_small_n_trivially_valid():
    for n in (1, 2):
        assert alpha_check(AlphaFunction.zero(n)).valid


def test_constraint_counts():
    pairs, quads = constraint_ranks(4)
    assert len(quads) == 24
    assert all(a < b for a, b in pairs)


masks4 = st.integers(0, 2**24 - 1)
perms4 = st.permutations([1, 2, 3, 4]).map(tuple)


@given(masks4)
def test_product_identity_equals_condition_two(mask):
    alpha = AlphaFunction.from_mask(4, mask)
    assert product_identity_check(alpha) == (alpha_check(alpha).c2_violations == [])


@given(masks4, perms4)
def test_validity_is_relabeling_invariant(mask, sigma):
    alpha = AlphaFunction.from_mask(4, mask)
    assert alpha_check(alpha).valid == alpha_check(act(sigma, alpha)).valid


@settings(max_examples=60, deadline=None)
@given(masks4)
def test_conditions_match_axioms(mask):
    alpha = AlphaFunction.from_mask(4, mask)
    assert alpha_check(alpha).valid == check_axioms(build_table(alpha), first_only=True).associative_ok


def test_valid_mask_matches_alpha_check():
    all3 = np.arange(64, dtype=np.uint64)
    assert list(valid_mask(3, all3)) == [alpha_check(AlphaFunction.from_mask(3, int(x))).valid for x in all3]
    rng = np.random.default_rng(3)
    sample = rng.integers(0, 2**24, size=2000, dtype=np.uint64)
    got = valid_mask(4, sample)
    assert list(got) == [alpha_check(AlphaFunction.from_mask(4, int(x)), True).valid for x in sample]


def test_quads_enumerate_every_distinct_quadruple():
    _, quads = constraint_ranks(4)
    assert len(set(quads)) == len(list(permutations(range(4), 4)))
