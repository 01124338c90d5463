import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from catenum.bounds import (
    TripleSet,
    big_str,
    alpha_from_subset,
    bounds_report,
    build_noninterferant,
    default_parts,
    finite_n_slack,
    interference,
    is_noninterferant,
    sigma_estimate,
)
from catenum.conditions import alpha_check
from catenum.core import DomainError


def test_bounds_examples():
    b3 = bounds_report(3)
    assert b3.lower_reduced == Fraction(1, 3)
    assert b3.upper == 18 and b3.lower_ordered == 2
    b4 = bounds_report(4)
    assert b4.upper == 18**4 == 104976
    assert b4.lower_ordered == 2
    assert b4.lower_reduced == Fraction(1, 12)
    b9 = bounds_report(9)
    assert b9.lower_ordered == 2**27 and b9.binom == 84
    assert bounds_report(1).upper == 1


def test_bounds_json_is_exact():
    data = bounds_report(30).to_json()
    assert data["upper"] == big_str(18 ** math.comb(30, 3))
    num, den = data["lower_reduced"]["num"], data["lower_reduced"]["den"]
    assert Fraction(int(num), int(den)) == Fraction(2**1000, math.factorial(30))


def test_witness_examples():
    assert build_noninterferant(4, (1, 1, 2)).sorted() == [(1, 2, 3), (1, 2, 4)]
    h6 = build_noninterferant(6)
    assert len(h6) == 8 and is_noninterferant(h6)
    assert default_parts(7) == (2, 2, 3)
    assert len(build_noninterferant(3)) == 1
    with pytest.raises(DomainError):
        build_noninterferant(5, (1, 1, 1))


def test_interference_witness():
    h = TripleSet.of(4, [(1, 2, 3), (2, 4, 3)])
    assert interference(h) == ((1, 2, 3), (2, 4, 3))
    assert not is_noninterferant(h)


def test_triple_set_validation():
    with pytest.raises(DomainError):
        TripleSet.of(3, [(1, 1, 2)])


@pytest.mark.parametrize("n, parts", [(3, None), (4, (1, 1, 2)), (5, (1, 2, 2)), (6, None), (7, (2, 1, 4))])
def test_every_subset_is_valid_and_distinct(n, parts):
    h = build_noninterferant(n, parts)
    assert len(h) <= 8
    members = h.sorted()
    seen = set()
    for r in range(len(members) + 1):
        for sub in combinations(members, r):
            alpha = alpha_from_subset(TripleSet.of(n, sub))
            assert alpha_check(alpha, short_circuit=True).valid
            seen.add(alpha)
    assert len(seen) == 2 ** len(h)


@given(st.integers(3, 9).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.booleans(), min_size=len(build_noninterferant(n)),
                         max_size=len(build_noninterferant(n))))))
def test_subsets_of_noninterferant_sets_stay_noninterferant(case):
    n, keep = case
    h = build_noninterferant(n).sorted()
    sub = TripleSet.of(n, [t for t, k in zip(h, keep) if k])
    assert is_noninterferant(sub)
    assert alpha_check(alpha_from_subset(sub), short_circuit=True).valid


def test_sigma_bounds():
    s = sigma_estimate({3: 5, 4: 289})
    assert s.analytic_lower == pytest.approx(math.log(2) / 27)
    assert s.analytic_upper == pytest.approx(math.log(18) / 6)
    assert s.analytic_lower < s.analytic_upper
    assert [n for n, _ in s.empirical] == [3, 4]
    assert s.empirical[1][1] == pytest.approx(math.log(289) / 64)
    assert finite_n_slack(4) == pytest.approx(math.log(24) / 64)
