from fractions import Fraction as Q
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hjcert.hj_core import (
    HJString,
    InvalidStringError,
    batch_invariants,
    continuant,
    contribution,
    dp_squared,
    dp_squared_quadratic,
    format_rational,
    hj_expansion,
    intersection_matrix,
    length_one_contribution,
    profile,
    solve_discrepancies,
)
from oracles import all_strings, exact_det, gamma, tridiag


@st.composite
def hj_strings(draw, max_weight=60):
    k = draw(st.integers(1, max_weight // 2))
    entries = []
    budget = max_weight
    for i in range(k):
        left = k - i - 1
        hi = budget - 2 * left
        if hi < 2:
            break
        n = draw(st.integers(2, min(hi, 12)))
        entries.append(n)
        budget -= n
    return HJString(entries)


class TestHJString:
    def test_rejects_small_entries(self):
        with pytest.raises(InvalidStringError):
            HJString([1, 2])
        with pytest.raises(InvalidStringError):
            HJString([])

    def test_parse(self):
        assert HJString.parse("2,4,2") == HJString((2, 4, 2))
        assert HJString.parse("(2, 3)") == HJString((2, 3))
        with pytest.raises(InvalidStringError):
            HJString.parse("2,x")

    def test_orientation_is_kept(self):
        assert HJString((3, 2, 2)) != HJString((2, 2, 3))
        assert HJString((3, 2, 2)).canonical() == HJString((2, 2, 3))


@pytest.mark.parametrize(
    "entries, expected",
    [
        ((2,), [[-2]]),
        ((2, 3), [[-2, 1], [1, -3]]),
        ((2, 2, 3), [[-2, 1, 0], [1, -2, 1], [0, 1, -3]]),
    ],
)
def test_intersection_matrix(entries, expected):
    assert intersection_matrix(entries) == expected


@pytest.mark.parametrize("entries, order", [((2, 2, 2), 4), ((3, 2, 4), 17), ((2, 5), 9), ((7,), 7)])
def test_continuant(entries, order):
    assert continuant(entries) == order


@pytest.mark.parametrize(
    "entries, expected",
    [
        ((2, 2, 3), (Q(1, 7), Q(2, 7), Q(3, 7))),
        ((2, 2, 2), (0, 0, 0)),
        ((3, 4), (Q(6, 11), Q(7, 11))),
        ((4,), (Q(1, 2),)),
    ],
)
def test_solve_discrepancies(entries, expected):
    assert solve_discrepancies(entries) == tuple(Q(x) for x in expected)


@pytest.mark.parametrize("entries, expected", [((2, 2, 3), Q(-3, 7)), ((2, 2), 0), ((3, 3), -1)])
def test_dp_squared(entries, expected):
    assert dp_squared(entries) == expected
    assert dp_squared_quadratic(entries) == expected


@pytest.mark.parametrize("entries, expected", [((2, 3), Q(1, 15)), ((2,), Q(1, 2)), ((3, 2, 4), Q(-28, 51))])
def test_contribution(entries, expected):
    assert contribution(entries) == expected


@pytest.mark.parametrize(
    "entries, order, a, dsq, g",
    [
        ((2, 3, 2), 8, (Q(1, 4), Q(1, 2), Q(1, 4)), Q(-1, 2), Q(-1, 24)),
        ((2, 2), 3, (0, 0), 0, Q(1, 3)),
        ((2, 2, 5), 13, (Q(3, 13), Q(6, 13), Q(9, 13)), Q(-27, 13), Q(-8, 13)),
    ],
)
def test_profile(entries, order, a, dsq, g):
    p = profile(entries)
    assert p.order == order
    assert p.discrepancies == tuple(Q(x) for x in a)
    assert p.d_squared == dsq
    assert p.contribution == g


def _eval_continued_fraction(entries):
    value = Q(entries[-1])
    for n in reversed(entries[:-1]):
        value = n - 1 / value
    return value


@pytest.mark.parametrize("n, q, expected", [((3), 2, (2, 2)), (7, 3, (3, 2, 2)), (11, 1, (11,))])
def test_hj_expansion(n, q, expected):
    s = hj_expansion(n, q)
    assert s.entries == expected
    assert _eval_continued_fraction(s.entries) == Q(n, q)
    assert continuant(s) == n


@pytest.mark.parametrize("n, q", [(6, 4), (5, 5), (5, 0), (1, 1)])
def test_hj_expansion_rejects(n, q):
    with pytest.raises(InvalidStringError):
        hj_expansion(n, q)


def test_hj_expansion_sound_up_to_500():
    for n in range(2, 501):
        for q in range(1, n):
            if gcd(n, q) == 1:
                s = hj_expansion(n, q)
                assert continuant(s) == n
                assert _eval_continued_fraction(s.entries) == Q(n, q)


@given(hj_strings())
@settings(max_examples=300, deadline=None)
def test_reversal_symmetry(s):
    r = s.reversed()
    assert continuant(r) == continuant(s)
    assert solve_discrepancies(r) == solve_discrepancies(s)[::-1]
    assert dp_squared(r) == dp_squared(s)
    assert contribution(r) == contribution(s)


@given(hj_strings())
@settings(max_examples=300, deadline=None)
def test_system_residual_and_range(s):
    a = (0,) + solve_discrepancies(s) + (0,)
    for j, n in enumerate(s, start=1):
        assert n * a[j] - a[j - 1] - a[j + 1] - (n - 2) == 0
        assert 0 <= a[j] < 1


@given(hj_strings())
@settings(max_examples=300, deadline=None)
def test_dual_dsq_agreement(s):
    assert dp_squared(s) == dp_squared_quadratic(s)


@given(hj_strings(max_weight=40))
@settings(max_examples=100, deadline=None)
def test_negative_definite(s):
    m = intersection_matrix(s)
    for k in range(1, len(s) + 1):
        minor = exact_det([row[:k] for row in m[:k]])
        assert (minor > 0) if k % 2 == 0 else (minor < 0)
    assert abs(exact_det(m)) == continuant(s)


@pytest.mark.parametrize("k", range(1, 9))
def test_du_val_vanishing(k):
    p = profile([2] * k)
    assert all(a == 0 for a in p.discrepancies)
    assert p.d_squared == 0
    assert p.contribution == Q(1, k + 1)


def test_sum_identities_small():
    for e in all_strings(3, 20):
        a = solve_discrepancies(e)
        assert sum(x * (n - 2) for x, n in zip(a, e)) == sum(e) - 6 - a[0] - a[2]
    for e in all_strings(2, 20):
        a = solve_discrepancies(e)
        assert sum(x * (n - 2) for x, n in zip(a, e)) == sum(e) - 4 - a[0] - a[1]


def test_against_dense_oracle():
    for length in (1, 2, 3, 4):
        for e in all_strings(length, 14):
            assert contribution(e) == gamma(e)
            assert abs(exact_det(tridiag(e))) == continuant(e)


@pytest.mark.parametrize("length", [1, 2, 3, 4])
def test_batch_matches_solver(length):
    rows = list(all_strings(length, 24 if length < 4 else 16))
    out = batch_invariants(np.array(rows))
    for i, e in enumerate(rows):
        p = profile(e)
        assert out["order"][i] == p.order
        assert tuple(out["num"][i]) == p.discrepancy_numerators
        assert Q(int(-out["dsq_num"][i]), int(out["order"][i])) == p.d_squared
        assert Q(int(out["gamma_num"][i]), 3 * int(out["order"][i])) == p.contribution


def test_length_one_closed_form():
    assert length_one_contribution(2) == Q(1, 2)
    assert length_one_contribution(3) == Q(2, 9)
    assert length_one_contribution(4) == Q(-1, 12)


@pytest.mark.parametrize("x, text", [(Q(3, 7), "3/7"), (Q(-28, 51), "-28/51"), (Q(6, 3), "2"), (Q(-8, 8), "-1"), (0, "0")])
def test_format_rational(x, text):
    assert format_rational(x) == text
