from fractions import Fraction as Q

import pytest

from hjcert.inequality import (
    CaseInstance,
    InvalidCaseError,
    SurfaceNumerics,
    curve_budget,
    enumerate_case_instances,
    lhs,
    lhs_termwise,
    reciprocal_prime_bound,
    reciprocal_prime_bound_unit,
    rhs,
)
from hjcert.hj_core import HJString
from oracles import first_primes


@pytest.mark.parametrize("c2, budget", [(4, 1), (10, 7), (13, 10)])
def test_curve_budget(c2, budget):
    assert curve_budget(c2) == budget


@pytest.mark.parametrize("c2", [3, 16, 0])
def test_curve_budget_range(c2):
    with pytest.raises(InvalidCaseError):
        curve_budget(c2)


@pytest.mark.parametrize("c2, r, value", [(4, 1, Q(2, 3)), (6, 1, 0), (13, 4, Q(2, 3)), (12, 3, 0)])
def test_lhs(c2, r, value):
    assert lhs(c2, r) == value


def test_lhs_closed_form_matches_termwise():
    for case in enumerate_case_instances():
        assert lhs(case.c2, case.r) == lhs_termwise(case.c2, case.partition)
        assert case.lhs == (case.c2 - 3 + case.r) - case.c2 + Q(12 - case.c2, 3)


@pytest.mark.parametrize(
    "config, value",
    [
        ([(2,), (2, 2), (2, 3)], Q(9, 10)),
        ([(2, 2, 2), (2, 2, 3)], Q(1, 4)),
        ([(2, 2, 2), (2, 2, 3), (2, 2)], Q(7, 12)),
    ],
)
def test_rhs(config, value):
    assert rhs(HJString(s) for s in config) == value


def test_rhs_empty():
    with pytest.raises(InvalidCaseError):
        rhs([])


def test_reciprocal_prime_bound():
    total, ok = reciprocal_prime_bound(5)
    assert total == Q(1, 2) + Q(1, 3) + Q(1, 5) + Q(1, 7) + Q(1, 11) == Q(2927, 2310)
    assert ok
    for r in range(5, 21):
        total, ok = reciprocal_prime_bound(r)
        assert total == sum(Q(1, p) for p in first_primes(r))
        assert ok and total <= r - 3
        unit, unit_ok = reciprocal_prime_bound_unit(r)
        assert unit == Q(1, 2) + sum(Q(1, p) for p in first_primes(r - 1))
        assert unit_ok


def test_reciprocal_prime_bound_rejects_small_r():
    with pytest.raises(InvalidCaseError):
        reciprocal_prime_bound(4)


def _by_c2(c2):
    return [(c.r, c.partition) for c in enumerate_case_instances([c2])]


def test_case_instances_examples():
    assert _by_c2(4) == [(1, (1,))]
    assert _by_c2(7) == [(2, (3, 1)), (2, (2, 2)), (3, (2, 1, 1)), (4, (1, 1, 1, 1))]
    assert _by_c2(14) == [(4, (3, 3, 3, 2))]


def test_case_instances_invariants():
    cases = enumerate_case_instances()
    keys = [(c.c2, c.partition) for c in cases]
    assert len(keys) == len(set(keys))
    assert keys == sorted(keys, key=lambda k: (k[0], len(k[1]), tuple(-p for p in k[1])))
    assert {c.c2 for c in cases} == set(range(4, 16))
    for c in cases:
        assert len(c.partition) == c.r <= 4
        assert sum(c.partition) == c.c2 - 3
        assert c.numerics.ksq_prime + c.c2 == 12
        assert c.numerics.b2 == c.c2 - 2
    # (c2, r) pairs discussed case by case
    pairs = {(c.c2, c.r) for c in cases}
    for pair in [(4, 1), (5, 1), (5, 2), (6, 1), (6, 2), (6, 3), (7, 2), (8, 2), (9, 2), (10, 3), (10, 4),
                 (11, 3), (11, 4), (12, 3), (12, 4), (13, 4), (14, 4), (15, 4)]:
        assert pair in pairs


def test_case_instance_validation():
    with pytest.raises(InvalidCaseError):
        CaseInstance.make(7, (2, 1))
    with pytest.raises(InvalidCaseError):
        CaseInstance.make(16, (3, 3, 3, 3, 1))
    with pytest.raises(InvalidCaseError):
        CaseInstance.make(7, (4,))
    with pytest.raises(InvalidCaseError):
        SurfaceNumerics(5, 6, 3)
