from fractions import Fraction as F

import pytest

from tightdesigns import identity_suite as ids
from tightdesigns.exact_arith import falling_factorial, rising_factorial


def _assert_sound(report):
    assert report.verdict, report
    for points, bound in zip(report.grid, report.degree_bounds):
        assert points > bound, report


@pytest.mark.parametrize("s", [2, 3, 5, 7])
def test_two_var_identity(s):
    _assert_sound(ids.verify_two_var_identity(s))


def test_two_var_mutation_fails():
    rep = ids.verify_two_var_identity(2, rhs_offset=1)
    assert not rep.verdict
    assert rep.counterexample is not None


@pytest.mark.parametrize("s,i", [(2, 1), (2, 2), (3, 1), (6, 3), (8, 8)])
def test_one_var_identity(s, i):
    _assert_sound(ids.verify_one_var_identity(s, i))


def test_one_var_mutation_fails():
    assert not ids.verify_one_var_identity(3, 1, rhs_offset=1).verdict


@pytest.mark.parametrize("s,i", [(2, 0), (2, 1), (5, 3), (8, 0), (8, 7)])
def test_h_top_quotients(s, i):
    _assert_sound(ids.verify_h_top_quotients(s, i))


def test_h_top_mutation_fails():
    assert not ids.verify_h_top_quotients(3, 1, rhs_offset=1).verdict


@pytest.mark.parametrize("s,i", [(2, 1), (2, 2), (6, 4), (7, 1), (7, 7)])
def test_h_level_quotients(s, i):
    _assert_sound(ids.verify_h_level_quotients(s, i))


def test_h_level_mutation_fails():
    assert not ids.verify_h_level_quotients(4, 2, rhs_offset=1).verdict


@pytest.mark.parametrize("s,r", [(2, 2), (4, 4), (5, 0), (7, 6)])
def test_dixon_specialization(s, r):
    _assert_sound(ids.verify_dixon_specialization(s, r))


def test_dixon_point_value():
    # hand-evaluated instance at (v, k) = (23, 7), s = 2, r = 2:
    # both sides equal 2 * 14 / (7 * 20) = 1/5
    v, k, r = 23, 7, 2
    rhs = F(
        falling_factorial(r, 1) * rising_factorial(v - k - 2, 1),
        falling_factorial(k, 1) * rising_factorial(v - 2 - r + 1, 1),
    )
    assert rhs == F(1, 5)
    lhs = F(0)
    for i in range(r + 1):
        num = rising_factorial(k - r + 1, i) * rising_factorial(-v + 2, i)
        den = rising_factorial(-k, i) * rising_factorial(v - 2 - r + 1, i)
        lhs += F((-1) ** i * [1, 2, 1][i] * num, den)
    assert lhs == F(1, 5)


def test_dixon_mutation_fails():
    assert not ids.verify_dixon_specialization(4, 4, rhs_offset=1).verdict


@pytest.mark.parametrize("s,r", [(0, 0), (2, 2), (3, 2), (6, 4), (9, 8)])
def test_closed_form(s, r):
    _assert_sound(ids.verify_closed_form(s, r))


def test_closed_form_mutation_fails():
    assert not ids.verify_closed_form(2, 2, rhs_offset=1).verdict


def test_verify_all_small():
    reports = ids.verify_all(4)
    assert all(r.verdict for r in reports)
    families = {r.identity for r in reports}
    assert families == set(ids.IdentityFamily)


def test_invalid_parameters():
    with pytest.raises(ValueError):
        ids.verify_dixon_specialization(4, 3)  # odd r
    with pytest.raises(ValueError):
        ids.verify_one_var_identity(3, 0)
    with pytest.raises(ValueError):
        ids.verify_h_top_quotients(3, 3)
