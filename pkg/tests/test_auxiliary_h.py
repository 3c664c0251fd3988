import math
import random
from fractions import Fraction as F

import pytest

from tightdesigns import auxiliary_h as aux


def test_h_sum_values():
    assert aux.h_sum(2, 2, 23, 7) == F(1, 2)
    assert aux.h_sum(2, 0, 23, 7) == F(1, 4)  # single term h_{2,2}^2
    assert aux.h_sum(3, 2, 30, 10) == 2 * aux.g_closed(3, 2, 30, 10)


def test_g_closed_values():
    assert aux.g_closed(2, 2, 23, 7) == F(1, 4)
    assert aux.g_closed(2, 2, 23, 16) > 0
    assert aux.g_closed(2, 2, 23, 2) == 0  # k = s kills the numerator


def test_f_const_values():
    assert aux.f_const(2, 2) == 8
    assert aux.f_const(3, 2) == 288
    assert aux.f_const(2, 0) == 4


def test_parameter_validation():
    with pytest.raises(ValueError):
        aux.h_sum(4, 3, 30, 10)
    with pytest.raises(ValueError):
        aux.h_sum(4, 6, 30, 10)
    with pytest.raises(ValueError):
        aux.f_const(1, 0)


def _window_points(rng, s, count):
    for _ in range(count):
        k = rng.randint(2 * s + 1, 8 * s + 40)
        v = k + rng.randint(2 * s + 1, 8 * s + 40)
        yield v, k


def test_closed_form_cross_validation_random_windows():
    rng = random.Random(23)
    for s in range(2, 7):
        for r in range(0, s + 1, 2):
            ratio = math.factorial(r) // math.factorial(r // 2)
            for v, k in _window_points(rng, s, 25):
                assert aux.h_sum(s, r, v, k) == ratio * aux.g_closed(s, r, v, k)


def test_g_closed_positive_on_window():
    rng = random.Random(29)
    for s in range(2, 9):
        for r in range(0, s + 1, 2):
            for v, k in _window_points(rng, s, 10):
                assert aux.g_closed(s, r, v, k) > 0


def test_auxiliary_value_bundle():
    val = aux.AuxiliaryValue.at(2, 2, 23, 7)
    assert val.consistent
    assert val.h_sum == F(1, 2) and val.f_const == 8


def test_clearing_constant_smoothness_informational(capsys):
    """On the (empty) locus of true design parameters F*G is an integer; on
    generic window points the denominator need not be s-smooth.  Record the
    observed failure rate instead of asserting it away."""
    rng = random.Random(31)
    smooth = failures = 0
    for s in range(2, 7):
        for r in range(0, s + 1, 2):
            fc = aux.f_const(s, r)
            for v, k in _window_points(rng, s, 10):
                den = (fc * aux.g_closed(s, r, v, k)).denominator
                rest = den
                for p in range(2, s + 1):
                    while rest % p == 0:
                        rest //= p
                if rest == 1:
                    smooth += 1
                else:
                    failures += 1
    print(f"\nclearing-constant smoothness on generic window points: "
          f"{smooth} smooth, {failures} non-smooth (informational)")
    assert smooth + failures > 0
