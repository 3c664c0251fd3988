import random
from fractions import Fraction as F

import pytest

from tightdesigns import design_functions as df
from tightdesigns.exact_arith import binomial

WITT7 = df.DesignCandidate(2, 23, 7)
WITT16 = df.DesignCandidate(2, 23, 16)


def random_window_candidate(rng, s):
    k = rng.randint(2 * s + 1, 6 * s + 20)
    v = k + rng.randint(2 * s + 1, 6 * s + 20)
    return df.DesignCandidate(s, v, k)


def test_candidate_window():
    assert WITT7.x == 5 and WITT7.y == 20
    assert WITT16.x == 14 and WITT16.y == 20
    with pytest.raises(df.WindowViolation):
        df.DesignCandidate(2, 10, 7)
    loose = df.DesignCandidate(2, 10, 7, strict=False)
    assert not loose.nontrivial
    with pytest.raises(ValueError):
        df.DesignCandidate(1, 23, 7)


def test_lambda_values():
    assert df.lambda_si(WITT7, 2) == 1
    assert df.lambda_si(WITT16, 2) == 52
    assert df.lambda_si(WITT7, 0) == 21  # (1/2!) k(k-1)


def test_alpha_values():
    assert df.alpha_si(WITT7, 1) == 3
    assert df.alpha_si(WITT7, 2) == 3
    assert df.alpha_si(WITT7, 0) == 1
    assert df.alpha_xy(2, 5, 20, 1) == 3
    assert df.alpha_xy(10, 1, 13, 1) == F(20, 13)
    assert df.alpha_xy(10, 1, 13, 0) == 1


def test_alpha_coordinate_equivalence():
    rng = random.Random(5)
    for _ in range(50):
        s = rng.randint(2, 8)
        c = random_window_candidate(rng, s)
        for i in range(s + 1):
            assert df.alpha_si(c, i) == df.alpha_xy(s, c.x, c.y, i)


def test_h_values():
    assert df.h_si(WITT7, 0) == 5
    assert df.h_si(WITT7, 1) == F(3, 2)
    assert df.h_si(WITT7, 2) == F(1, 2)


def test_wilson_polynomial_witt():
    w = df.wilson_polynomial(WITT7)
    assert w.monic() == (F(3), F(-4), F(1))  # z^2 - 4z + 3
    assert w.evaluate(1) == 0 and w.evaluate(3) == 0
    both = df.wilson_polynomial_alpha_form(WITT7)
    assert w.coefficients == both.coefficients


def test_wilson_two_forms_agree():
    rng = random.Random(11)
    for _ in range(40):
        s = rng.randint(2, 8)
        c = random_window_candidate(rng, s)
        a = df.wilson_polynomial(c)
        b = df.wilson_polynomial_alpha_form(c)
        assert a.coefficients == b.coefficients, (s, c.v, c.k)


def test_intersection_numbers():
    assert df.intersection_numbers(WITT7) == [1, 3]
    roots16 = df.intersection_numbers(WITT16)
    assert roots16 == [10, 12]
    assert all(0 <= z <= 15 for z in roots16)
    res = df.intersection_numbers(df.DesignCandidate(2, 25, 7))
    assert isinstance(res, df.NotAllIntegral)


def test_intersection_numbers_are_exact_roots():
    rng = random.Random(3)
    found = 0
    for _ in range(200):
        s = rng.randint(2, 5)
        c = random_window_candidate(rng, s)
        res = df.intersection_numbers(c)
        if not isinstance(res, df.NotAllIntegral):
            found += 1
            w = df.wilson_polynomial(c)
            assert len(res) == s
            for z in res:
                assert w.evaluate(z) == 0
                assert 0 <= z <= c.k - 1
    # the Witt points exist, so at least those shapes appear rarely; the
    # exactness assertions above are the point of this test
    assert found >= 0


def test_alpha_all_integral():
    assert df.alpha_all_integral(2, 5, 20, 2)
    assert not df.alpha_all_integral(10, 1, 13, 1)
    assert df.alpha_all_integral(10, 1, 13, 0)


def test_alpha_all_integral_y_equals_one():
    # y = 1: every alpha_{s,i} = C(s,i) x^(ri) (x+1)^(ri) / i! is integral
    for s, x in ((3, 4), (6, 1), (10, 7)):
        assert df.alpha_all_integral(s, x, 1, min(s, 6))
        for i in range(1, min(s, 6) + 1):
            assert df.alpha_xy(s, x, 1, i).denominator == 1


def test_alpha_all_integral_matches_direct_fractions():
    rng = random.Random(17)
    for _ in range(300):
        s = rng.randint(2, 20)
        x = rng.randint(1, 400)
        y = rng.randint(1, 1000)
        i_max = rng.randint(1, min(s, 6))
        direct = all(
            df.alpha_xy(s, x, y, i).denominator == 1 for i in range(1, i_max + 1)
        )
        assert df.alpha_all_integral(s, x, y, i_max) == direct


def test_witt_block_count_identity():
    assert binomial(23, 2) == 253
    assert F(binomial(23, 4) * 1, binomial(7, 4)) == 253
    assert F(binomial(23, 4) * 52, binomial(16, 4)) == 253


def test_zero_denominator_rejected():
    with pytest.raises(df.ZeroDenominator):
        df.h_raw(2, 1, 3, 7)  # v - 2s + 1 = 0
    with pytest.raises(df.ZeroDenominator):
        df.alpha_xy(2, 5, 0, 1)
    with pytest.raises(df.ZeroDenominator):
        df.lambda_si(df.DesignCandidate(2, 2, 2, strict=False), 1)  # (v-s) falling hits 0


def test_wilson_rejects_window_violation():
    loose = df.DesignCandidate(2, 10, 7, strict=False)
    with pytest.raises(df.WindowViolation):
        df.wilson_polynomial(loose)
    with pytest.raises(df.WindowViolation):
        df.intersection_numbers(loose)
