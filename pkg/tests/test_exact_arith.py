import math
import random
from fractions import Fraction as F

import pytest

from tightdesigns import exact_arith as ea


def test_rising_factorial_values():
    assert ea.rising_factorial(5, 2) == 30
    assert ea.rising_factorial(F(7, 2), 0) == 1
    assert ea.rising_factorial(-3, 4) == 0
    assert ea.rising_factorial(F(1, 2), 3) == F(1, 2) * F(3, 2) * F(5, 2)


def test_falling_factorial_values():
    assert ea.falling_factorial(7, 4) == 840
    assert ea.falling_factorial(3, 5) == 0
    assert ea.falling_factorial(F(1, 2), 2) == F(-1, 4)


def test_rising_split_property():
    rng = random.Random(42)
    for _ in range(200):
        x = F(rng.randint(-30, 30), rng.randint(1, 9))
        a, b = rng.randint(0, 6), rng.randint(0, 6)
        assert ea.rising_factorial(x, a) * ea.rising_factorial(x + a, b) == \
            ea.rising_factorial(x, a + b)


def test_falling_is_signed_rising():
    rng = random.Random(1)
    for _ in range(100):
        x = F(rng.randint(-20, 20), rng.randint(1, 7))
        n = rng.randint(0, 8)
        assert ea.falling_factorial(x, n) == (-1) ** n * ea.rising_factorial(-x, n)


def test_binomial():
    assert ea.binomial(23, 2) == 253
    assert ea.binomial(17, 0) == 1
    assert ea.binomial(F(9, 4), 0) == 1
    assert ea.binomial(4, 6) == 0
    assert ea.binomial(F(7, 2), 2) == F(35, 8)
    assert ea.binomial(-3, 2) == 6  # C(-3,2) = (-3)(-4)/2
    with pytest.raises(ValueError):
        ea.binomial(5, -1)


def test_ell_values():
    assert ea.ell(0) == 1
    assert ea.ell(1) == 1
    assert ea.ell(5) == 60
    assert ea.ell(10) == 2520


def test_ell_equals_binomial_set_lcm():
    # the lcm over all C(i,j), j <= i <= n, collapses to lcm{1..n}
    for n in range(0, 31):
        binset = [math.comb(i, j) for i in range(n + 1) for j in range(i + 1)]
        want = 1
        for b in binset:
            want = math.lcm(want, b)
        assert ea.ell(n) == want, n


def test_val_p_factorial():
    assert ea.val_p_factorial(10, 2) == 8
    assert ea.val_p_factorial(0, 7) == 0
    assert ea.val_p_factorial(100, 5) == 24


def test_val_p_factorial_against_direct_product():
    for n in (0, 1, 2, 24, 97, 500):
        fact = math.factorial(n)
        for p in (2, 3, 5, 7, 11, 97):
            assert ea.val_p_factorial(n, p) == (ea.val_p(fact, p) if fact > 1 else 0)


def test_val_p_factorial_large_spot():
    # Legendre formula vs valuation of the explicit factorial at scale
    for n in (1000, 9999):
        fact = math.factorial(n)
        for p in (2, 13, 97):
            assert ea.val_p_factorial(n, p) == ea.val_p(fact, p)


def test_val_p():
    assert ea.val_p(12, 2) == 2
    assert ea.val_p(F(3, 20), 5) == -1
    assert ea.val_p(7, 5) == 0
    with pytest.raises(ValueError):
        ea.val_p(0, 3)
    with pytest.raises(ValueError):
        ea.val_p(F(0), 3)


def test_valuation_table_roundtrip():
    rng = random.Random(9)
    primes = [2, 3, 5, 7, 11, 13]
    for _ in range(100):
        x = F(rng.randint(-10**6, 10**6) or 1, rng.randint(1, 10**6))
        table = ea.ValuationTable.from_value(x, primes)
        assert table.to_value() == x
        for p in primes:
            if p in table.entries:
                assert table.entries[p] == ea.val_p(x, p)
                assert table.entries[p] != 0
