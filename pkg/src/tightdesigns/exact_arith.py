"""Exact integer/rational kernel: factorial-style combinatorics and p-adic valuations.

All arithmetic in this module is exact.  Rational values are
``fractions.Fraction`` instances (always in lowest terms, denominator >= 1),
re-exported as :data:`ExactRational`.  Floating point lives only in
``upper_bound``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

ExactRational = Fraction

Rat = Fraction | int


class ValuationError(ValueError):
    """Raised for undefined valuations (val_p of zero)."""


def rising_factorial(x: Rat, n: int) -> Rat:
    """Product x(x+1)...(x+n-1); the empty product (n=0) is 1."""
    if n < 0:
        raise ValueError(f"rising_factorial needs n >= 0, got {n}")
    out = x - x + 1  # 1 in the arithmetic of x (int or Fraction)
    for i in range(n):
        out *= x + i
    return out


def falling_factorial(x: Rat, n: int) -> Rat:
    """Product x(x-1)...(x-n+1); satisfies falling(x,n) = (-1)^n rising(-x,n)."""
    if n < 0:
        raise ValueError(f"falling_factorial needs n >= 0, got {n}")
    out = x - x + 1
    for i in range(n):
        out *= x - i
    return out


def binomial(n: Rat, k: int) -> Rat:
    """Generalized binomial coefficient falling(n,k)/k! for natural k.

    The upper argument may be any exact rational (or a negative integer);
    integer arguments with 0 <= k <= n take the fast integer path.
    """
    if k < 0:
        raise ValueError(f"binomial needs k >= 0, got {k}")
    if isinstance(n, int):
        if n >= 0:
            return math.comb(n, k) if k <= n else 0
        # negative integer upper argument: C(n,k) = (-1)^k C(k-n-1, k)
        return (-1) ** k * math.comb(k - n - 1, k)
    return falling_factorial(n, k) / math.factorial(k)


def ell(n: int) -> int:
    """lcm{1,...,n}, which also equals the lcm of all C(i,j) with j <= i <= n.

    The binomial-set characterization is exercised in the test suite; the
    direct lcm is the cheap equivalent form.
    """
    if n < 0:
        raise ValueError(f"ell needs n >= 0, got {n}")
    if n <= 1:
        return 1
    return reduce(math.lcm, range(2, n + 1), 1)


def val_p_factorial(n: int, p: int) -> int:
    """Exponent of the prime p in n!, by Legendre's formula sum floor(n/p^j)."""
    if n < 0:
        raise ValueError(f"val_p_factorial needs n >= 0, got {n}")
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def val_p(x: Rat, p: int) -> int:
    """Exponent of p in the canonical factorization of a nonzero rational.

    Negative when p divides the denominator.  Rejects x = 0 (the valuation
    would be +infinity); callers must guard.
    """
    if x == 0:
        raise ValueError("val_p(0) is undefined (+infinity); guard the caller")
    if isinstance(x, int):
        num, den = x, 1
    else:
        num, den = x.numerator, x.denominator
    return _int_val(abs(num), p) - _int_val(den, p)


def _int_val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass
class ValuationTable:
    """Prime -> exponent map for the tracked primes, plus the untracked cofactor.

    Reconstructing cofactor * prod(p^e) recovers the original value exactly.
    """

    entries: dict[int, int] = field(default_factory=dict)
    cofactor: Fraction = Fraction(1)

    @classmethod
    def from_value(cls, x: Rat, primes: list[int]) -> "ValuationTable":
        if x == 0:
            raise ValueError("cannot tabulate valuations of 0")
        x = Fraction(x)
        entries: dict[int, int] = {}
        rest = x
        for p in primes:
            e = val_p(x, p)
            if e:
                entries[p] = e
                rest /= Fraction(p) ** e
        return cls(entries, rest)

    def to_value(self) -> Fraction:
        out = self.cofactor
        for p, e in self.entries.items():
            out *= Fraction(p) ** e
        return out
