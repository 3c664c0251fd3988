"""The auxiliary quadratic combination H and its closed form G.

H_{s,r} is an alternating binomial-weighted sum of products of h values;
it collapses to (r!/(r/2)!) * G_{s,r} with G an explicit ratio of rising
factorials.  The two sides are computed by independent code paths so the
equality check is a genuine cross-validation.  F_{s,r} is the integer
denominator-clearing constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .design_functions import ZeroDenominator, h_raw
from .exact_arith import ell, rising_factorial


def _check_sr(s: int, r: int) -> None:
    if r % 2:
        raise ValueError(f"r must be even, got {r}")
    if not 0 <= r <= s:
        raise ValueError(f"need 0 <= r <= s, got r={r}, s={s}")


def h_sum(s: int, r: int, v: int, k: int) -> Fraction:
    """Sum over i of (-1)^i C(r,i) h_{s,s-r+i} h_{s,s-i}, evaluated exactly."""
    _check_sr(s, r)
    hs = {j: h_raw(s, j, v, k) for j in range(s - r, s + 1)}
    out = Fraction(0)
    for i in range(r + 1):
        out += (-1) ** i * math.comb(r, i) * hs[s - r + i] * hs[s - i]
    return out


def g_closed(s: int, r: int, v: int, k: int) -> Fraction:
    """(v-k-s)^(r/2) (k-s)^(s-r/2+1) (k-s)^(s-r+1) / [(v-2s+1)^(s) (v-2s+1)^(s-r/2)], risings."""
    _check_sr(s, r)
    h = r // 2
    den = rising_factorial(v - 2 * s + 1, s) * rising_factorial(v - 2 * s + 1, s - h)
    if den == 0:
        raise ZeroDenominator(f"(v-2s+1)-rising vanished at v={v}, s={s}")
    num = (
        rising_factorial(v - k - s, h)
        * rising_factorial(k - s, s - h + 1)
        * rising_factorial(k - s, s - r + 1)
    )
    return Fraction(num, den)


def f_const(s: int, r: int) -> int:
    """s!^2 ell(s-1)^2 ell(s-2)^2 r!/(r/2)!, an integer."""
    _check_sr(s, r)
    if s < 2:
        raise ValueError(f"f_const needs s >= 2, got {s}")
    return (
        math.factorial(s) ** 2
        * ell(s - 1) ** 2
        * ell(s - 2) ** 2
        * math.factorial(r)
        // math.factorial(r // 2)
    )


@dataclass(frozen=True)
class AuxiliaryValue:
    """Both evaluations of the auxiliary function at one point, plus the constant."""

    s: int
    r: int
    v: int
    k: int
    h_sum: Fraction
    g_closed: Fraction
    f_const: int

    @classmethod
    def at(cls, s: int, r: int, v: int, k: int) -> "AuxiliaryValue":
        return cls(s, r, v, k, h_sum(s, r, v, k), g_closed(s, r, v, k), f_const(s, r))

    @property
    def consistent(self) -> bool:
        """Whether the sum equals (r!/(r/2)!) times the closed form."""
        ratio = math.factorial(self.r) // math.factorial(self.r // 2)
        return self.h_sum == ratio * self.g_closed
