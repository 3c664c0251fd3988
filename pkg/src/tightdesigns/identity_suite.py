"""Machine verification of the algebraic identities behind the bound pipeline.

Every identity is checked by exact evaluation on an integer grid whose side
lengths strictly exceed the degree of the cleared (denominator-free) form in
each variable; agreement on such a grid proves the polynomial identity, so a
passing report is a proof, not a heuristic.  Grid points start beyond every
denominator zero (v >= 4s+2, k >= 2s+2), and each axis value is screened
against an explicit pole predicate before use, so no point is ever silently
skipped.

Six families are covered: the two-variable expansion of unity, the
one-variable expansion of unity, the quotient identities against the top h
value, the quotient identities against the level-i h value, the rational
specialization of Dixon's identity, and the closed form of the auxiliary
sum H.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .auxiliary_h import g_closed, h_sum
from .design_functions import h_raw
from .exact_arith import binomial, falling_factorial, rising_factorial


class IdentityFamily(enum.Enum):
    TWO_VAR_UNITY = "two-var-unity"
    ONE_VAR_UNITY = "one-var-unity"
    H_TOP_QUOTIENTS = "h-top-quotients"
    H_LEVEL_QUOTIENTS = "h-level-quotients"
    DIXON_SPECIALIZATION = "dixon-specialization"
    CLOSED_FORM = "closed-form"


@dataclass(frozen=True)
class IdentityReport:
    identity: IdentityFamily
    s: int
    extra: Optional[int]            # i or r where applicable
    grid: tuple[int, ...]           # points per axis (v, k) or (k,)
    degree_bounds: tuple[int, ...]  # degree bound per axis of the cleared form
    verdict: bool
    counterexample: Optional[tuple] = None

    def __str__(self) -> str:
        tag = "pass" if self.verdict else "FAIL"
        extra = "" if self.extra is None else f" extra={self.extra}"
        out = (
            f"{self.identity.value} s={self.s}{extra} "
            f"grid={'x'.join(map(str, self.grid))} deg<={self.degree_bounds} {tag}"
        )
        if self.counterexample is not None:
            out += f" counterexample={self.counterexample}"
        return out


def _axis(start: int, count: int, pole_free: Callable[[int], bool]) -> list[int]:
    """Consecutive integers from start, skipping (and replacing) pole values."""
    vals: list[int] = []
    n = start
    while len(vals) < count:
        if pole_free(n):
            vals.append(n)
        n += 1
    return vals


def _run_grid(
    family: IdentityFamily,
    s: int,
    extra: Optional[int],
    v_axis: list[int],
    k_axis: list[int],
    degree_bounds: tuple[int, int],
    lhs: Callable[[int, int], Fraction],
    rhs: Callable[[int, int], Fraction],
    rhs_offset: int,
) -> IdentityReport:
    dv, dk = degree_bounds
    assert len(v_axis) > dv and len(k_axis) > dk, "grid must exceed degree bounds"
    for v in v_axis:
        for k in k_axis:
            left = lhs(v, k)
            right = rhs(v, k) + rhs_offset
            if left != right:
                return IdentityReport(
                    family, s, extra, (len(v_axis), len(k_axis)),
                    degree_bounds, False, (v, k, left, right),
                )
    return IdentityReport(
        family, s, extra, (len(v_axis), len(k_axis)), degree_bounds, True
    )


def verify_two_var_identity(s: int, rhs_offset: int = 0) -> IdentityReport:
    """Expansion of the constant 1 as a double sum in Q[v, k].

    The right side is a polynomial of degree <= s-1 in v and <= s-2 in k,
    so an (s+1) x s grid decides it.  ``rhs_offset`` is a testing hook that
    perturbs the right side (mutation tests must fail).
    """
    if s < 2:
        raise ValueError(f"s must be >= 2, got {s}")

    def rhs(v: int, k: int) -> Fraction:
        total = Fraction(0)
        for i in range(s):
            coeff = Fraction(0)
            for j in range(i + 1, s):
                coeff += (
                    Fraction(
                        (-1) ** (i + j) * math.factorial(j - i - 1),
                        math.factorial(s - i - 1) * math.factorial(j - 1),
                    )
                    * binomial(k - j - 1, s - j - 1)
                    * binomial(k - i - 1, j - i - 1)
                    * binomial(v - s, i)
                )
            if coeff:
                total += (
                    coeff
                    * rising_factorial(v - 2 * s + 1, s - i - 1)
                    * falling_factorial(k - 1, i)
                )
            coeff = Fraction(0)
            for j in range(1, i + 1):
                coeff += (
                    Fraction(
                        (-1) ** (i + j) * math.factorial(i - j),
                        math.factorial(i) * math.factorial(s - j - 1),
                    )
                    * binomial(k - j - 1, i - j)
                    * binomial(k - 1, j - 1)
                    * binomial(v - s - i - 1, s - i - 1)
                )
            if coeff:
                total += (
                    coeff
                    * falling_factorial(v - s, i)
                    * rising_factorial(k - s + 1, s - i - 1)
                )
        return total

    v_axis = _axis(4 * s + 2, s + 1, lambda _: True)
    k_axis = _axis(2 * s + 2, s, lambda _: True)
    return _run_grid(
        IdentityFamily.TWO_VAR_UNITY, s, None, v_axis, k_axis,
        (s - 1, s - 2), lambda v, k: Fraction(1), rhs, rhs_offset,
    )


def verify_one_var_identity(s: int, i: int, rhs_offset: int = 0) -> IdentityReport:
    """Expansion of the constant 1 in Q[k] (degree <= s-i), for 1 <= i <= s."""
    if not 1 <= i <= s:
        raise ValueError(f"need 1 <= i <= s, got i={i}, s={s}")

    def rhs(k: int) -> Fraction:
        a = Fraction(0)
        for j in range(0, s - i):
            a += (
                Fraction((-1) ** (s - j) * math.factorial(s - i - j), math.factorial(s - j - 1))
                * binomial(k, j)
                * binomial(k - j - 1, s - i - j - 1)
            )
        total = a * rising_factorial(k - s + 1, i - 1)
        b = Fraction(0)
        for j in range(s - i + 1, s):
            b += (
                Fraction((-1) ** (s - j - 1) * math.factorial(i + j - s), math.factorial(j))
                * binomial(k - j - 1, s - j - 1)
                * binomial(k - s + i - 1, i + j - s - 1)
            )
        return total + b * falling_factorial(k, s - i)

    k_axis = _axis(2 * s + 2, s - i + 2, lambda _: True)
    deg = s - i
    assert len(k_axis) > deg
    for k in k_axis:
        left, right = Fraction(1), rhs(k) + rhs_offset
        if left != right:
            return IdentityReport(
                IdentityFamily.ONE_VAR_UNITY, s, i, (len(k_axis),), (deg,),
                False, (k, left, right),
            )
    return IdentityReport(IdentityFamily.ONE_VAR_UNITY, s, i, (len(k_axis),), (deg,), True)


def _lambda_raw(s: int, i: int, v: int, k: int) -> Fraction:
    return Fraction(
        falling_factorial(k, s + i),
        math.factorial(s) * falling_factorial(v - s, i),
    )


def _alpha_raw(s: int, i: int, v: int, k: int) -> Fraction:
    return Fraction(
        math.comb(s, i) * rising_factorial(k - s, i) * rising_factorial(k - s + 1, i),
        rising_factorial(v - 2 * s + 1, i),
    )


def verify_h_top_quotients(s: int, i: int, rhs_offset: int = 0) -> IdentityReport:
    """The two quotient identities against h_{s,s}, for 0 <= i <= s-1.

    s! lambda_{s,i+1}/h_{s,s} and (i! i! (s-i)!/s!) C(k,i) alpha_{s,s-i}/h_{s,s}
    both collapse to explicit factorial products; each is checked on its own
    grid and the report covers the pair.
    """
    if not 0 <= i <= s - 1:
        raise ValueError(f"need 0 <= i <= s-1, got i={i}, s={s}")

    def pole_free_v(v: int) -> bool:
        return v - s - i > 0 and v - 3 * s + 1 > 0

    def pole_free_k(k: int) -> bool:
        return k - s > 0

    def lhs_a(v: int, k: int) -> Fraction:
        return math.factorial(s) * _lambda_raw(s, i + 1, v, k) / h_raw(s, s, v, k)

    def rhs_a(v: int, k: int) -> Fraction:
        # the k-factor is (k-s-1) falling, not (k-1): the two agree only at i=0
        return Fraction(
            rising_factorial(v - 2 * s + 1, s - i - 1)
            * falling_factorial(k - s - 1, i)
        )

    rep = _run_grid(
        IdentityFamily.H_TOP_QUOTIENTS, s, i,
        _axis(4 * s + 2, s + 2, pole_free_v),
        _axis(2 * s + 2, s + i + 3, pole_free_k),
        (s, s + i + 1), lhs_a, rhs_a, rhs_offset,
    )
    if not rep.verdict:
        return rep

    def lhs_b(v: int, k: int) -> Fraction:
        return (
            Fraction(math.factorial(i) ** 2 * math.factorial(s - i), math.factorial(s))
            * binomial(k, i)
            * _alpha_raw(s, s - i, v, k)
            / h_raw(s, s, v, k)
        )

    def rhs_b(v: int, k: int) -> Fraction:
        return Fraction(
            falling_factorial(v - s, i) * rising_factorial(k - s + 1, s - i - 1)
        )

    return _run_grid(
        IdentityFamily.H_TOP_QUOTIENTS, s, i,
        _axis(4 * s + 2, s + 2, pole_free_v),
        _axis(2 * s + 2, 2 * s - i + 2, pole_free_k),
        (s, 2 * s - i), lhs_b, rhs_b, rhs_offset,
    )


def verify_h_level_quotients(s: int, i: int, rhs_offset: int = 0) -> IdentityReport:
    """The two quotient identities against h_{s,i}, for 1 <= i <= s."""
    if not 1 <= i <= s:
        raise ValueError(f"need 1 <= i <= s, got i={i}, s={s}")

    def pole_free_v(v: int) -> bool:
        return v - 3 * s + 1 > 0

    def pole_free_k(k: int) -> bool:
        return k - s > 0

    def lhs_a(v: int, k: int) -> Fraction:
        return (
            Fraction(math.factorial(i) * math.factorial(s - i), math.factorial(s))
            * _alpha_raw(s, i, v, k)
            / h_raw(s, i, v, k)
        )

    def rhs_a(v: int, k: int) -> Fraction:
        return Fraction(rising_factorial(k - s + 1, i - 1))

    rep = _run_grid(
        IdentityFamily.H_LEVEL_QUOTIENTS, s, i,
        _axis(4 * s + 2, i + 2, pole_free_v),
        _axis(2 * s + 2, 2 * i + 2, pole_free_k),
        (i, 2 * i), lhs_a, rhs_a, rhs_offset,
    )
    if not rep.verdict:
        return rep

    def lhs_b(v: int, k: int) -> Fraction:
        return (
            math.factorial(s - i)
            * binomial(v - s, s - i)
            * h_raw(s, s, v, k)
            / h_raw(s, i, v, k)
        )

    def rhs_b(v: int, k: int) -> Fraction:
        return Fraction(falling_factorial(k, s - i))

    return _run_grid(
        IdentityFamily.H_LEVEL_QUOTIENTS, s, i,
        _axis(4 * s + 2, 2 * s - i + 2, pole_free_v),
        _axis(2 * s + 2, s + 3, pole_free_k),
        (2 * s - i, s + 1), lhs_b, rhs_b, rhs_offset,
    )


def verify_dixon_specialization(s: int, r: int, rhs_offset: int = 0) -> IdentityReport:
    """Terminating-series specialization of Dixon's identity, as rational functions.

    LHS: sum_{i=0}^{r} (-1)^i C(r,i) (k-r+1)^(ri) (-v+s)^(ri) / [(-k)^(ri) (v-s-r+1)^(ri)].
    RHS: r^(falling r/2) (v-k-s)^(rising r/2) / [k^(falling r/2) (v-s-r+1)^(rising r/2)].
    Cleared degrees are <= 3r/2 per variable; the grid is (2r+2)^2.
    """
    if r % 2 or not 0 <= r <= s:
        raise ValueError(f"need even r in [0, s], got r={r}, s={s}")

    def pole_free_v(v: int) -> bool:
        return v - s - r + 1 > 0

    def pole_free_k(k: int) -> bool:
        return k >= r + 1

    def lhs(v: int, k: int) -> Fraction:
        total = Fraction(0)
        for i in range(r + 1):
            num = rising_factorial(k - r + 1, i) * rising_factorial(-v + s, i)
            den = rising_factorial(-k, i) * rising_factorial(v - s - r + 1, i)
            total += Fraction((-1) ** i * math.comb(r, i) * num, den)
        return total

    def rhs(v: int, k: int) -> Fraction:
        h = r // 2
        return Fraction(
            falling_factorial(r, h) * rising_factorial(v - k - s, h),
            falling_factorial(k, h) * rising_factorial(v - s - r + 1, h),
        )

    side = 2 * r + 2
    return _run_grid(
        IdentityFamily.DIXON_SPECIALIZATION, s, r,
        _axis(4 * s + 2, side, pole_free_v),
        _axis(2 * s + 2, side, pole_free_k),
        (3 * r // 2, 3 * r // 2), lhs, rhs, rhs_offset,
    )


def verify_closed_form(s: int, r: int, rhs_offset: int = 0) -> IdentityReport:
    """The alternating sum H equals (r!/(r/2)!) times its closed form G.

    The two sides come from independent code paths (auxiliary_h.h_sum built
    on the h family, auxiliary_h.g_closed from the explicit factorial
    ratio), so this grid check cross-validates both.
    """
    if r % 2 or not 0 <= r <= s:
        raise ValueError(f"need even r in [0, s], got r={r}, s={s}")
    ratio = math.factorial(r) // math.factorial(r // 2)

    def pole_free_v(v: int) -> bool:
        return v - 3 * s + 1 > 0 if s else v - 2 * s + 1 > 0

    deg_v, deg_k = 2 * s, max(2 * s - r + 2, 0)
    side = max(4 * s + 2, deg_v + 2, deg_k + 2)
    return _run_grid(
        IdentityFamily.CLOSED_FORM, s, r,
        _axis(4 * s + 2, side, pole_free_v),
        _axis(2 * s + 2, side, lambda _: True),
        (deg_v, deg_k),
        lambda v, k: h_sum(s, r, v, k),
        lambda v, k: ratio * g_closed(s, r, v, k),
        rhs_offset,
    )


def verify_all(s_max: int) -> list[IdentityReport]:
    """Run every family for every s in [2, s_max] over all valid parameters."""
    reports: list[IdentityReport] = []
    for s in range(2, s_max + 1):
        reports.append(verify_two_var_identity(s))
        for i in range(1, s + 1):
            reports.append(verify_one_var_identity(s, i))
        for i in range(0, s):
            reports.append(verify_h_top_quotients(s, i))
        for i in range(1, s + 1):
            reports.append(verify_h_level_quotients(s, i))
        for r in range(0, s + 1, 2):
            reports.append(verify_dixon_specialization(s, r))
            reports.append(verify_closed_form(s, r))
    return reports
