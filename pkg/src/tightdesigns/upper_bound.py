"""Rigorous evaluation of the upper-bound machinery for v.

Everything here is computed with interval arithmetic (mpmath.iv): an
enclosure [lo, hi] is maintained through every log/exp/ratio, and reported
upper bounds are hi endpoints, so they are mathematically guaranteed
one-sided.  The bound itself: with psi = r - 4 - 4 pi(b) > 0 and kappa the
prime-weighted log aggregate below, any admissible parameter pair satisfies
v - 2s + 1 <= exp(kappa/psi).

kappa is assembled purely from integer prime valuations times ln p, plus
the pi(b) ln(3/2) term, so directed rounding reduces to interval logs of
small integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from mpmath import iv, mp, mpf

from ._intervals import iv_workprec

from .exact_arith import val_p_factorial
from . import prime_engine

DEFAULT_PREC = 128
RETRY_PREC = 256
STABILITY_REL = 2.0 ** -32

_primes_cache = np.empty(0, dtype=np.int64)
_primes_limit = 0


def _primes_upto(n: int) -> np.ndarray:
    """Cached dense prime table, grown geometrically on demand."""
    global _primes_cache, _primes_limit
    if n > _primes_limit:
        new_limit = max(n, 2 * _primes_limit, 1 << 12)
        _primes_cache = prime_engine.simple_sieve(new_limit)
        _primes_limit = new_limit
    return _primes_cache[: np.searchsorted(_primes_cache, n, side="right")]


def pi_small(x: float) -> int:
    """Exact prime count for the modest arguments used by psi/kappa."""
    if x < 2:
        return 0
    n = math.floor(x)
    return int(np.searchsorted(_primes_upto(n), n, side="right"))


@lru_cache(maxsize=None)
def _ln_iv_cached(n: int, prec: int):
    with iv_workprec(prec):
        return iv.log(iv.mpf(n))


@lru_cache(maxsize=None)
def _ln32_iv(prec: int):
    with iv_workprec(prec):
        return iv.log(iv.mpf(3) / 2)


def _endpoints(x, prec: int) -> tuple[mpf, mpf]:
    """Exact mpf endpoints of an interval (mp.prec raised so nothing rounds)."""
    raw_a, raw_b = x._mpi_
    with mp.workprec(prec + 16):
        return mp.make_mpf(raw_a), mp.make_mpf(raw_b)


@dataclass(frozen=True)
class RigorousUpper:
    """A real bounded above: ``upper`` >= the true value (full enclosure kept)."""

    upper: mpf
    lower: mpf
    precision_bits: int

    @property
    def value(self) -> mpf:
        return self.upper

    def float_upper(self) -> float:
        """Smallest float >= the rigorous upper endpoint."""
        f = float(self.upper)
        if mpf(f) < self.upper:
            f = math.nextafter(f, math.inf)
        return f

    def relative_width(self) -> float:
        if self.upper == 0:
            return 0.0
        return abs(float((self.upper - self.lower) / self.upper))


def _as_rigorous(interval, prec: int) -> RigorousUpper:
    lo, hi = _endpoints(interval, prec)
    return RigorousUpper(upper=hi, lower=lo, precision_bits=prec)


def _ceil_int(x: mpf, prec: int) -> int:
    with mp.workprec(prec + 16):
        return int(mp.ceil(x))


@dataclass(frozen=True)
class BoundReport:
    """One evaluation of the upper bound at (s, r, b)."""

    s: int
    r: int
    b: float
    psi: int
    feasible: bool
    kappa_upper: RigorousUpper | None = None
    exp_upper: RigorousUpper | None = None
    v_bound: int | None = None


def default_r(s: int) -> int:
    """The standard choice r = 2 * floor(s / 2)."""
    return 2 * (s // 2)


def _check_srb(s: int, r: int, b: float) -> None:
    if r % 2 or not 6 <= r <= s:
        raise ValueError(f"need even r with 6 <= r <= s, got r={r}, s={s}")
    if b > s:
        raise ValueError(f"need b <= s, got b={b}, s={s}")


def psi(s: int, r: int, b: float) -> int:
    """r - 4 - 4 pi(b) with the exact prime count."""
    _check_srb(s, r, b)
    return r - 4 - 4 * pi_small(b)


def _ilog(n: int, p: int) -> int:
    """floor(log_p n) by exact integer arithmetic; 0 for n <= 1."""
    if n <= 1:
        return 0
    e, q = 0, p
    while q <= n:
        e += 1
        q *= p
    return e


def val_p_clearing_const(s: int, r: int, p: int) -> int:
    """Exact p-valuation of the denominator-clearing constant
    s! r! ell(s-1)^2 ell(s-2)^2 (s-r+1)! (s-r/2+1)."""
    v = (
        val_p_factorial(s, p)
        + val_p_factorial(r, p)
        + 2 * _ilog(s - 1, p)
        + 2 * _ilog(s - 2, p)
        + val_p_factorial(s - r + 1, p)
    )
    m = s - r // 2 + 1
    while m % p == 0:
        v += 1
        m //= p
    return v


def _base_coefficients(s: int, r: int) -> dict[int, int]:
    """b-independent integer weights c_p such that sum c_p ln p equals
    2 ln[(2s-3r/2+2)! s! / ((2s-r+2)! (s-r+1)! (s-r/2+1))] + 2(s-r) ln 2."""
    a1 = 2 * s - 3 * r // 2 + 2
    b1 = 2 * s - r + 2
    coeff: dict[int, int] = {}
    for p in map(int, _primes_upto(b1)):
        c = 2 * (
            val_p_factorial(a1, p)
            + val_p_factorial(s, p)
            - val_p_factorial(b1, p)
            - val_p_factorial(s - r + 1, p)
        )
        m = s - r // 2 + 1
        while m % p == 0:
            c -= 2
            m //= p
        if p == 2:
            c += 2 * (s - r)
        if c:
            coeff[p] = c
    return coeff


def kappa(s: int, r: int, b: float, prec: int = DEFAULT_PREC) -> RigorousUpper:
    """Rigorous enclosure of kappa, reported via its upper endpoint.

    Retries at 256 bits when the enclosure is wider than 2^-32 relatively.
    """
    rig = _as_rigorous(_kappa_interval(s, r, b, prec), prec)
    if rig.relative_width() > STABILITY_REL:
        rig = _as_rigorous(_kappa_interval(s, r, b, RETRY_PREC), RETRY_PREC)
    return rig


def _kappa_interval(s: int, r: int, b: float, prec: int):
    _check_srb(s, r, b)
    coeff = _base_coefficients(s, r)
    for p in map(int, _primes_upto(s)):
        if p > b:
            coeff[p] = coeff.get(p, 0) + 2 * val_p_clearing_const(s, r, p)
    with iv_workprec(prec):
        total = iv.mpf(0)
        for p in sorted(coeff):
            total += coeff[p] * _ln_iv_cached(p, prec)
        total += 4 * pi_small(b) * _ln32_iv(prec)
        return total


def v_upper(s: int, r: int, b: float, prec: int = DEFAULT_PREC) -> BoundReport:
    """The bound report at (s, r, b): v <= ceil(exp(kappa/psi)) + 2s - 1 when psi > 0."""
    ps = psi(s, r, b)
    if ps <= 0:
        return BoundReport(s, r, b, ps, feasible=False)
    kap = kappa(s, r, b, prec)
    p_used = kap.precision_bits
    with iv_workprec(p_used):
        expo = iv.exp(iv.mpf((kap.lower, kap.upper)) / ps)
    exp_rig = _as_rigorous(expo, p_used)
    v_bound = _ceil_int(exp_rig.upper, p_used) + 2 * s - 1
    return BoundReport(s, r, b, ps, True, kap, exp_rig, v_bound)


def best_bound(s: int, r: int | None = None, prec: int = DEFAULT_PREC) -> BoundReport:
    """Minimize the bound over cutoffs b in [1, s].

    psi and the prime window change only when b crosses a prime, so the
    candidates are b = 1 and b = p for primes p <= s.  The kappa values are
    assembled from one suffix-sum pass over the prime weights.
    Deterministic tie-break: the smallest b wins.
    """
    if r is None:
        r = default_r(s)
    _check_srb(s, r, 1)
    primes = [int(p) for p in _primes_upto(s)]
    base = _base_coefficients(s, r)
    with iv_workprec(prec):
        base_iv = iv.mpf(0)
        for p in sorted(base):
            base_iv += base[p] * _ln_iv_cached(p, prec)
        weights = [
            2 * val_p_clearing_const(s, r, p) * _ln_iv_cached(p, prec) for p in primes
        ]
        suffix = [iv.mpf(0)] * (len(primes) + 1)
        for j in range(len(primes) - 1, -1, -1):
            suffix[j] = suffix[j + 1] + weights[j]
        ln32 = _ln32_iv(prec)
        best = None  # (ratio_upper, b, psi, kappa_interval)
        for j, b in enumerate([1] + primes):
            ps = r - 4 - 4 * j
            if ps <= 0:
                break  # psi only decreases as b grows
            kap_iv = base_iv + suffix[j] + 4 * j * ln32
            _, ratio_hi = _endpoints(kap_iv / ps, prec)
            if best is None or ratio_hi < best[0]:
                best = (ratio_hi, b, ps, kap_iv)
    if best is None:
        return BoundReport(s, r, 1.0, psi(s, r, 1), feasible=False)
    _, b, ps, kap_iv = best
    kap = _as_rigorous(kap_iv, prec)
    with iv_workprec(prec):
        expo = iv.exp(kap_iv / ps)
    exp_rig = _as_rigorous(expo, prec)
    v_bound = _ceil_int(exp_rig.upper, prec) + 2 * s - 1
    return BoundReport(s, r, b, ps, True, kap, exp_rig, v_bound)


def dusart_pi_upper(x: float, prec: int = DEFAULT_PREC) -> RigorousUpper:
    """Analytic bound pi(x) <= (x/ln x)(1 + 1.2762/ln x), rounded up."""
    if x <= 1:
        raise ValueError(f"need x > 1, got {x}")
    with iv_workprec(prec):
        xi = iv.mpf(x) if isinstance(x, int) else iv.mpf(repr(x))
        lg = iv.log(xi)
        val = xi / lg * (1 + iv.mpf("1.2762") / lg)
        return _as_rigorous(val, prec)


def stirling_bounds(n: int, prec: int = DEFAULT_PREC) -> tuple[float, float]:
    """(f(n), f(n)+1) with f(n) = n ln n - n + ln(n)/2, rounded outward;
    ln n! lies strictly inside."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    with iv_workprec(prec):
        ln_n = iv.log(iv.mpf(n))
        f = n * ln_n - n + ln_n / 2
        f_lo, _ = _endpoints(f, prec)
        _, f1_hi = _endpoints(f + 1, prec)
    lo = float(f_lo)
    if mpf(lo) > f_lo:
        lo = math.nextafter(lo, -math.inf)
    hi = float(f1_hi)
    if mpf(hi) < f1_hi:
        hi = math.nextafter(hi, math.inf)
    return lo, hi


def _stirling_iv(x, prec: int):
    """Interval f(x) for real x >= 1 (used by the analytic chain)."""
    with iv_workprec(prec):
        ln_x = iv.log(x)
        return x * ln_x - x + ln_x / 2


def kappa_analytic_upper(s: int, prec: int = DEFAULT_PREC) -> RigorousUpper:
    """Upper bound on kappa at b = s, r = 2 floor(s/2) via Stirling + the pi bound.

    Independent of the term-by-term path: each ln m! is bracketed by
    [f(m), f(m)+1] and pi(s) by its analytic upper bound, so this is a
    sound, slightly weaker, upper bound used for cross-validation.
    """
    with iv_workprec(prec):
        pi_up = dusart_pi_upper(s, prec)
        pi_term = 4 * iv.mpf(pi_up.upper) * _ln32_iv(prec)
        if s % 2 == 0:
            # kappa = 2 ln[(s/2+2)! s! / ((s+2)! (s/2+1))] + pi-term
            up = (
                2 * (_stirling_iv(iv.mpf(s) / 2 + 2, prec) + 1)
                + 2 * (_stirling_iv(iv.mpf(s), prec) + 1)
                - 2 * _stirling_iv(iv.mpf(s) + 2, prec)
                - 2 * iv.log(iv.mpf(s) / 2 + 1)
                + pi_term
            )
        else:
            # r = s-1: kappa = 2 ln[((s+7)/2)! s! / ((s+3)! ((s+3)/2))] + pi-term
            up = (
                2 * (_stirling_iv((iv.mpf(s) + 7) / 2, prec) + 1)
                + 2 * (_stirling_iv(iv.mpf(s), prec) + 1)
                - 2 * _stirling_iv(iv.mpf(s) + 3, prec)
                - 2 * iv.log((iv.mpf(s) + 3) / 2)
                + pi_term
            )
        return _as_rigorous(up, prec)


def check_large_s_bound(s: int, prec: int = DEFAULT_PREC) -> bool:
    """For s >= 627 with b = s and r = 2 floor(s/2): psi > 0 and
    exp(kappa/psi) < 2,000,000 s.

    Evaluated directly (exact pi(s), term-by-term kappa) and re-derived via
    the analytic chain (Stirling brackets + the pi upper bound); both must
    confirm the inequality.
    """
    if s < 627:
        raise ValueError(f"the explicit large-s regime needs s >= 627, got {s}")
    r = default_r(s)
    report = v_upper(s, r, s, prec)
    target = 2_000_000 * s
    direct_ok = bool(report.feasible and report.exp_upper.upper < target)

    pi_up = dusart_pi_upper(s, prec)
    kap_up = kappa_analytic_upper(s, prec)
    with iv_workprec(prec):
        psi_iv = r - 4 - 4 * iv.mpf(pi_up.upper)
        psi_lo, _ = _endpoints(psi_iv, prec)
        chain_ok = psi_lo > 0
        if chain_ok:
            ratio = iv.mpf(kap_up.upper) / psi_iv
            _, exp_hi = _endpoints(iv.exp(ratio), prec)
            chain_ok = bool(exp_hi < target)
    return direct_ok and chain_ok
