"""Compiled inner loop of the integrality search.

The search enumerates, for each x, the window y in [x + s + 2, 2x + 1] and
keeps triples whose first six alpha values are integers.  The first filter
(y divides s * x * (x+1)) is equivalent to: y = g * d with d a divisor of
M = x(x+1), gcd(g, M/d) = 1 and g | s.  This kernel enumerates those
canonical (d, g) pairs from the factorizations of x and x+1 and applies
two sound necessary conditions for the alpha_2 filter before emitting a
candidate:

  * my = g stripped (one gcd round) by (x+1)(x+2) must divide C(s,2);
  * mz = (y+1) stripped (one gcd round) by x(x+1)^2(x+2) must divide C(s,2);

my and mz live in coprime moduli, so my * mz must divide C(s,2); candidates
where my * mz exceeds C(s_hi, 2) or divides no C(s,2) in the s range are
dropped in-kernel via a precomputed lookup.  Survivors are handed back to
Python for exact big-integer verification, so the kernel only ever
over-approximates; it never loses a hit (the test suite cross-checks this
against a brute-force oracle).

All modular products go through a float-reciprocal mulmod that is exact for
moduli below 2^51, so the kernel is valid far beyond the full search range
x <= 1.5e10.
"""

from __future__ import annotations

import math

import numpy as np

try:  # pragma: no cover - exercised implicitly everywhere
    from numba import int64, njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

from .prime_engine import simple_sieve

_DIV_BUF = 16384  # > max divisor count of any n <= 2^44


def small_prime_tables(s_hi: int) -> tuple[np.ndarray, np.ndarray]:
    """(prime -> bit index, g -> bitmask of g's primes) for primes <= s_hi."""
    if s_hi > 300:
        raise ValueError("bitmask tables support s_hi <= 300 (62 primes)")
    primes = [int(p) for p in simple_sieve(s_hi)]
    pidx = np.full(s_hi + 1, -1, dtype=np.int8)
    for i, p in enumerate(primes):
        pidx[p] = i
    gmask = np.zeros(s_hi + 1, dtype=np.uint64)
    for g in range(1, s_hi + 1):
        m, gg = 0, g
        for i, p in enumerate(primes):
            if gg % p == 0:
                m |= 1 << i
                while gg % p == 0:
                    gg //= p
        gmask[g] = m
    return pidx, gmask


def alpha2_divisor_table(s_lo: int, s_hi: int) -> tuple[np.ndarray, dict[int, list[int]]]:
    """valid[m] flag plus m -> sorted s list, for m | s(s-1)/2, m <= C(s_hi, 2)."""
    cap = max(s_hi * (s_hi - 1) // 2, 1)
    valid = np.zeros(cap + 1, dtype=np.bool_)
    targets: dict[int, list[int]] = {}
    for s in range(s_lo, s_hi + 1):
        c2 = s * (s - 1) // 2
        divs = []
        i = 1
        while i * i <= c2:
            if c2 % i == 0:
                divs.append(i)
                if i != c2 // i:
                    divs.append(c2 // i)
            i += 1
        for m in divs:
            if m <= cap:
                valid[m] = True
                targets.setdefault(m, []).append(s)
    for lst in targets.values():
        lst.sort()
    return valid, targets


if HAVE_NUMBA:

    @njit(cache=True)
    def _mulmod(a, b, z, zinv):
        # exact for z < 2^51: the wrapped int64 difference equals the true
        # remainder up to a few multiples of z, fixed by the loops
        q = int64(float(a) * float(b) * zinv)
        r = a * b - q * z
        while r < 0:
            r += z
        while r >= z:
            r -= z
        return r

    @njit(cache=True)
    def factor_segment(lo, hi, primes):
        """CSR factorization of every n in [lo, hi) over the given prime base.

        Returns (offsets, prime_flat, exp_flat, leftover); leftover[i] is 1 or
        a single prime above the base (base covers primes <= sqrt(hi-1)).
        """
        n = hi - lo
        rem = np.empty(n, dtype=np.int64)
        for i in range(n):
            rem[i] = lo + i
        cnt = np.zeros(n + 1, dtype=np.int64)
        for p in primes:
            start = ((lo + p - 1) // p) * p
            for m in range(start, hi, p):
                cnt[m - lo + 1] += 1
        offs = np.cumsum(cnt)
        fac_p = np.zeros(offs[n], dtype=np.int64)
        fac_e = np.zeros(offs[n], dtype=np.int64)
        fill = offs[:n].copy()
        for p in primes:
            start = ((lo + p - 1) // p) * p
            for m in range(start, hi, p):
                i = m - lo
                e = 0
                while rem[i] % p == 0:
                    rem[i] //= p
                    e += 1
                fac_p[fill[i]] = p
                fac_e[fill[i]] = e
                fill[i] += 1
        return offs, fac_p, fac_e, rem

    @njit(cache=True)
    def _divisors_masked(i, offs, fac_p, fac_e, lead, pidx, s_hi, dv, mv):
        """Divisors of row i with, per divisor, the bitmask of small primes
        still present in the cofactor; returns the divisor count."""
        dv[0] = 1
        mv[0] = np.uint64(0)
        cnt = 1
        for j in range(offs[i], offs[i + 1]):
            p = fac_p[j]
            e = fac_e[j]
            if cnt * (e + 2) > dv.shape[0]:
                return -1  # divisor count beyond the supported x range
            bit = np.uint64(0)
            if p <= s_hi:
                bit = np.uint64(1) << np.uint64(pidx[p])
            ln = cnt
            pk = int64(1)
            for k in range(1, e + 1):
                pk *= p
                kb = bit if k < e else np.uint64(0)
                for t in range(ln):
                    dv[cnt] = dv[t] * pk
                    mv[cnt] = mv[t] | kb
                    cnt += 1
            if bit:
                for t in range(ln):
                    mv[t] |= bit
        p = lead[i]
        if p > 1:
            if 2 * cnt > dv.shape[0]:
                return -1
            bit = np.uint64(0)
            if p <= s_hi:
                bit = np.uint64(1) << np.uint64(pidx[p])
            ln = cnt
            for t in range(ln):
                dv[cnt] = dv[t] * p
                mv[cnt] = mv[t]
                mv[t] |= bit
                cnt += 1
        return cnt

    @njit(cache=True)
    def scan_segment(
        x_lo, x_hi, offs, fac_p, fac_e, lead, pidx, gmask, valid,
        s_lo, s_hi, cap2, out,
    ):
        """Scan x in [x_lo, x_hi); factor rows must cover [x_lo, x_hi].

        Emits surviving (x, y, g, my*mz) rows into ``out``; returns the count,
        or -1 if the buffer would overflow (caller splits the range).
        """
        nout = 0
        da = np.empty(_DIV_BUF, dtype=np.int64)
        ma = np.empty(_DIV_BUF, dtype=np.uint64)
        db = np.empty(_DIV_BUF, dtype=np.int64)
        mb = np.empty(_DIV_BUF, dtype=np.uint64)
        na = _divisors_masked(0, offs, fac_p, fac_e, lead, pidx, s_hi, da, ma)
        if na < 0:
            return -2
        for x in range(x_lo, x_hi):
            i = x - x_lo
            nb = _divisors_masked(i + 1, offs, fac_p, fac_e, lead, pidx, s_hi, db, mb)
            if nb < 0:
                return -2
            lo_y = x + s_lo + 2
            hi_y = 2 * x + 1
            if hi_y >= lo_y:
                min_d = -((-lo_y) // s_hi)
                for ia in range(na):
                    a = da[ia]
                    if a > hi_y:
                        continue
                    mka = ma[ia]
                    b_cap = hi_y // a
                    for ib in range(nb):
                        bb = db[ib]
                        if bb > b_cap:
                            continue
                        d = a * bb
                        if d < min_d:
                            continue
                        inv_d = 1.0 / d
                        g1 = int64(float(hi_y) * inv_d)
                        while (g1 + 1) * d <= hi_y:
                            g1 += 1
                        while g1 * d > hi_y:
                            g1 -= 1
                        if g1 > s_hi:
                            g1 = s_hi
                        g0 = int64(float(lo_y) * inv_d)
                        while g0 * d < lo_y:
                            g0 += 1
                        while g0 > 1 and (g0 - 1) * d >= lo_y:
                            g0 -= 1
                        if g0 < 1:
                            g0 = 1
                        if g0 > g1:
                            continue
                        emask = mka | mb[ib]
                        for g in range(g0, g1 + 1):
                            if gmask[g] & emask:
                                continue  # not the canonical multiplier for this y
                            y = g * d
                            smax = y - x - 2
                            if smax > s_hi:
                                smax = s_hi
                            if g > smax:
                                continue
                            if (smax // g) * g < s_lo:
                                continue  # no multiple of g in the s window
                            # one-round strip of g by (x+1)(x+2): must divide C(s,2)
                            myv = g
                            if myv > 1:
                                rr = (((x + 1) % myv) * ((x + 2) % myv)) % myv
                                gg = myv
                                while rr:
                                    gg, rr = rr, gg % rr
                                myv //= gg
                            # one-round strip of y+1 by x(x+1)^2(x+2)
                            z = y + 1
                            zinv = 1.0 / z
                            u = _mulmod(x, x + 1, z, zinv)
                            u = _mulmod(u, x + 1, z, zinv)
                            u = _mulmod(u, x + 2, z, zinv)
                            if u == 0:
                                mz = int64(1)
                            else:
                                thresh = -((-myv * z) // cap2)  # need gcd >= this
                                gg = z
                                rr = u
                                while rr:
                                    if gg < thresh:
                                        break
                                    gg, rr = rr, gg % rr
                                if rr != 0 or gg < thresh:
                                    continue
                                mz = z // gg
                            mprod = myv * mz
                            if mprod > cap2 or not valid[mprod]:
                                continue
                            if nout >= out.shape[0]:
                                return -1
                            out[nout, 0] = x
                            out[nout, 1] = y
                            out[nout, 2] = g
                            out[nout, 3] = mprod
                            nout += 1
            tmp = da
            da = db
            db = tmp
            tmpm = ma
            ma = mb
            mb = tmpm
            na = nb
        return nout


def factor_base(x_hi: int) -> np.ndarray:
    """Primes up to sqrt(x_hi + 1), enough to leave at most one prime cofactor."""
    return simple_sieve(math.isqrt(x_hi + 1) + 1)


def scan_candidates(
    x_lo: int,
    x_hi: int,
    s_lo: int,
    s_hi: int,
    base: np.ndarray,
    pidx: np.ndarray,
    gmask: np.ndarray,
    valid: np.ndarray,
    block: int = 1 << 17,
    buf_rows: int = 1 << 20,
) -> np.ndarray:
    """All (x, y, g, mprod) survivor rows for x in [x_lo, x_hi], inclusive.

    Candidate superset of the true hit set; exact verification happens on
    the Python side.  Requires numba.
    """
    if not HAVE_NUMBA:  # pragma: no cover
        raise RuntimeError("numba is required for the compiled scan")
    cap2 = max(s_hi * (s_hi - 1) // 2, 1)
    out = np.empty((buf_rows, 4), dtype=np.int64)
    parts: list[np.ndarray] = []
    lo = x_lo
    while lo <= x_hi:
        hi = min(lo + block - 1, x_hi)
        offs, fp, fe, lead = factor_segment(lo, hi + 2, base)
        n = scan_segment(
            lo, hi + 1, offs, fp, fe, lead, pidx, gmask, valid,
            s_lo, s_hi, cap2, out,
        )
        if n == -2:
            raise RuntimeError("divisor buffer overflow: x beyond the supported range")
        if n < 0:
            if hi == lo:
                raise RuntimeError("survivor buffer overflow on a single x")
            block = max(1, block // 2)
            continue
        if n:
            parts.append(out[:n].copy())
        lo = hi + 1
    if not parts:
        return np.empty((0, 4), dtype=np.int64)
    return np.concatenate(parts)
