"""Segmented prime sieve, exact prime counting, and first-occurrence prime gaps.

The sieve stores an odd-only packed bitset (bit i <-> number 2i+1) with
running prime-count checkpoints every 2^20 integers, and collects the
record prime gaps while streaming segments in order.  rho(s), the smallest
prime whose gap to the next prime is at least s, is read off the records;
the resulting lower bound on v is rho(s+1) + 2s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from mpmath import iv

from ._intervals import iv_workprec

CHECKPOINT_SPAN = 1 << 20          # numbers per pi checkpoint block
SEGMENT_ODDS = 1 << 22             # odd slots per sieve segment
DEFAULT_MEMORY_BUDGET = 512 << 20  # bytes allowed for the packed bitset


class SieveLimitError(MemoryError):
    """Requested sieve limit exceeds the configured memory budget."""


class NotFoundBelowLimit(LookupError):
    """No prime gap of the requested size occurs below the sieve limit."""


@dataclass(frozen=True)
class GapRecord:
    """First occurrence of a record prime gap: (first_prime, first_prime + gap) are
    consecutive primes and the gap exceeds every gap below first_prime."""

    gap: int
    first_prime: int


#: Classical first-occurrence (maximal) prime gaps up to 1.3e9, used only as a
#: cross-check of the sieve output, never as the source of truth.
KNOWN_GAP_RECORDS: tuple[GapRecord, ...] = tuple(
    GapRecord(g, p)
    for g, p in [
        (1, 2), (2, 3), (4, 7), (6, 23), (8, 89), (14, 113), (18, 523),
        (20, 887), (22, 1129), (34, 1327), (36, 9551), (44, 15683),
        (52, 19609), (72, 31397), (86, 155921), (96, 360653), (112, 370261),
        (114, 492113), (118, 1349533), (132, 1357201), (148, 2010733),
        (154, 4652353), (180, 17051707), (210, 20831323), (220, 47326693),
        (222, 122164747), (234, 189695659), (248, 191912783),
        (250, 387096133), (282, 436273009), (288, 1294268491),
    ]
)

#: First prime with gap >= 288 (reconfirmed by the sieve in the long test).
RHO_288 = 1_294_268_491


def simple_sieve(limit: int) -> np.ndarray:
    """Dense sieve; all primes <= limit as an int64 array."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p).astype(np.int64)


class SieveTable:
    """Primality and exact prime counts up to ``limit``, plus gap records."""

    def __init__(self, limit: int, bits: np.ndarray, checkpoints: np.ndarray,
                 records: list[GapRecord], last_prime: int):
        self.limit = limit
        self._bits = bits                  # packed odd-only bitset, bitorder 'big'
        self._checkpoints = checkpoints    # odd primes below b * CHECKPOINT_SPAN
        self.gap_records = records
        self.last_prime = last_prime

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            raise ValueError(f"{n} beyond sieve limit {self.limit}")
        if n < 2:
            return False
        if n % 2 == 0:
            return n == 2
        i = n >> 1
        return bool((self._bits[i >> 3] >> (7 - (i & 7))) & 1)

    def pi_exact(self, x: int) -> int:
        """Exact count of primes <= x."""
        if x > self.limit:
            raise ValueError(f"{x} beyond sieve limit {self.limit}")
        if x < 2:
            return 0
        if x == 2:
            return 1
        block = x // CHECKPOINT_SPAN
        count = 1 + int(self._checkpoints[block])
        lo_bit = block * (CHECKPOINT_SPAN // 2)
        hi_bit = ((x - 1) >> 1) + 1          # odd numbers <= x have index <= (x-1)//2
        count += self._popcount(lo_bit, hi_bit)
        return count

    def _popcount(self, lo_bit: int, hi_bit: int) -> int:
        if hi_bit <= lo_bit:
            return 0
        lo_byte, hi_byte = lo_bit >> 3, (hi_bit + 7) >> 3
        chunk = np.unpackbits(self._bits[lo_byte:hi_byte])
        return int(chunk[lo_bit - 8 * lo_byte : hi_bit - 8 * lo_byte].sum())

    def rho(self, s: int) -> int:
        """Smallest prime p such that the next prime is at least p + s.

        Equivalently the smallest n with no primes in (n, n + s - 1]; the
        test suite checks the two definitions against each other.
        """
        if s < 1:
            raise ValueError(f"s must be >= 1, got {s}")
        if s == 1:
            return 1  # (1, 1] is empty
        for rec in self.gap_records:
            if rec.gap >= s:
                return rec.first_prime
        raise NotFoundBelowLimit(
            f"no prime gap >= {s} below {self.limit}; raise the sieve limit"
        )

    def gap_is_prime_free(self, n: int, s: int) -> bool:
        """Direct check that (n, n + s - 1] contains no primes."""
        return not any(self.is_prime(m) for m in range(n + 1, n + s))

    def export_gap_table(self) -> str:
        """Gap records as 'gap<TAB>first_prime' lines."""
        return "".join(f"{r.gap}\t{r.first_prime}\n" for r in self.gap_records)


def build_sieve(limit: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> SieveTable:
    """Odd-only segmented sieve to ``limit`` with gap scanning.

    Segments are sieved with numpy strided stores and packed as they
    complete; the gap scan streams primes in segment order, carrying the
    last prime across segment boundaries.
    """
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    n_bits = (limit + 1) // 2 + 1
    n_bytes = (n_bits + 7) // 8
    if n_bytes > memory_budget:
        raise SieveLimitError(
            f"bitset for limit {limit} needs {n_bytes} bytes; budget {memory_budget}"
        )
    base = simple_sieve(math.isqrt(limit) + 1)
    odd_base = [int(p) for p in base if p > 2]

    bits = np.zeros(n_bytes, dtype=np.uint8)
    n_blocks = limit // CHECKPOINT_SPAN + 1
    block_counts = np.zeros(n_blocks + 1, dtype=np.int64)

    records: list[GapRecord] = []
    record_gap = 0
    prev_prime = 2
    lo = 1  # segments start at 1 so checkpoint blocks stay aligned
    while lo <= limit:
        hi = min(lo + 2 * SEGMENT_ODDS, limit + 2)  # odds in [lo, hi)
        n = (hi - lo) // 2
        mask = np.ones(n, dtype=bool)
        if lo == 1:
            mask[0] = False  # the number 1
        for p in odd_base:
            p2 = p * p
            if p2 >= hi:
                break
            start = max(p2, ((lo + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start < hi:
                mask[(start - lo) // 2 :: p] = False
        # pack into the global bitset (segment bit ranges are byte-aligned:
        # lo >> 1 is a multiple of SEGMENT_ODDS which is a multiple of 8)
        packed = np.packbits(mask)
        b0 = (lo >> 1) >> 3
        bits[b0 : b0 + packed.shape[0]] = packed
        # per-checkpoint-block counts (segment spans whole checkpoint blocks)
        odd_per_block = CHECKPOINT_SPAN // 2
        full = (n // odd_per_block) * odd_per_block
        blk0 = lo // CHECKPOINT_SPAN
        if full:
            sums = mask[:full].reshape(-1, odd_per_block).sum(axis=1)
            block_counts[blk0 : blk0 + sums.shape[0]] += sums
        if full < n:
            block_counts[blk0 + full // odd_per_block] += int(mask[full:].sum())
        # gap scan
        idx = np.flatnonzero(mask)
        if idx.shape[0]:
            primes = lo + 2 * idx.astype(np.int64)
            boundary_gap = int(primes[0]) - prev_prime
            if boundary_gap > record_gap:
                records.append(GapRecord(boundary_gap, prev_prime))
                record_gap = boundary_gap
            gaps = np.diff(primes)
            if gaps.shape[0] and int(gaps.max()) > record_gap:
                for j in np.flatnonzero(gaps > record_gap):
                    g = int(gaps[j])
                    if g > record_gap:
                        records.append(GapRecord(g, int(primes[j])))
                        record_gap = g
            prev_prime = int(primes[-1])
        lo = hi

    checkpoints = np.zeros(n_blocks + 1, dtype=np.int64)
    np.cumsum(block_counts[:-1], out=checkpoints[1:])
    # bit 0 is the number 1: never set by construction (3 is the first odd slot)
    return SieveTable(limit, bits, checkpoints, records, prev_prime)


def rho(s: int, limit: int) -> int:
    """Standalone rho(s): builds a sieve to ``limit`` and reads the record."""
    return build_sieve(limit).rho(s)


def v_lower(s: int, table: SieveTable) -> int:
    """rho(s+1) + 2s: every nontrivial tight design on 2s points set has v at least this."""
    return table.rho(s + 1) + 2 * s


def dusart_gap_lower(s: int) -> float:
    """Analytic lower bound 5000 s (14.6 + ln s)^2 on rho_s, rounded down.

    Valid for s >= 288; in particular it exceeds 2,000,000 s there.
    """
    if s < 288:
        raise ValueError(f"analytic gap bound needs s >= 288, got {s}")
    with iv_workprec(128):
        val = 5000 * iv.mpf(s) * (iv.mpf("14.6") + iv.log(iv.mpf(s))) ** 2
        return float(val.a)


def cross_check_records(records: list[GapRecord]) -> list[str]:
    """Compare sieve records against the built-in catalog; returns mismatches."""
    known = {r.gap: r.first_prime for r in KNOWN_GAP_RECORDS}
    problems = []
    for rec in records:
        if rec.gap in known and known[rec.gap] != rec.first_prime:
            problems.append(
                f"gap {rec.gap}: sieve {rec.first_prime} != catalog {known[rec.gap]}"
            )
    return problems
