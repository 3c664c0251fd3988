"""Chunked, parallel, checkpointed search for integral alpha triples.

The search space is s in [s_lo, s_hi], x in [x_lo, x_hi], y in
[x + s + 2, 2x + 1]; a hit is a triple whose alpha_{s,1..i_max} are all
integers.  Work is split into x-chunks that partition the space; each chunk
is scanned by the compiled kernel (divisor enumeration + sound alpha_2
prefilters), surviving candidates are verified with exact big-integer
arithmetic, and completed chunks are appended to a plain-text checkpoint
that a resumed run picks up.  Hits additionally get the integer-root
necessary condition on the degree-s design polynomial evaluated and
recorded as extra evidence beyond the alpha filter.
"""

from __future__ import annotations

import math
import multiprocessing as mp
import os
from dataclasses import dataclass, field, replace
from functools import lru_cache

from . import _search_kernel as kernel
from .design_functions import (
    DesignCandidate,
    NotAllIntegral,
    alpha_all_integral,
    alpha_xy,
    intersection_numbers,
)

S_DEFAULT_LO = 10
S_DEFAULT_HI = 287
X_FULL_RANGE = 15_000_000_000
DEFAULT_CHUNK = 1 << 24
DEFAULT_I_MAX = 6


@dataclass(frozen=True)
class Hit:
    """A triple passing the integrality filter, with its alpha values."""

    s: int
    x: int
    y: int
    alphas: tuple[int, ...]
    root_check: str = ""   # outcome of the extra design-polynomial root test

    def key(self) -> tuple[int, int, int]:
        return (self.s, self.x, self.y)


@dataclass
class SearchChunk:
    """A unit of checkpointed work: an x-range crossed with an s-range."""

    x_lo: int
    x_hi: int
    s_lo: int = S_DEFAULT_LO
    s_hi: int = S_DEFAULT_HI
    status: str = "pending"
    hits: list[Hit] = field(default_factory=list)


@lru_cache(maxsize=8)
def _tables(s_lo: int, s_hi: int):
    pidx, gmask = kernel.small_prime_tables(s_hi)
    valid, targets = kernel.alpha2_divisor_table(s_lo, s_hi)
    return pidx, gmask, valid, targets


@lru_cache(maxsize=4)
def _base(x_hi_pow2: int):
    return kernel.factor_base(x_hi_pow2)


def _factor_base_for(x_hi: int):
    # bucket the limit so workers reuse one cached base
    return _base(1 << max(x_hi.bit_length(), 8))


def _exact_hit(s: int, x: int, y: int, i_max: int) -> Hit | None:
    """Exact big-integer verification; returns the Hit or None."""
    if not alpha_all_integral(s, x, y, i_max):
        return None
    alphas = tuple(int(alpha_xy(s, x, y, i)) for i in range(1, i_max + 1))
    return Hit(s, x, y, alphas)


def _root_evidence(hit: Hit) -> str:
    """Integer-root necessary condition on the design polynomial (extra evidence)."""
    v = hit.y + 2 * hit.s - 1
    k = hit.x + hit.s
    try:
        cand = DesignCandidate(hit.s, v, k, strict=False)
        result = intersection_numbers(cand)
    except Exception as exc:  # pragma: no cover - defensive
        return f"error:{exc}"
    if isinstance(result, NotAllIntegral):
        return f"not-all-integral:{result.reason}"
    return "integral-roots:" + ",".join(map(str, result))


def search_chunk(chunk: SearchChunk, i_max: int = DEFAULT_I_MAX) -> SearchChunk:
    """Run one chunk to completion; output order is (s, x, y) ascending."""
    if chunk.x_lo < 1:
        raise ValueError("x range starts at 1")
    if i_max > min(chunk.s_lo, 6):
        raise ValueError(f"i_max={i_max} exceeds min(s_lo, 6)={min(chunk.s_lo, 6)}")
    if kernel.HAVE_NUMBA and i_max >= 2:
        hits = _kernel_hits(chunk, i_max)
    else:
        hits = _reference_hits(chunk, i_max)
    hits = sorted({h.key(): h for h in hits}.values(), key=Hit.key)
    hits = [replace(h, root_check=_root_evidence(h)) for h in hits]
    return SearchChunk(chunk.x_lo, chunk.x_hi, chunk.s_lo, chunk.s_hi, "done", hits)


def _kernel_hits(chunk: SearchChunk, i_max: int) -> list[Hit]:
    pidx, gmask, valid, targets = _tables(chunk.s_lo, chunk.s_hi)
    base = _factor_base_for(chunk.x_hi)
    rows = kernel.scan_candidates(
        chunk.x_lo, chunk.x_hi, chunk.s_lo, chunk.s_hi, base, pidx, gmask, valid
    )
    hits = []
    for x, y, g, mprod in rows.tolist():
        smax = min(chunk.s_hi, y - x - 2)
        for s in targets.get(mprod, ()):
            if s > smax:
                break
            if s % g or s < chunk.s_lo:
                continue
            hit = _exact_hit(s, x, y, i_max)
            if hit is not None:
                hits.append(hit)
    return hits


def _reference_hits(chunk: SearchChunk, i_max: int) -> list[Hit]:
    """Divisor-enumeration reference path (no numba); fine for small ranges."""
    hits = []
    for x in range(chunk.x_lo, chunk.x_hi + 1):
        for s in range(chunk.s_lo, chunk.s_hi + 1):
            for y in enumerate_candidate_y(s, x):
                hit = _exact_hit(s, x, y, i_max)
                if hit is not None:
                    hits.append(hit)
    return hits


@lru_cache(maxsize=4)
def _trial_primes(limit_pow2: int) -> tuple[int, ...]:
    return tuple(map(int, kernel.simple_sieve(limit_pow2)))


def _factorize(n: int) -> dict[int, int]:
    fac: dict[int, int] = {}
    root = math.isqrt(n) + 1
    for p in _trial_primes(1 << max(root.bit_length(), 6)):
        if p > root:
            break
        while n % p == 0:
            fac[p] = fac.get(p, 0) + 1
            n //= p
        if n == 1:
            break
    if n > 1:
        fac[n] = fac.get(n, 0) + 1
    return fac


def enumerate_candidate_y(s: int, x: int) -> list[int]:
    """All y in [x+s+2, 2x+1] dividing s*x*(x+1), ascending.

    Sound and complete for the i = 1 filter: y passes alpha_{s,1} in Z
    exactly when y is in this list.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    lo, hi = x + s + 2, 2 * x + 1
    if hi < lo:
        return []
    fac = _factorize(s)
    for n in (x, x + 1):
        for p, e in _factorize(n).items():
            fac[p] = fac.get(p, 0) + e
    out = [1]
    for p, e in fac.items():
        out = [d * p**k for d in out for k in range(e + 1) if d * p**k <= hi]
    return sorted(d for d in out if d >= lo)


def verify_window(s: int, x_lo: int, x_hi: int, i_max: int = DEFAULT_I_MAX) -> list[Hit]:
    """Brute-force oracle: scan every y in the window and evaluate each alpha
    as an exact rational.  Independent of the divisor machinery; small ranges only."""
    hits = []
    for x in range(x_lo, x_hi + 1):
        for y in range(x + s + 2, 2 * x + 2):
            alphas = []
            for i in range(1, i_max + 1):
                a = alpha_xy(s, x, y, i)
                if a.denominator != 1:
                    break
                alphas.append(int(a))
            else:
                hits.append(Hit(s, x, y, tuple(alphas)))
    return hits


# --- checkpoint file -------------------------------------------------------
#
# One record per completed chunk:
#   x_lo x_hi s_lo s_hi done hit_count
# followed by hit_count lines:
#   HIT s x y alpha_1 .. alpha_imax
# Plain decimal ASCII, space separated.


def append_checkpoint(path: str, chunk: SearchChunk) -> None:
    with open(path, "a", encoding="ascii") as fh:
        fh.write(
            f"{chunk.x_lo} {chunk.x_hi} {chunk.s_lo} {chunk.s_hi} "
            f"{chunk.status} {len(chunk.hits)}\n"
        )
        for h in chunk.hits:
            alphas = " ".join(map(str, h.alphas))
            fh.write(f"HIT {h.s} {h.x} {h.y} {alphas}\n")
        fh.flush()
        os.fsync(fh.fileno())


def load_checkpoint(path: str) -> list[SearchChunk]:
    chunks: list[SearchChunk] = []
    if not os.path.exists(path):
        return chunks
    with open(path, encoding="ascii") as fh:
        current: SearchChunk | None = None
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "HIT":
                if current is None:
                    raise ValueError("HIT record before any chunk record")
                s, x, y = map(int, parts[1:4])
                alphas = tuple(map(int, parts[4:]))
                current.hits.append(Hit(s, x, y, alphas))
            else:
                x_lo, x_hi, s_lo, s_hi = map(int, parts[:4])
                current = SearchChunk(x_lo, x_hi, s_lo, s_hi, parts[4], [])
                chunks.append(current)
    return chunks


def plan_chunks(
    x_lo: int, x_hi: int, s_lo: int, s_hi: int, chunk_size: int
) -> list[SearchChunk]:
    """Disjoint x-chunks covering [x_lo, x_hi], in canonical order."""
    chunks = []
    lo = x_lo
    while lo <= x_hi:
        hi = min(lo + chunk_size - 1, x_hi)
        chunks.append(SearchChunk(lo, hi, s_lo, s_hi))
        lo = hi + 1
    return chunks


@dataclass
class SearchResult:
    chunks: list[SearchChunk]
    hits: list[Hit]
    x_covered: int      # all of [x_lo .. x_covered] is attested hit-checked


_WORKER_I_MAX = DEFAULT_I_MAX


def _init_worker(i_max: int) -> None:
    global _WORKER_I_MAX
    _WORKER_I_MAX = i_max


def _run_chunk(chunk: SearchChunk) -> SearchChunk:
    return search_chunk(chunk, _WORKER_I_MAX)


def run_search(
    x_lo: int = 1,
    x_hi: int = 10_000_000,
    s_lo: int = S_DEFAULT_LO,
    s_hi: int = S_DEFAULT_HI,
    chunk_size: int = DEFAULT_CHUNK,
    workers: int | None = None,
    checkpoint: str | None = None,
    resume: bool = False,
    i_max: int = DEFAULT_I_MAX,
    progress=None,
) -> SearchResult:
    """Drive the chunked search; deterministic final output regardless of scheduling.

    Completed chunks are appended to the checkpoint as they finish (hits are
    flushed immediately); the merged result is ordered canonically.
    """
    workers = workers or os.cpu_count() or 1
    todo = plan_chunks(x_lo, x_hi, s_lo, s_hi, chunk_size)
    done: dict[tuple, SearchChunk] = {}
    if resume and checkpoint:
        for c in load_checkpoint(checkpoint):
            if c.status == "done" and c.s_lo == s_lo and c.s_hi == s_hi:
                done[(c.x_lo, c.x_hi)] = c
    pending = [c for c in todo if (c.x_lo, c.x_hi) not in done]

    results: list[SearchChunk] = list(done.values())
    if pending:
        if workers > 1 and len(pending) > 1:
            ctx = mp.get_context("fork")
            with ctx.Pool(workers, initializer=_init_worker, initargs=(i_max,)) as pool:
                for chunk in pool.imap_unordered(_run_chunk, pending):
                    results.append(chunk)
                    if checkpoint:
                        append_checkpoint(checkpoint, chunk)
                    if progress:
                        progress(chunk)
        else:
            for c in pending:
                chunk = search_chunk(c, i_max)
                results.append(chunk)
                if checkpoint:
                    append_checkpoint(checkpoint, chunk)
                if progress:
                    progress(chunk)

    results.sort(key=lambda c: c.x_lo)
    hits = sorted((h for c in results for h in c.hits), key=Hit.key)
    x_covered = x_lo - 1
    for c in results:
        if c.x_lo == x_covered + 1 and c.status == "done":
            x_covered = c.x_hi
        else:
            break
    return SearchResult(results, hits, x_covered)
