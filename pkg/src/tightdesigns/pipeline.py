"""The three-case nonexistence pipeline and per-s certificates.

For each s the pipeline pits a rigorous upper bound on v against a lower
bound and emits one machine-readable certificate:

  * s >= 627        exp(kappa/psi) < 2,000,000 s at b = s, against the
                    analytic prime-gap lower bound (CASE1_ANALYTIC);
  * s in [288,626]  b = s/3 gives exp(kappa/psi) < 1e9, against
                    rho(289) > 1.29e9 from the gap catalog (CASE2);
  * s in [10,287]   the optimized bound plus an attested hit-free search
                    coverage over x (CASE3).

s <= 9 is settled in prior literature and is out of pipeline scope.
Certificates are newline-delimited key=value records built from integers
only, so reruns are byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import prime_engine, search, upper_bound

CASE1_MIN = 627
CASE2_MIN = 288
CASE3_MIN = 10
CASE1_FACTOR = 2_000_000
CASE2_LIMIT = 1_000_000_000
CASE3_LIMIT = 15_000_000_000


class PipelineScopeError(ValueError):
    """Raised for s outside the pipeline's domain (s <= 9: prior literature)."""


@dataclass(frozen=True)
class Certificate:
    """Per-s nonexistence record; contradiction means lower > upper bound
    (or, in case 3, full hit-free search coverage up to the bound)."""

    s: int
    case_tag: str
    lower_v: int
    lower_src: str
    upper_v: int
    upper_b: int
    upper_r: int
    psi: int
    contradiction: bool
    needed_x: int | None = None
    covered_x: int | None = None
    hit_count: int | None = None
    note: str = ""

    def serialize(self) -> str:
        parts = [
            f"s={self.s}",
            f"case={self.case_tag}",
            f"lower_v={self.lower_v}",
            f"lower_src={self.lower_src}",
            f"upper_v={self.upper_v}",
            f"upper_b={self.upper_b}",
            f"upper_r={self.upper_r}",
            f"psi={self.psi}",
            f"contradiction={'true' if self.contradiction else 'false'}",
        ]
        if self.needed_x is not None:
            parts.append(f"needed_x={self.needed_x}")
        if self.covered_x is not None:
            parts.append(f"covered_x={self.covered_x}")
        if self.hit_count is not None:
            parts.append(f"hits={self.hit_count}")
        if self.note:
            parts.append(f"note={self.note}")
        return " ".join(parts)


def catalog_rho(s: int) -> int:
    """rho(s) from the built-in first-occurrence gap catalog (s <= 288)."""
    for rec in prime_engine.KNOWN_GAP_RECORDS:
        if rec.gap >= s:
            return rec.first_prime
    raise PipelineScopeError(f"gap catalog does not reach s={s}")


def certify_case1(s: int, prec: int = upper_bound.DEFAULT_PREC) -> Certificate:
    """s >= 627: explicit large-s bound against the analytic gap bound.

    The contradiction is the integer comparison of the two rigorous bounds;
    the cross-validated exp(kappa/psi) < 2,000,000 s check (direct plus
    analytic chain) must also confirm, else the certificate carries a note.
    """
    r = upper_bound.default_r(s)
    rep = upper_bound.v_upper(s, r, s, prec)
    lower_v = math.floor(prime_engine.dusart_gap_lower(s + 1)) + 2 * s
    upper_v = rep.v_bound if rep.feasible else -1
    note = ""
    if not upper_bound.check_large_s_bound(s, prec):
        note = "large-s-check-failed"
    contradiction = rep.feasible and lower_v > upper_v and not note
    return Certificate(
        s, "CASE1_ANALYTIC", lower_v, "rho-gap-analytic(s+1)+2s",
        upper_v, s, r, rep.psi, contradiction, note=note,
    )


def certify_case2(s: int, prec: int = upper_bound.DEFAULT_PREC) -> Certificate:
    """s in [288, 626]: b = s/3 bound against rho(288) from the catalog."""
    r = upper_bound.default_r(s)
    # pi and the prime window see only floor(s/3); record that integer cutoff
    b = s // 3
    rep = upper_bound.v_upper(s, r, s / 3, prec)
    lower_v = prime_engine.RHO_288 + 2 * s  # rho(s+1) >= rho(288), monotone
    upper_v = rep.v_bound if rep.feasible else -1
    note = ""
    if rep.feasible and not rep.exp_upper.upper < CASE2_LIMIT:
        note = "exp-bound-above-1e9"
    contradiction = rep.feasible and lower_v > upper_v
    return Certificate(
        s, "CASE2", lower_v, "rho288-catalog(s+1>=288)+2s",
        upper_v, b, r, rep.psi, contradiction, note=note,
    )


def coverage_for_s(chunks: list[search.SearchChunk], s: int, x_start: int = 1
                   ) -> tuple[int, int]:
    """(covered_x, hits) attested by done chunks whose s-range contains s.

    covered_x is the largest X with [x_start, X] fully covered by done
    chunks; hits counts recorded hits for this s anywhere in the file.
    """
    spans = sorted(
        (c.x_lo, c.x_hi) for c in chunks
        if c.status == "done" and c.s_lo <= s <= c.s_hi
    )
    covered = x_start - 1
    for lo, hi in spans:
        if lo > covered + 1:
            break
        covered = max(covered, hi)
    hits = sum(1 for c in chunks for h in c.hits if h.s == s)
    return covered, hits


def certify_case3(
    s: int,
    chunks: list[search.SearchChunk],
    prec: int = upper_bound.DEFAULT_PREC,
) -> Certificate:
    """s in [10, 287]: optimized bound plus search-coverage attestation.

    Contradiction requires a feasible bound below the search cap and
    hit-free coverage up to needed_x = upper_v - 3s - 1 (any admissible
    triple with v <= upper_v has x <= needed_x, since y >= x + s + 2 and
    v = y + 2s - 1).
    """
    rep = upper_bound.best_bound(s, prec=prec)
    lower_v = catalog_rho(s + 1) + 2 * s
    upper_v = rep.v_bound if rep.feasible else -1
    note = ""
    if rep.feasible and not rep.exp_upper.upper < CASE3_LIMIT:
        note = "exp-bound-above-15e9"
    needed_x = max(upper_v - 3 * s - 1, 0) if rep.feasible else None
    covered_x, hit_count = coverage_for_s(chunks, s)
    contradiction = False
    if rep.feasible and needed_x is not None:
        if hit_count:
            note = "hits-present"
        elif covered_x >= needed_x:
            contradiction = True
        else:
            note = "coverage-insufficient"
    return Certificate(
        s, "CASE3", lower_v, "rho-catalog(s+1)+2s",
        upper_v, int(rep.b), rep.r, rep.psi, contradiction,
        needed_x=needed_x, covered_x=covered_x, hit_count=hit_count, note=note,
    )


def run_pipeline(
    s_lo: int,
    s_hi: int,
    checkpoint: str | None = None,
    prec: int = upper_bound.DEFAULT_PREC,
) -> list[Certificate]:
    """Certificates for every s in [s_lo, s_hi]; s_lo must be >= 10."""
    if s_lo < CASE3_MIN:
        raise PipelineScopeError(
            f"s <= {CASE3_MIN - 1} is outside pipeline scope "
            "(settled by prior classification work); start at s = 10"
        )
    if s_hi < s_lo:
        raise ValueError("empty s range")
    chunks: list[search.SearchChunk] = []
    if checkpoint:
        chunks = search.load_checkpoint(checkpoint)
    certs = []
    for s in range(s_lo, s_hi + 1):
        if s >= CASE1_MIN:
            certs.append(certify_case1(s, prec))
        elif s >= CASE2_MIN:
            certs.append(certify_case2(s, prec))
        else:
            certs.append(certify_case3(s, chunks, prec))
    return certs


def serialize_certificates(certs: list[Certificate]) -> str:
    return "".join(c.serialize() + "\n" for c in certs)
