"""Command-line driver: identity suite, Witt regression, bounds, sieve, search, pipeline.

Exit codes: 0 success, 1 verification failure, 2 resource/configuration error.
All configuration is explicit flags; environment variables are not consulted.
"""

from __future__ import annotations

import argparse
import sys
import time

from fractions import Fraction

from . import identity_suite, pipeline, prime_engine, search, upper_bound
from .design_functions import DesignCandidate, intersection_numbers, lambda_si, alpha_si
from .exact_arith import binomial

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_CONFIG = 2


def _parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    return int(lo), int(hi or lo)


def cmd_identities(args) -> int:
    t0 = time.time()
    reports = identity_suite.verify_all(args.s_max)
    failures = [r for r in reports if not r.verdict]
    for r in reports:
        print(r)
    print(f"# {len(reports)} checks, {len(failures)} failures, {time.time()-t0:.1f}s")
    return EXIT_VERIFY if failures else EXIT_OK


def cmd_witt(args) -> int:
    ok = True

    def check(label, got, want):
        nonlocal ok
        good = got == want
        ok = ok and good
        print(f"{'PASS' if good else 'FAIL'} {label}: {got} (expected {want})")

    c7 = DesignCandidate(2, 23, 7)
    c16 = DesignCandidate(2, 23, 16)
    check("lambda(23,7)", lambda_si(c7, 2), 1)
    check("lambda(23,16)", lambda_si(c16, 2), 52)
    check("intersection numbers (23,7)", intersection_numbers(c7), [1, 3])
    check("intersection numbers (23,16)", intersection_numbers(c16), [10, 12])
    check("block count C(23,2)", binomial(23, 2), 253)
    check("block count via (23,7)", Fraction(binomial(23, 4) * 1, binomial(7, 4)), 253)
    check("block count via (23,16)", Fraction(binomial(23, 4) * 52, binomial(16, 4)), 253)
    for i in (1, 2):
        check(f"alpha_{i}(23,7) integral", alpha_si(c7, i).denominator, 1)
        check(f"alpha_{i}(23,16) integral", alpha_si(c16, i).denominator, 1)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_bounds_upper(args) -> int:
    s = args.s
    r = args.r if args.r is not None else upper_bound.default_r(s)
    try:
        if args.b is not None:
            rep = upper_bound.v_upper(s, r, args.b, args.precision_bits)
        else:
            rep = upper_bound.best_bound(s, r, args.precision_bits)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if not rep.feasible:
        print(f"s={s} r={rep.r} b={rep.b} psi={rep.psi} infeasible")
        return EXIT_OK
    print(
        f"s={s} r={rep.r} b={rep.b} psi={rep.psi} "
        f"exp_upper={rep.exp_upper.float_upper()!r} v_bound={rep.v_bound}"
    )
    return EXIT_OK


def cmd_bounds_lower(args) -> int:
    s = args.s
    try:
        table = prime_engine.build_sieve(args.sieve_limit)
        value = prime_engine.v_lower(s, table)
    except prime_engine.SieveLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except prime_engine.NotFoundBelowLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    rho = value - 2 * s
    print(f"s={s} rho(s+1)={rho} v_lower={value}")
    return EXIT_OK


def cmd_rho(args) -> int:
    try:
        table = prime_engine.build_sieve(args.sieve_limit)
        value = table.rho(args.s)
    except prime_engine.SieveLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except prime_engine.NotFoundBelowLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    prime_free = table.gap_is_prime_free(value, args.s)
    mismatches = prime_engine.cross_check_records(table.gap_records)
    print(f"s={args.s} rho={value} prime_free_interval={prime_free}")
    if mismatches:
        for m in mismatches:
            print(f"CATALOG MISMATCH {m}")
        return EXIT_VERIFY
    if args.export:
        with open(args.export, "w", encoding="ascii") as fh:
            fh.write(table.export_gap_table())
        print(f"gap table exported to {args.export}")
    return EXIT_OK if prime_free else EXIT_VERIFY


def cmd_search(args) -> int:
    s_lo, s_hi = _parse_range(args.s_range)
    t0 = time.time()
    result = search.run_search(
        x_lo=args.x_min,
        x_hi=args.x_max,
        s_lo=s_lo,
        s_hi=s_hi,
        chunk_size=args.chunk_size,
        workers=args.workers,
        checkpoint=args.checkpoint,
        resume=args.resume,
        i_max=args.i_max,
    )
    for h in result.hits:
        alphas = " ".join(map(str, h.alphas))
        print(f"HIT {h.s} {h.x} {h.y} {alphas}  # {h.root_check}")
    print(
        f"# chunks={len(result.chunks)} hits={len(result.hits)} "
        f"covered_x={result.x_covered} elapsed={time.time()-t0:.1f}s"
    )
    return EXIT_OK


def cmd_pipeline(args) -> int:
    s_lo, s_hi = _parse_range(args.s_range)
    try:
        certs = pipeline.run_pipeline(
            s_lo, s_hi, checkpoint=args.checkpoint, prec=args.precision_bits
        )
    except pipeline.PipelineScopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text = pipeline.serialize_certificates(certs)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    sys.stdout.write(text)
    bad = [c for c in certs if not c.contradiction]
    print(f"# {len(certs)} certificates, {len(certs) - len(bad)} contradictions")
    return EXIT_OK if not bad else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tightdesigns",
        description="verification engine and parameter search for tight 2s-designs",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("identities", help="run the polynomial identity suite")
    p.add_argument("--s-max", type=int, default=12)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("witt", help="regression on the two Witt designs")
    p.set_defaults(func=cmd_witt)

    p = sub.add_parser("bounds-upper", help="rigorous upper bound for v at one s")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--b", type=float, default=None,
                   help="cutoff; omit to optimize over b in [1, s]")
    p.add_argument("--precision-bits", type=int, default=upper_bound.DEFAULT_PREC)
    p.set_defaults(func=cmd_bounds_upper)

    p = sub.add_parser("bounds-lower", help="prime-gap lower bound for v at one s")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--sieve-limit", type=int, default=2_000_000)
    p.set_defaults(func=cmd_bounds_lower)

    p = sub.add_parser("rho", help="first-occurrence prime gap rho(s)")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--sieve-limit", type=int, default=2_000_000)
    p.add_argument("--export", type=str, default=None,
                   help="write the gap record table to this path")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("search", help="integrality search over (s, x, y)")
    p.add_argument("--s-range", type=str, default="10:287")
    p.add_argument("--x-min", type=int, default=1)
    p.add_argument("--x-max", type=int, required=True,
                   help=f"search cap on x (full batch range: {search.X_FULL_RANGE})")
    p.add_argument("--chunk-size", type=int, default=search.DEFAULT_CHUNK)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--checkpoint", type=str, default=None)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--i-max", type=int, default=search.DEFAULT_I_MAX)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("pipeline", help="three-case certificates per s")
    p.add_argument("--s-range", type=str, required=True)
    p.add_argument("--checkpoint", type=str, default=None,
                   help="search checkpoint attesting case-3 coverage")
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--precision-bits", type=int, default=upper_bound.DEFAULT_PREC)
    p.set_defaults(func=cmd_pipeline)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
