"""Command-line front end: ``det``, ``counts``, ``bench`` and ``plan``.

Exit codes: 0 success, 2 input error, 3 machine-word overflow, 4 internal
invariant violation (inexact division, bound violation, count mismatch).
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from .bench import (
    ALGORITHMS,
    DEFAULT_RANGE,
    InputError,
    format_value,
    make_record,
    matrix_rng,
    parse_matrix,
    parse_ring,
    pivot_free_matrix,
    random_matrix,
    render,
    resolve_r,
    timed_run,
)
from .complexity import modular_mu
from .modular import (
    DEFAULT_WORD_BITS,
    InvariantError,
    PlanError,
    default_prime_pool,
    evaluation_grid,
    plan_moduli,
    select_primes,
)
from .poly import PolynomialRing
from .rings import ArithmeticModeError, ExactnessError, IntegerRing, word_length

EXIT_OK, EXIT_INPUT, EXIT_MODE, EXIT_INVARIANT = 0, 2, 3, 4


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..")
    elif "-" in text[1:]:
        lo, hi = text.split("-", 1)
    else:
        lo = hi = text
    return int(lo), int(hi)


def _parse_pool(text: str | None):
    if not text:
        return None
    return [int(x) for x in text.split(",") if x.strip()]


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _algos(selector: str, integer_coeffs: bool = True) -> list[str]:
    if selector == "all":
        return [a for a in ALGORITHMS if a != "modular" or integer_coeffs]
    if selector not in ALGORITHMS:
        raise InputError(f"unknown algorithm {selector!r}")
    if selector == "modular" and not integer_coeffs:
        raise InputError("the modular method needs integer coefficients")
    return [selector]


def cmd_det(args) -> int:
    spec = parse_ring(args.ring) if args.ring else None
    try:
        with open(args.file) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None
    A = parse_matrix(text, spec)
    integer = isinstance(A.ring.base if isinstance(A.ring, PolynomialRing) else A.ring, IntegerRing)
    algos = _algos(args.algo, integer)
    if not A.is_square and algos != ["dodgson"]:
        raise InputError(f"{A.n}x{A.m} input needs --algo dodgson (rectangular minors)")
    for alg in algos:
        outcome, _ = timed_run(alg, A, args.r, prime_pool=_parse_pool(args.prime_pool))
        print(format_value(A.ring, outcome.value))
    return EXIT_OK


def cmd_counts(args) -> int:
    lo, hi = _parse_range(args.n)
    if lo < 3 or hi > 64 or lo > hi:
        raise InputError(f"--n range must lie within [3, 64], got {args.n}")
    spec = parse_ring(args.ring or "bigint")
    algos = [a for a in _algos(args.algo) if a != "modular"]
    records = []
    for n in range(lo, hi + 1):
        runs = []
        for alg in algos:
            if alg != "combined":
                runs.append((alg, None))
            elif n >= 4:
                rs = range(2, n - 1) if args.r == "all" else [resolve_r(args.r, n)]
                runs += [("combined", r) for r in rs]
        try:
            A, outcomes = pivot_free_matrix(n, args.seed, spec, runs)
        except RuntimeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INVARIANT
        for alg, _, outcome in outcomes:
            records += make_record(alg, A, spec.label, args.seed, outcome, 0)
    text = render(records, args.format)
    mismatches = sum(1 for r in records if r.formula_match() is False)
    status = "EXACT MATCH" if mismatches == 0 else f"MISMATCH ({mismatches} of {len(records)} records)"
    if args.format == "table" and not args.out:
        text += status + "\n"
    else:
        print(status, file=sys.stderr)
    _emit(text, args.out)
    return EXIT_OK if mismatches == 0 else EXIT_INVARIANT


def cmd_bench(args) -> int:
    spec = parse_ring(args.ring or "bigint")
    algos = _algos(args.algo, spec.integer_coefficients)
    n = args.n_int
    m = args.m if args.m is not None else n
    if n < 1 or m < n:
        raise InputError(f"bad dimensions {n}x{m}")
    if m != n and algos != ["dodgson"]:
        raise InputError("rectangular benchmarks need --algo dodgson")
    lo, hi = _parse_range(args.entry_range)
    records = []
    for rep in range(args.reps):
        A = random_matrix(spec, n, m, matrix_rng(args.seed, n, m, rep), lo, hi)
        for alg in algos:
            outcome, ns = timed_run(alg, A, args.r, timing=args.timing, prime_pool=_parse_pool(args.prime_pool))
            records += make_record(alg, A, spec.label, args.seed, outcome, ns)
    _emit(render(records, args.format), args.out)
    return EXIT_OK


def _shape_plan(args) -> dict:
    n, s, p, l, wb = args.n_int, args.s, args.p, args.l, args.word_bits
    B = (1 << (wb * l)) - 1
    if s == 0:
        # Hadamard with every entry at the coefficient bound
        sq = n ** n * B ** (2 * n)
        bound = math.isqrt(sq - 1) + 1 if sq else 0
    else:
        bound = math.factorial(n) * B**n * (p + 1) ** (s * (n - 1))
    grids = [evaluation_grid(n * p + 1)] * s
    pool = _parse_pool(args.prime_pool) or default_prime_pool(wb)
    primes = select_primes(bound, iter(pool), grids, max((n * p + 1) // 2, 0))
    return {"n": n, "s": s, "p": p, "l": l, "word_bits": wb, "bound": bound, "primes": list(primes),
            "points_per_variable": [n * p + 1] * s}


def cmd_plan(args) -> int:
    if args.file:
        with open(args.file) as fh:
            A = parse_matrix(fh.read(), parse_ring(args.ring) if args.ring else None)
        plan = plan_moduli(A, _parse_pool(args.prime_pool))
        if isinstance(A.ring, PolynomialRing):
            s = A.ring.nvars
            p = max((max(e.bounds) if e.bounds else 0) for e in A.entries())
            l = max(word_length(e.max_abs_coeff(), args.word_bits) for e in A.entries())
        else:
            s, p, l = 0, 0, max(word_length(int(x), args.word_bits) for x in A.entries())
        report = {"n": A.n, "s": s, "p": p, "l": l, "word_bits": args.word_bits,
                  "bound": plan.coefficient_bound, "primes": list(plan.primes),
                  "points_per_variable": list(plan.points_per_variable)}
    else:
        if args.n_int is None:
            raise InputError("plan needs a matrix file or --n/--s/--p shape parameters")
        report = _shape_plan(args)
    jobs = len(report["primes"]) * math.prod(report["points_per_variable"])
    report["prime_count"] = len(report["primes"])
    report["rigorous_moduli"] = jobs
    try:
        report["estimated_mu"] = modular_mu(report["n"], report["s"], report["p"], report["l"], report["word_bits"])
    except ValueError:
        report["estimated_mu"] = None
    if args.format == "json":
        print(json.dumps(report))
    else:
        for key in ("n", "s", "p", "l", "word_bits", "bound", "primes", "prime_count",
                    "points_per_variable", "rigorous_moduli", "estimated_mu"):
            val = report[key]
            print(f"{key}: {'n/a' if val is None else val}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffdet", description="Fraction-free determinants and their operation counts.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default):
        p.add_argument("--algo", default="all", help="dodgson | one-pass | combined | modular | all")
        p.add_argument("--r", default="auto", help="switch point for combined: integer or 'auto'")
        p.add_argument("--ring", default=None, help="int | bigint | primefield:M | poly:S,P[/base]")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", default=fmt_default, choices=("csv", "json", "table"))
        p.add_argument("--prime-pool", default=None, help="comma-separated descending primes (testing)")
        p.add_argument("--out", default=None, help="write the report here instead of stdout")

    p = sub.add_parser("det", help="print the determinant of a matrix file")
    p.add_argument("file")
    common(p, "table")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("counts", help="measured vs closed-form operation counts")
    p.add_argument("--n", default="3..12", help="range like 3..12")
    common(p, "table")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("bench", help="seeded benchmark records")
    p.add_argument("--n", dest="n_int", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--entry-range", default=f"{DEFAULT_RANGE[0]}..{DEFAULT_RANGE[1]}")
    p.add_argument("--timing", action="store_true", help="fill wall_time_ns (output no longer reproducible)")
    common(p, "csv")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("plan", help="modulus plan next to the closed-form moduli estimate")
    p.add_argument("file", nargs="?")
    p.add_argument("--n", dest="n_int", type=int, default=None)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--word-bits", type=int, default=DEFAULT_WORD_BITS)
    common(p, "table")
    p.set_defaults(func=cmd_plan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PlanError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticModeError as exc:
        print(f"overflow: {exc}", file=sys.stderr)
        return EXIT_MODE
    except (ExactnessError, InvariantError) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
