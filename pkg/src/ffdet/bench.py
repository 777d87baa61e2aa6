"""Matrix ingestion, seeded generation and instrumented benchmark records."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import random
import time
from dataclasses import asdict, dataclass, fields

import numpy as np

from .algorithms import MatrixData, det_combined, det_dodgson, det_dodgson_rect, det_one_pass
from .complexity import counts_combined, counts_dodgson, counts_one_pass, optimal_r_by_counts
from .modular import det_modular, plan_moduli
from .poly import MultiPoly, PolynomialRing
from .rings import IntegerRing, OpTally, PrimeField

ALGORITHMS = ("dodgson", "one-pass", "combined", "modular")
DEFAULT_RANGE = (-99, 99)
RESAMPLE_LIMIT = 50


class InputError(ValueError):
    """Malformed matrix file, ring descriptor or option."""


@dataclass(frozen=True)
class RingSpec:
    ring: object
    label: str
    degree: int = 0

    @property
    def integer_coefficients(self) -> bool:
        base = self.ring.base if isinstance(self.ring, PolynomialRing) else self.ring
        return isinstance(base, IntegerRing)


def _scalar_ring(text: str):
    if text == "int":
        return IntegerRing(64)
    if text == "bigint":
        return IntegerRing()
    if text.startswith("primefield:"):
        try:
            return PrimeField(int(text.split(":", 1)[1]))
        except ValueError as exc:
            raise InputError(f"bad prime field descriptor {text!r}: {exc}") from None
    raise InputError(f"unknown ring {text!r}")


def parse_ring(text: str) -> RingSpec:
    """``int | bigint | primefield:M | poly:S,P[/int|/bigint|/primefield:M]``."""
    text = text.strip()
    if text.startswith("poly:"):
        body, _, base = text[5:].partition("/")
        try:
            s, p = (int(x) for x in body.split(","))
        except ValueError:
            raise InputError(f"bad polynomial ring descriptor {text!r}") from None
        if s < 0 or p < 0:
            raise InputError(f"negative s or p in {text!r}")
        return RingSpec(PolynomialRing(s, _scalar_ring(base or "bigint")), text, p)
    return RingSpec(_scalar_ring(text), text)


# -- matrix files --------------------------------------------------------------


def parse_matrix(text: str, ring_spec: RingSpec | None = None) -> MatrixData:
    """Parse an integer matrix (``n m`` then rows) or a JSON polynomial matrix.

    The first non-blank character decides: ``{`` means polynomial JSON.
    """
    stripped = text.lstrip()
    if not stripped:
        raise InputError("empty matrix file")
    if stripped[0] == "{":
        return _parse_poly_matrix(stripped)
    tokens = stripped.split()
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise InputError(f"non-integer token: {exc}") from None
    if len(nums) < 2:
        raise InputError("missing 'n m' header")
    n, m = nums[0], nums[1]
    if n < 1 or m < n:
        raise InputError(f"bad dimensions {n}x{m} (need 1 <= n <= m)")
    if len(nums) - 2 != n * m:
        raise InputError(f"expected {n * m} entries, found {len(nums) - 2}")
    ring = ring_spec.ring if ring_spec is not None else IntegerRing()
    if isinstance(ring, PolynomialRing):
        raise InputError("integer matrix file given with a polynomial ring")
    vals = nums[2:]
    return MatrixData.from_rows([vals[i * m : (i + 1) * m] for i in range(n)], ring)


def _parse_poly_matrix(text: str) -> MatrixData:
    try:
        doc = json.loads(text)
        s, p, rows = int(doc["s"]), int(doc["p"]), doc["rows"]
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad polynomial matrix document: {exc}") from None
    base = PrimeField(int(doc["modulus"])) if doc.get("modulus") else IntegerRing()
    ring = PolynomialRing(s, base)
    try:
        out = [[MultiPoly.from_terms(terms, s, base) if terms else ring.zero for terms in row] for row in rows]
    except (ValueError, TypeError, IndexError) as exc:
        raise InputError(f"bad polynomial entry: {exc}") from None
    for row in out:
        for e in row:
            if any(b > p for b in e.bounds):
                raise InputError(f"entry {e} exceeds the declared degree {p}")
    if not out or any(len(r) != len(out[0]) for r in out) or len(out[0]) < len(out):
        raise InputError("polynomial matrix must be n x m with 1 <= n <= m")
    return MatrixData(tuple(map(tuple, out)), ring)


def dump_poly_matrix(A: MatrixData, p: int) -> str:
    ring = A.ring
    doc = {
        "s": ring.nvars,
        "p": p,
        "rows": [[[[c, *e] for e, c in sorted(x.terms().items())] for x in row] for row in A.rows],
    }
    if isinstance(ring.base, PrimeField):
        doc["modulus"] = ring.base.modulus
    return json.dumps(doc)


# -- generation ----------------------------------------------------------------


def random_matrix(spec: RingSpec, n: int, m: int, rng: random.Random,
                  lo: int = DEFAULT_RANGE[0], hi: int = DEFAULT_RANGE[1]) -> MatrixData:
    """Uniform entries in ``[lo, hi]``; polynomial entries are fully dense of degree ``spec.degree``."""
    ring = spec.ring
    if isinstance(ring, PolynomialRing):
        shape = (spec.degree + 1,) * ring.nvars
        size = math.prod(shape)

        def entry():
            coeffs = [rng.randint(lo, hi) for _ in range(size)]
            return MultiPoly(_reshape(coeffs, shape), ring.base)

        return MatrixData(tuple(tuple(entry() for _ in range(m)) for _ in range(n)), ring)
    return MatrixData.from_rows([[rng.randint(lo, hi) for _ in range(m)] for _ in range(n)], ring)


def _reshape(flat, shape):
    arr = np.empty(len(flat), dtype=object)
    arr[:] = flat
    return arr.reshape(shape)


def matrix_rng(seed: int, *salt) -> random.Random:
    return random.Random(":".join(map(str, (seed, *salt))))


# -- records -------------------------------------------------------------------


@dataclass
class BenchRecord:
    algorithm: str
    n: int
    r: int | None
    seed: int
    ring: str
    n_mul: int
    n_div: int
    n_add: int
    c_mul: int
    c_div: int
    c_add: int
    formula_n_mul: int | None
    formula_n_div: int | None
    formula_n_add: int | None
    wall_time_ns: int
    result_digest: str

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def formula_match(self) -> bool | None:
        if self.formula_n_mul is None:
            return None
        return (self.n_mul, self.n_div, self.n_add) == (
            self.formula_n_mul, self.formula_n_div, self.formula_n_add)


def format_value(ring, value) -> str:
    if isinstance(value, list):
        return " ".join(format_value(ring, v) for v in value)
    return ring.format(value)


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def formula_counts(algorithm: str, n: int, r: int | None):
    if n < 2:
        return None
    if algorithm == "dodgson" or (algorithm == "combined" and r is not None and r <= 1):
        return counts_dodgson(n)
    if algorithm == "one-pass" or (algorithm == "combined" and r is not None and r >= n - 1):
        return counts_one_pass(n)
    if algorithm == "combined":
        return counts_combined(n, r)
    return None


def resolve_r(r, n: int) -> int:
    if r in (None, "auto"):
        return optimal_r_by_counts(n) if n >= 4 else n - 1
    return int(r)


@dataclass
class RunOutcome:
    value: object
    tally: OpTally
    r: int | None
    pivoted: bool
    extra: list | None = None


def run_algorithm(algorithm: str, A: MatrixData, r=None, *, prime_pool=None) -> RunOutcome:
    """Run one algorithm with a fresh tally."""
    tally = OpTally()
    if algorithm == "dodgson":
        if not A.is_square:
            return RunOutcome(det_dodgson_rect(A, tally=tally), tally, None, False)
        res = det_dodgson(A, tally=tally)
    elif algorithm == "one-pass":
        res = det_one_pass(A, tally=tally)
    elif algorithm == "combined":
        res = det_combined(A, resolve_r(r, A.n), tally=tally)
    elif algorithm == "modular":
        conv = OpTally()
        plan = plan_moduli(A, prime_pool)
        value = det_modular(A, tally=tally, conversion_tally=conv, plan=plan)
        jobs = len(plan.primes) * math.prod(plan.points_per_variable)
        return RunOutcome(value, tally, resolve_r(None, A.n), False, [conv, jobs])
    else:
        raise InputError(f"unknown algorithm {algorithm!r}")
    return RunOutcome(res.value, res.tally, res.r, res.pivoted)


def make_record(algorithm: str, A: MatrixData, spec_label: str, seed: int, outcome: RunOutcome,
                wall_ns: int) -> list[BenchRecord]:
    n = A.n
    formula = None if outcome.pivoted or not A.is_square else formula_counts(algorithm, n, outcome.r)
    t = outcome.tally
    text = format_value(A.ring, outcome.value)
    records = []
    if algorithm == "modular":
        conv, jobs = outcome.extra
        per_job = formula_counts("combined", n, outcome.r)
        formula = None if per_job is None else tuple(jobs * x for x in per_job)
    records.append(BenchRecord(
        algorithm, n, outcome.r, seed, spec_label,
        t.n_mul, t.n_div, t.n_add, t.c_mul, t.c_div, t.c_add,
        *(formula if formula is not None else (None, None, None)),
        wall_ns, digest(text),
    ))
    if algorithm == "modular":
        conv = outcome.extra[0]
        records.append(BenchRecord(
            "modular-conversion", n, outcome.r, seed, spec_label,
            0, 0, 0, conv.c_mul, conv.c_div, conv.c_add, None, None, None, 0, digest(text),
        ))
    return records


def timed_run(algorithm, A, r=None, *, timing=False, prime_pool=None):
    start = time.perf_counter_ns()
    outcome = run_algorithm(algorithm, A, r, prime_pool=prime_pool)
    elapsed = time.perf_counter_ns() - start if timing else 0
    return outcome, elapsed


def pivot_free_matrix(n: int, seed: int, spec: RingSpec, algorithms_and_r, lo=DEFAULT_RANGE[0],
                      hi=DEFAULT_RANGE[1]):
    """First seeded sample on which none of the requested runs pivots."""
    for attempt in range(RESAMPLE_LIMIT):
        A = random_matrix(spec, n, n, matrix_rng(seed, n, attempt), lo, hi)
        outcomes = [(alg, r, run_algorithm(alg, A, r)) for alg, r in algorithms_and_r]
        if not any(o.pivoted for _, _, o in outcomes):
            return A, outcomes
    raise RuntimeError(f"no pivot-free sample for n={n} after {RESAMPLE_LIMIT} attempts")


# -- output --------------------------------------------------------------------


def render(records: list[BenchRecord], fmt: str) -> str:
    cols = BenchRecord.columns()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for rec in records:
            w.writerow(["" if v is None else v for v in astuple_ordered(rec)])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([asdict(r) for r in records], indent=1) + "\n"
    if fmt == "table":
        shown = ["algorithm", "n", "r", "n_mul", "formula_n_mul", "n_div", "formula_n_div",
                 "n_add", "formula_n_add", "c_mul", "result_digest"]
        rows = [[("-" if getattr(r, c) is None else str(getattr(r, c))) for c in shown] for r in records]
        widths = [max(len(c), *(len(row[i]) for row in rows)) if rows else len(c) for i, c in enumerate(shown)]
        lines = ["  ".join(c.rjust(w) for c, w in zip(shown, widths))]
        lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in rows]
        return "\n".join(lines) + "\n"
    raise InputError(f"unknown format {fmt!r}")


def astuple_ordered(rec: BenchRecord) -> list:
    return [getattr(rec, c) for c in BenchRecord.columns()]
