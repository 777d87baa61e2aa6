"""Determinants of integer and integer-polynomial matrices by the modular method.

Pipeline: bound the answer, pick word-sized primes whose product clears twice
the bound, reduce the matrix modulo each prime, evaluate every variable on a
grid of ``n*p + 1`` points, take field determinants with the combined
algorithm, interpolate variable by variable, then fold residues across primes
with the Chinese remainder theorem and lift symmetrically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import islice, product
from typing import Iterable, NamedTuple

import numpy as np
import sympy

from .algorithms import MatrixData, as_matrix, det_combined
from .complexity import optimal_r_by_counts
from .poly import MultiPoly, PolynomialRing, poly_eval
from .rings import IntegerRing, OpTally, PrimeField

__all__ = [
    "CRTState",
    "InvariantError",
    "ModulusPlan",
    "PlanError",
    "coeff_bound_poly",
    "crt_fold",
    "det_mod_prime",
    "det_modular",
    "default_prime_pool",
    "evaluation_grid",
    "hadamard_bound",
    "interpolate_variable",
    "plan_moduli",
    "select_primes",
    "symmetric_lift",
]

DEFAULT_WORD_BITS = 31


class PlanError(ValueError):
    """The prime pool cannot satisfy the plan."""


class InvariantError(RuntimeError):
    """A reconstructed value violated a bound it must satisfy."""


def default_prime_pool(word_bits: int = DEFAULT_WORD_BITS):
    """Primes below ``2**word_bits`` in descending order."""
    p = 1 << word_bits
    while True:
        p = sympy.prevprime(p)
        if p < 3:
            return
        yield p


def evaluation_grid(size: int) -> list[int]:
    """``0, 1, -1, 2, -2, ...`` truncated to ``size`` points."""
    return [(k + 1) // 2 * (1 if k % 2 else -1) for k in range(size)]


def hadamard_bound(A) -> int:
    """``ceil(prod_i ||row_i||_2)``, computed exactly from the squared norms."""
    A = as_matrix(A)
    prod = 1
    for row in A.rows:
        prod *= sum(int(x) ** 2 for x in row)
    return 0 if prod == 0 else math.isqrt(prod - 1) + 1


def _poly_shape(A: MatrixData) -> tuple[int, list[int], int]:
    """Variable count, per-variable entry degree caps, and coefficient bound B."""
    s = A.ring.nvars
    caps = [max(e.bounds[v] for e in A.entries()) for v in range(s)]
    B = max(e.max_abs_coeff() for e in A.entries())
    return s, caps, B


def coeff_bound_poly(A) -> int:
    """Bound on every coefficient of det A: ``n! * B**n * (p+1)**(s*(n-1))``.

    Each of the n! permutation products contributes to a fixed monomial
    through at most ``(p+1)**(s*(n-1))`` choices of entry monomials, each a
    product of n coefficients bounded by B.  With per-variable caps p_v the
    factor is ``prod_v (p_v+1)**(n-1)``.
    """
    A = as_matrix(A)
    s, caps, B = _poly_shape(A)
    n = A.n
    return math.factorial(n) * B**n * math.prod((c + 1) ** (n - 1) for c in caps)


@dataclass(frozen=True)
class ModulusPlan:
    primes: tuple[int, ...]
    points_per_variable: tuple[int, ...]
    coefficient_bound: int
    degree_bounds: tuple[int, ...]
    grids: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def modulus(self) -> int:
        return math.prod(self.primes)


def _is_poly(A: MatrixData) -> bool:
    return isinstance(A.ring, PolynomialRing)


def _check_integer_coefficients(A: MatrixData) -> None:
    base = A.ring.base if _is_poly(A) else A.ring
    if not isinstance(base, IntegerRing):
        raise TypeError(f"modular determinant needs integer coefficients, got {base}")


def select_primes(bound: int, pool: Iterable[int], grids, max_point: int) -> tuple[int, ...]:
    chosen: list[int] = []
    prod = 1
    seen = set()
    for p in pool:
        if chosen and prod > 2 * bound:
            break
        if p in seen or not sympy.isprime(p) or p < 3:
            raise PlanError(f"prime pool entry {p} is not a new odd prime")
        seen.add(p)
        if p <= max_point or any(len({x % p for x in g}) != len(g) for g in grids):
            raise PlanError(f"prime {p} is too small for the evaluation grid")
        chosen.append(p)
        prod *= p
    if not chosen or prod <= 2 * bound:
        raise PlanError(f"prime pool exhausted: product {prod} does not exceed 2*{bound}")
    return tuple(chosen)


def plan_moduli(A, prime_pool: Iterable[int] | None = None) -> ModulusPlan:
    """Fewest leading pool primes whose product exceeds twice the coefficient bound."""
    A = as_matrix(A)
    _check_integer_coefficients(A)
    pool = prime_pool if prime_pool is not None else default_prime_pool()
    if _is_poly(A):
        _, caps, _ = _poly_shape(A)
        bound = coeff_bound_poly(A)
        degrees = tuple(A.n * c for c in caps)
    else:
        bound = hadamard_bound(A)
        degrees = ()
    grids = tuple(tuple(evaluation_grid(d + 1)) for d in degrees)
    max_point = max((abs(x) for g in grids for x in g), default=0)
    primes = select_primes(bound, iter(pool), grids, max_point)
    return ModulusPlan(primes, tuple(d + 1 for d in degrees), bound, degrees, grids)


def det_mod_prime(A, *, tally: OpTally | None = None) -> int:
    """Field determinant by the combined algorithm at the count-optimal switch point."""
    A = as_matrix(A)
    if not isinstance(A.ring, PrimeField):
        raise TypeError(f"expected a prime-field matrix, got {A.ring}")
    r = optimal_r_by_counts(A.n) if A.n >= 4 else A.n - 1
    return det_combined(A, r, tally=tally).value


def interpolate_variable(values, grid, prime: int, *, tally: OpTally | None = None) -> list[int]:
    """Coefficients (lowest degree first) of the interpolant through ``(grid, values)`` mod prime.

    Newton divided differences, then expansion of the Newton form.
    """
    if len(values) != len(grid):
        raise ValueError("need one value per grid point")
    xs = [x % prime for x in grid]
    if len(set(xs)) != len(xs):
        raise PlanError(f"grid points coincide modulo {prime}")
    k = len(xs)
    dd = [v % prime for v in values]
    for level in range(1, k):
        for i in range(k - 1, level - 1, -1):
            denom = pow((xs[i] - xs[i - level]) % prime, -1, prime)
            dd[i] = (dd[i] - dd[i - 1]) * denom % prime
    coeffs = [0] * k
    for i in range(k - 1, -1, -1):
        # coeffs <- coeffs * (x - xs[i]) + dd[i]
        for j in range(k - 1, 0, -1):
            coeffs[j] = (coeffs[j - 1] - xs[i] * coeffs[j]) % prime
        coeffs[0] = (dd[i] - xs[i] * coeffs[0]) % prime
    if tally is not None:
        tally.c_div += k * (k - 1) // 2
        tally.c_add += k * (k - 1) + k * k
        tally.c_mul += k * (k - 1) // 2 + k * k
    return coeffs


class CRTState(NamedTuple):
    residue: int
    modulus: int


def crt_fold(state: CRTState | None, residue: int, prime: int) -> CRTState:
    """Combine ``state`` with ``residue mod prime``; ``None`` starts a new fold."""
    if state is None:
        return CRTState(residue % prime, prime)
    r0, m0 = state
    if math.gcd(m0, prime) != 1:
        raise ValueError(f"modulus {prime} is not coprime to {m0}")
    t = (residue - r0) * pow(m0, -1, prime) % prime
    return CRTState(r0 + m0 * t, m0 * prime)


def symmetric_lift(residue: int, modulus: int) -> int:
    """Representative of ``residue`` in ``(-modulus/2, modulus/2]``."""
    r = residue % modulus
    return r - modulus if r > modulus // 2 else r


def _field_values_poly(A: MatrixData, plan: ModulusPlan, prime: int, det_tally, conv_tally) -> np.ndarray:
    F = PrimeField(prime)
    reduced = [
        [MultiPoly(np.asarray(e.coeffs) % prime, F) for e in row] for row in A.rows
    ]
    if conv_tally is not None:
        conv_tally.c_div += sum(e.size for e in A.entries())
    values = np.zeros(plan.points_per_variable, dtype=object)
    for idx in product(*(range(k) for k in plan.points_per_variable)):
        point = [plan.grids[v][i] for v, i in enumerate(idx)]
        rows = []
        for row in reduced:
            out = []
            for e in row:
                for x in point:
                    e = poly_eval(e, 0, x, conv_tally)
                out.append(int(e.coeffs[()]))
            rows.append(out)
        values[idx] = det_mod_prime(MatrixData(tuple(map(tuple, rows)), F), tally=det_tally)
    for v in range(len(plan.points_per_variable)):
        values = np.apply_along_axis(
            lambda col: np.array(interpolate_variable(list(col), plan.grids[v], prime, tally=conv_tally),
                                 dtype=object),
            v, values,
        )
    return values


def det_modular(A, *, prime_pool: Iterable[int] | None = None,
                tally: OpTally | None = None, conversion_tally: OpTally | None = None,
                plan: ModulusPlan | None = None):
    """Exact determinant of an integer or integer-polynomial matrix via residues.

    ``tally`` receives the operations of the field determinants only;
    reduction, evaluation, interpolation and CRT work goes to
    ``conversion_tally``.
    """
    A = as_matrix(A)
    _check_integer_coefficients(A)
    if not A.is_square:
        raise ValueError(f"determinant needs a square matrix, got {A.n}x{A.m}")
    plan = plan if plan is not None else plan_moduli(A, prime_pool)
    if not _is_poly(A):
        state = None
        for p in plan.primes:
            F = PrimeField(p)
            Ap = A.map(F.coerce, F)
            if conversion_tally is not None:
                conversion_tally.c_div += A.n * A.m
            state = crt_fold(state, det_mod_prime(Ap, tally=tally), p)
        value = symmetric_lift(state.residue, state.modulus)
        if abs(value) > plan.coefficient_bound:
            raise InvariantError(f"|det| = {abs(value)} exceeds the Hadamard bound {plan.coefficient_bound}")
        return A.ring.coerce(value)

    states = None
    for p in plan.primes:
        vals = _field_values_poly(A, plan, p, tally, conversion_tally)
        if states is None:
            states = np.empty(vals.shape, dtype=object)
            for idx, v in np.ndenumerate(vals):
                states[idx] = crt_fold(None, v, p)
        else:
            for idx, v in np.ndenumerate(vals):
                states[idx] = crt_fold(states[idx], v, p)
        if conversion_tally is not None:
            conversion_tally.c_mul += 2 * vals.size
            conversion_tally.c_div += vals.size
    coeffs = np.empty(states.shape, dtype=object)
    for idx, st in np.ndenumerate(states):
        c = symmetric_lift(st.residue, st.modulus)
        if abs(c) > plan.coefficient_bound:
            raise InvariantError(f"coefficient {c} exceeds the bound {plan.coefficient_bound}")
        coeffs[idx] = c
    return MultiPoly(coeffs, A.ring.base)


def take_primes(n: int, word_bits: int = DEFAULT_WORD_BITS) -> list[int]:
    return list(islice(default_prime_pool(word_bits), n))
