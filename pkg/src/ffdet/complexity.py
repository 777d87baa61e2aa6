"""Closed-form operation counts and cost models for the three algorithms.

Exact counts are integers; the polynomial-ring and modular cost models use
:class:`fractions.Fraction` so that nothing is rounded before the caller
decides to.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

__all__ = [
    "CostParams",
    "CountTriple",
    "ModularCostEstimate",
    "combined_table_report",
    "counts_combined",
    "counts_combined_unchecked",
    "counts_dodgson",
    "counts_one_pass",
    "integer_cost_by_substitution",
    "leading_M",
    "modular_costs",
    "modular_mu",
    "optimal_r_by_counts",
    "poly_op_time",
    "r_best_integer_coeff",
    "r_best_real",
    "ratio_error",
    "step_costs",
    "table_row_combined",
    "total_step_cost",
]


class CountTriple(NamedTuple):
    n_mul: int
    n_div: int
    n_add: int

    @property
    def mul_div(self) -> int:
        return self.n_mul + self.n_div


def _exact(num: int, den: int) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"closed form {num}/{den} is not an integer")
    return q


def _adds(n: int) -> int:
    return _exact(2 * n**3 - 3 * n**2 + n, 6)


def _need_n(n: int, lo: int) -> None:
    if n < lo:
        raise ValueError(f"n must be at least {lo}, got {n}")


def counts_dodgson(n: int) -> CountTriple:
    _need_n(n, 2)
    return CountTriple(
        _exact(4 * n**3 - 6 * n**2 + 2 * n, 6),
        _exact(2 * n**3 - 9 * n**2 + 13 * n - 6, 6),
        _adds(n),
    )


def counts_one_pass(n: int) -> CountTriple:
    _need_n(n, 2)
    return CountTriple(
        _exact(3 * n**3 - 3 * n**2, 6),
        _exact(n**3 - 3 * n**2 - 4 * n + 12, 6),
        _adds(n),
    )


def counts_combined_unchecked(n: int, r: int) -> CountTriple:
    """The combined-algorithm forms evaluated at any r, including the boundaries."""
    return CountTriple(
        _exact(4 * n**3 - 4 * n - 4 * r**3 + 9 * r**2 * n - 6 * r * n**2 - 3 * r * n + 4 * r, 6),
        _exact(
            2 * n**3 - 3 * n**2 - 5 * n + 12
            - 4 * r**3 + 9 * r**2 * n - 3 * r**2 - 6 * r * n**2 + 3 * r * n + r,
            6,
        ),
        _adds(n),
    )


def counts_combined(n: int, r: int) -> CountTriple:
    _need_n(n, 4)
    if not 2 <= r <= n - 2:
        raise ValueError(f"switch point r must lie in [2, {n - 2}], got {r}")
    return counts_combined_unchecked(n, r)


def optimal_r_by_counts(n: int) -> int:
    """Switch point minimising multiplications plus divisions; ties go to the smaller r."""
    _need_n(n, 4)
    return min(range(2, n - 1), key=lambda r: (counts_combined(n, r).mul_div, r))


def table_row_combined(n: int, v: int) -> tuple[Fraction, Fraction]:
    """Summary-table (N_m, N_d) for the combined algorithm at r = (n + v) / 2."""
    return (
        Fraction(11 * n**3 - 6 * n**2 - (8 + 3 * v) * n + 6 * v, 24),
        Fraction(3 * n**3 - 9 * n**2 - (18 - 3 * v) * n + 48 - 3 * v, 24),
    )


def combined_table_report(n: int) -> list[dict]:
    """Compare the summary-table row with the exact forms for both parities of v.

    Only ``v`` with ``n + v`` even gives an integer switch point; the other
    value is reported with ``r=None``.  Nothing is hidden: ``match`` is False
    whenever the two disagree.
    """
    out = []
    for v in (0, 1):
        row = table_row_combined(n, v)
        entry = {"n": n, "v": v, "table_mul": row[0], "table_div": row[1], "r": None, "match": None}
        if (n + v) % 2 == 0 and 2 <= (n + v) // 2 <= n - 2:
            r = (n + v) // 2
            exact = counts_combined(n, r)
            entry.update(r=r, exact_mul=exact.n_mul, exact_div=exact.n_div,
                         match=row == (exact.n_mul, exact.n_div))
        out.append(entry)
    return out


def ratio_error(values, target) -> float:
    """Largest relative deviation of ``values`` from ``target`` after scaling on the last entry."""
    scale = Fraction(target[-1]) / Fraction(values[-1])
    return max(abs(float(Fraction(v) * scale / Fraction(t) - 1)) for v, t in zip(values, target))


# -- polynomial-ring time model -----------------------------------------------


@dataclass(frozen=True)
class CostParams:
    """Inputs of the polynomial-ring time model.

    ``coeff="real"`` means one-word coefficients with scalar times ``m``, ``d``,
    ``a``.  ``coeff="integer"`` means coefficients of ``l`` words per input
    entry, handled by classical long-integer arithmetic.  ``simplified``
    selects the leading-term preset (``a = 0``, ``m = d = 1``).
    """

    s: int
    p: int
    l: int = 1
    m: Fraction | int = 1
    d: Fraction | int = 1
    a: Fraction | int = 0
    coeff: str = "real"
    simplified: bool = False

    def __post_init__(self):
        if self.s < 0 or self.p < 0 or self.l < 1:
            raise ValueError(f"need s >= 0, p >= 0, l >= 1; got {self}")
        if min(self.m, self.d, self.a) < 0:
            raise ValueError("unit times must be non-negative")
        if self.coeff not in ("real", "integer"):
            raise ValueError(f"coeff must be 'real' or 'integer', got {self.coeff!r}")

    def scalar_add(self, i, j):
        if self.coeff == "real":
            return self.a
        return 2 * j * self.l * self.a

    def scalar_mul(self, i, j):
        if self.coeff == "real":
            return self.m
        return i * j * self.l**2 * (self.m + 2 * self.a)

    def scalar_div(self, i, j):
        if self.coeff == "real":
            return self.d
        l = self.l
        return (i * l - j * l + 1) * (self.d + j * l * (self.m + 2 * self.a))


def _real_leading(kind: str, i, j, e, ps):
    """Leading-term costs with exponent ``e`` on the orders and ``ps`` standing for p^s."""
    if kind == "A":
        return 0
    if kind == "M":
        return i**e * j**e * ps**2
    return (i - j) ** e * j**e * ps**2


def poly_op_time(kind: str, i, j, params: CostParams):
    """Time of one operation between minors of order ``i`` and ``j``.

    ``kind`` is ``"A"`` (add/subtract), ``"M"`` (multiply) or ``"D"`` (exact
    divide; ``i`` is the dividend order).
    """
    if kind not in ("A", "M", "D"):
        raise ValueError(f"kind must be A, M or D, got {kind!r}")
    if kind == "D":
        if not i >= j >= 0:
            raise ValueError(f"division needs i >= j >= 0, got ({i}, {j})")
    elif i < 1 or j < 1:
        raise ValueError(f"orders must be positive, got ({i}, {j})")
    s, p = params.s, params.p
    if params.simplified:
        if params.coeff == "real":
            return _real_leading(kind, i, j, s, p**s)
        l = params.l
        if kind == "A":
            return 0
        if kind == "M":
            return i * j * l**2 * (i * j * p**2) ** s
        return (i - j) ** (s + 1) * j ** (s + 1) * l**2 * p ** (2 * s)
    if kind == "A":
        return (j * p + 1) ** s * params.scalar_add(i, j)
    if kind == "M":
        return (i * p + 1) ** s * (j * p + 1) ** s * (params.scalar_mul(i, j) + params.scalar_add(i + j, i + j))
    return (i * p - j * p + 1) ** s * (
        params.scalar_div(i, j) + (j * p + 1) ** s * (params.scalar_mul(i - j, j) + params.scalar_add(i, i))
    )


def integer_cost_by_substitution(kind: str, i, j, s: int, p: int, l: int):
    """Integer-coefficient leading cost obtained from the one-word model.

    Raises the order exponent from s to s + 1 and replaces p^s by l * p^s.
    """
    return _real_leading(kind, i, j, s + 1, l * p**s)


def step_costs(n: int, r: int, cost: Callable[[str, int, int], object]) -> list:
    """Per-step times of the combined algorithm; ``r <= 1`` is Dodgson, ``r >= n - 1`` one-pass.

    ``cost(kind, i, j)`` prices one operation between minors of orders i and j.
    With unit prices per kind this reproduces the exact operation counts.
    """
    A = lambda i, j: cost("A", i, j)  # noqa: E731
    M = lambda i, j: cost("M", i, j)  # noqa: E731
    D = lambda i, j: cost("D", i, j)  # noqa: E731

    def dodgson(k):
        if k == 1:
            return (n - 1) ** 2 * (2 * M(1, 1) + A(2, 2))
        return (n - k) ** 2 * (2 * M(k, k) + A(2 * k, 2 * k) + D(2 * k, k - 1))

    def one_pass(k):
        if k == 1:
            return (2 * n - 3) * (2 * M(1, 1) + A(2, 2))
        return (n - k) * ((k + 1) * M(k, 1) + k * A(k + 1, k + 1)) + k * (n - k - 1) * (
            2 * M(k, k + 1) + A(2 * k + 1, 2 * k + 1) + D(2 * k + 1, k)
        )

    if r <= 1:
        return [dodgson(k) for k in range(1, n)]
    if r >= n - 1:
        return [one_pass(k) for k in range(1, n)]
    transition = (n - r) ** 2 * ((r + 1) * M(r, 1) + r * A(r + 1, r + 1))
    return [one_pass(k) for k in range(1, r)] + [transition] + [dodgson(k) for k in range(r + 1, n)]


def total_step_cost(n: int, r: int, params: CostParams):
    return sum(step_costs(n, r, lambda kind, i, j: poly_op_time(kind, i, j, params)))


def leading_M(n, r, s: int, p) -> Fraction:
    """Leading-term multiplication/division time of the combined algorithm in closed form.

    ``r = 0`` gives Dodgson and ``r = n`` one-pass.
    """
    n, r = Fraction(n), Fraction(r)
    head = Fraction(2) * n ** (2 * s + 3) / ((2 * s + 1) * (2 * s + 2) * (2 * s + 3))
    inner = (
        4 * r**3 / (2 * s + 3)
        - 6 * r**2 * (n + s + 1) / (2 * s + 2)
        + n * r * (2 * n + 12 * s + 7) / (2 * s + 1)
        - n**2
    )
    return 3 * Fraction(p) ** (2 * s) * (head - r ** (2 * s) / 2 * inner)


def r_best_real(n, s) -> float:
    return n / 2 - 3 * s / 2 + 2


def r_best_integer_coeff(n, s) -> float:
    return n / 2 - 3 * s / 2 + 0.5


# -- modular method ------------------------------------------------------------


@dataclass(frozen=True)
class ModularCostEstimate:
    mu: int
    nu: Fraction
    dodgson: Fraction
    one_pass: Fraction
    combined: Fraction


def modular_mu(n: int, s: int, p: int, l: int, word_bits: int) -> int:
    """Closed-form moduli-count estimate with base-2 logarithms and log m_i = word_bits."""
    if s < 1:
        raise ValueError("the estimate needs s >= 1; plan integer matrices with modular.plan_moduli")
    if n < 1 or p < 1 or l < 1 or word_bits < 1:
        raise ValueError(f"need n, p, l, word_bits >= 1; got {(n, p, l, word_bits)}")
    return math.ceil(p * s * n**2 * (l + math.log2(n * p**3) / (2 * word_bits)))


def modular_costs(n: int, mu: int, m, d) -> ModularCostEstimate:
    if m < 0 or d < 0:
        raise ValueError("unit times must be non-negative")
    nu = Fraction(mu * n**3, 3)
    return ModularCostEstimate(
        mu=mu,
        nu=nu,
        dodgson=(16 * m + 8 * d) * nu,
        one_pass=(12 * m + 4 * d) * nu,
        combined=(11 * m + 3 * d) * nu,
    )
