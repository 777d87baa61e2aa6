"""Dense multivariate polynomials over the integers or a prime field.

Coefficients are stored in a numpy object array whose axis ``v`` has length
``bound_v + 1``.  C-order flattening of that array is lexicographic order on
exponent vectors with variable 0 most significant, which is the monomial
order used by exact division.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .rings import ExactnessError, IntegerRing, OpTally, PrimeField, ShapeError

__all__ = [
    "MultiPoly",
    "PolynomialRing",
    "poly_add",
    "poly_eval",
    "poly_exact_div",
    "poly_mul",
    "poly_sub",
]


def _normalize(coeffs: np.ndarray) -> np.ndarray:
    """Trim trailing all-zero slabs so every bound is tight."""
    for axis in range(coeffs.ndim):
        size = coeffs.shape[axis]
        while size > 1 and not np.any(np.take(coeffs, size - 1, axis=axis) != 0):
            size -= 1
        if size != coeffs.shape[axis]:
            coeffs = np.take(coeffs, range(size), axis=axis)
    return coeffs


class MultiPoly:
    """Immutable polynomial in ``nvars`` variables with dense coefficients."""

    def __init__(self, coeffs, base=None, *, normalized: bool = False):
        base = base if base is not None else IntegerRing()
        arr = np.array(coeffs, dtype=object)
        if arr.ndim and 0 in arr.shape:
            raise ShapeError("coefficient array must be non-empty along every axis")
        if not normalized:
            arr = _normalize(base.check_array(arr))
        arr.flags.writeable = False
        self.coeffs = arr
        self.base = base

    @classmethod
    def zero(cls, nvars: int, base=None) -> MultiPoly:
        return cls(np.zeros((1,) * nvars, dtype=object), base, normalized=True)

    @classmethod
    def constant(cls, c, nvars: int, base=None) -> MultiPoly:
        base = base if base is not None else IntegerRing()
        arr = np.zeros((1,) * nvars, dtype=object)
        arr[(0,) * nvars] = base.coerce(c)
        return cls(arr, base, normalized=True)

    @classmethod
    def variable(cls, index: int, nvars: int, base=None) -> MultiPoly:
        if not 0 <= index < nvars:
            raise ShapeError(f"variable index {index} out of range for {nvars} variables")
        shape = [1] * nvars
        shape[index] = 2
        arr = np.zeros(shape, dtype=object)
        arr[tuple(1 if v == index else 0 for v in range(nvars))] = 1
        return cls(arr, base, normalized=True)

    @classmethod
    def from_terms(cls, terms, nvars: int, base=None) -> MultiPoly:
        """Build from ``{exponents: coeff}`` or an iterable of ``[coeff, e1, ..., es]``."""
        base = base if base is not None else IntegerRing()
        if isinstance(terms, dict):
            items = [(tuple(e), c) for e, c in terms.items()]
        else:
            items = [(tuple(t[1:]), t[0]) for t in terms]
        for exps, _ in items:
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ShapeError(f"bad exponent vector {exps} for {nvars} variables")
        shape = tuple(max((e[v] for e, _ in items), default=0) + 1 for v in range(nvars))
        arr = np.zeros(shape, dtype=object)
        for exps, c in items:
            arr[exps] += int(c)
        return cls(arr, base)

    @property
    def nvars(self) -> int:
        return self.coeffs.ndim

    @property
    def bounds(self) -> tuple[int, ...]:
        return tuple(d - 1 for d in self.coeffs.shape)

    @property
    def size(self) -> int:
        return self.coeffs.size

    def is_zero(self) -> bool:
        return not np.any(self.coeffs != 0)

    def terms(self) -> dict[tuple[int, ...], int]:
        return {idx: int(c) for idx, c in np.ndenumerate(self.coeffs) if c != 0}

    def coefficient(self, exps: tuple[int, ...]) -> int:
        if any(e > b for e, b in zip(exps, self.bounds)):
            return 0
        return self.coeffs[tuple(exps)]

    def max_abs_coeff(self) -> int:
        return max(abs(int(c)) for c in self.coeffs.flat)

    @cached_property
    def _key(self):
        return (self.coeffs.shape, tuple(self.coeffs.flat))

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.base == other.base and self._key == other._key
        if isinstance(other, int):
            return self.coeffs.size == 1 and self.coeffs.flat[0] == self.base.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash(self._key)

    def __add__(self, other):
        return poly_add(self, _lift(other, self))

    __radd__ = __add__

    def __sub__(self, other):
        return poly_sub(self, _lift(other, self))

    def __rsub__(self, other):
        return poly_sub(_lift(other, self), self)

    def __mul__(self, other):
        return poly_mul(self, _lift(other, self))

    __rmul__ = __mul__

    def __neg__(self):
        return MultiPoly(-self.coeffs, self.base)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        names = ["x"] if self.nvars == 1 else [f"x{v + 1}" for v in range(self.nvars)]
        out = []
        for exps in sorted(self.terms(), reverse=True):
            c = int(self.coeffs[exps])
            if isinstance(self.base, PrimeField):
                c = self.base.symmetric(c)
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, exps) if e
            )
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(out) if out else "0"

    def digest(self) -> str:
        return hashlib.sha256(str(self).encode()).hexdigest()[:16]


def _lift(x, like: MultiPoly) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    return MultiPoly.constant(x, like.nvars, like.base)


def _check_compatible(a: MultiPoly, b: MultiPoly) -> None:
    if a.nvars != b.nvars:
        raise ShapeError(f"variable count mismatch: {a.nvars} vs {b.nvars}")
    if a.base != b.base:
        raise ShapeError(f"coefficient ring mismatch: {a.base} vs {b.base}")


def _padded(p: MultiPoly, shape) -> np.ndarray:
    out = np.zeros(shape, dtype=object)
    out[tuple(slice(0, d) for d in p.coeffs.shape) + (...,)] = p.coeffs
    return out


def _addsub(a: MultiPoly, b: MultiPoly, sign: int, tally: OpTally | None) -> MultiPoly:
    _check_compatible(a, b)
    shape = tuple(max(x, y) for x, y in zip(a.coeffs.shape, b.coeffs.shape))
    out = _padded(a, shape)
    view = out[tuple(slice(0, d) for d in b.coeffs.shape) + (...,)]
    view[...] = view + sign * b.coeffs
    if tally is not None:
        tally.c_add += int(np.prod([min(x, y) for x, y in zip(a.coeffs.shape, b.coeffs.shape)]))
    return MultiPoly(out, a.base)


def poly_add(a: MultiPoly, b: MultiPoly, tally: OpTally | None = None) -> MultiPoly:
    return _addsub(a, b, 1, tally)


def poly_sub(a: MultiPoly, b: MultiPoly, tally: OpTally | None = None) -> MultiPoly:
    return _addsub(a, b, -1, tally)


def poly_mul(a: MultiPoly, b: MultiPoly, tally: OpTally | None = None) -> MultiPoly:
    """Classical dense product; every coefficient pair is multiplied."""
    _check_compatible(a, b)
    shape = tuple(x + y - 1 for x, y in zip(a.coeffs.shape, b.coeffs.shape))
    out = np.zeros(shape, dtype=object)
    for idx, c in np.ndenumerate(a.coeffs):
        view = out[tuple(slice(i, i + d) for i, d in zip(idx, b.coeffs.shape)) + (...,)]
        view[...] = view + c * b.coeffs
    if tally is not None:
        products = a.size * b.size
        tally.c_mul += products
        tally.c_add += products - out.size
    return MultiPoly(out, a.base)


def poly_exact_div(a: MultiPoly, b: MultiPoly, tally: OpTally | None = None) -> MultiPoly:
    """Quotient ``a / b``; raises :class:`ExactnessError` on a nonzero remainder.

    Classical lexicographic division: the remainder's leading term is divided
    by the leading term of ``b`` and ``t * b`` is subtracted, once per
    quotient term.  Leading terms only ever move down in lex order, so a
    single descending sweep over the flattened array visits them all.
    """
    _check_compatible(a, b)
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return MultiPoly.zero(a.nvars, a.base)
    qshape = tuple(x - y + 1 for x, y in zip(a.coeffs.shape, b.coeffs.shape))
    if any(d <= 0 for d in qshape):
        raise ExactnessError(f"degree bounds {b.bounds} exceed dividend bounds {a.bounds}")
    base = a.base
    bflat = b.coeffs.reshape(-1)
    lead_flat = max(i for i in range(bflat.size) if bflat[i] != 0)
    lead = np.unravel_index(lead_flat, b.coeffs.shape)
    lc = bflat[lead_flat]
    rem = np.array(a.coeffs, dtype=object)
    rflat = rem.reshape(-1)
    q = np.zeros(qshape, dtype=object)
    for pos in range(rflat.size - 1, -1, -1):
        c = rflat[pos]
        if c == 0:
            continue
        idx = np.unravel_index(pos, rem.shape)
        shift = tuple(int(i) - int(l) for i, l in zip(idx, lead))
        if any(s < 0 or s >= d for s, d in zip(shift, qshape)):
            raise ExactnessError(f"nonzero remainder at exponent {tuple(map(int, idx))}")
        t = base.div(c, lc)
        q[shift] = t
        view = rem[tuple(slice(s, s + d) for s, d in zip(shift, b.coeffs.shape)) + (...,)]
        view[...] = base.check_array(view - t * b.coeffs)
        if tally is not None:
            tally.c_div += 1
            tally.c_mul += b.size
            tally.c_add += b.size
    return MultiPoly(q, base)


def poly_eval(a: MultiPoly, var_index: int, point, tally: OpTally | None = None) -> MultiPoly:
    """Substitute ``point`` for variable ``var_index`` (Horner along that axis)."""
    if not 0 <= var_index < a.nvars:
        raise ShapeError(f"variable index {var_index} out of range for {a.nvars} variables")
    point = a.base.coerce(point)
    arr = np.moveaxis(a.coeffs, var_index, 0)
    acc = np.array(arr[-1], dtype=object)
    for k in range(arr.shape[0] - 2, -1, -1):
        acc = a.base.check_array(np.asarray(acc * point + arr[k], dtype=object))
    if tally is not None:
        steps = a.size - a.size // arr.shape[0]
        tally.c_mul += steps
        tally.c_add += steps
    return MultiPoly(acc, a.base)


@dataclass(frozen=True)
class PolynomialRing:
    """Ring of polynomials in ``nvars`` variables over ``base``.

    Ring-level operations forward to the dense classical kernels, which add
    scalar-level counts (one per coefficient operation) to the tally.
    """

    nvars: int
    base: IntegerRing | PrimeField = IntegerRing()

    @property
    def name(self) -> str:
        return f"poly:{self.nvars}/{self.base.name}"

    @property
    def zero(self) -> MultiPoly:
        return MultiPoly.zero(self.nvars, self.base)

    @property
    def one(self) -> MultiPoly:
        return MultiPoly.constant(1, self.nvars, self.base)

    def coerce(self, x) -> MultiPoly:
        if isinstance(x, MultiPoly):
            if x.nvars != self.nvars or x.base != self.base:
                raise ShapeError(f"{x!r} does not belong to {self.name}")
            return x
        return MultiPoly.constant(x, self.nvars, self.base)

    def is_zero(self, a: MultiPoly) -> bool:
        return a.is_zero()

    def neg(self, a: MultiPoly) -> MultiPoly:
        return -a

    def add(self, a, b, tally=None):
        return poly_add(a, b, tally)

    def sub(self, a, b, tally=None):
        return poly_sub(a, b, tally)

    def mul(self, a, b, tally=None):
        return poly_mul(a, b, tally)

    def div(self, a, b, tally=None):
        return poly_exact_div(a, b, tally)

    def format(self, a: MultiPoly) -> str:
        return str(a)
