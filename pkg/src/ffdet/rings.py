"""Integral-domain element rings and operation tallies.

Every ring exposes the same small protocol used by the determinant
algorithms: ``zero``, ``one``, ``add``, ``sub``, ``mul``, ``div`` (exact
division), ``neg``, ``is_zero`` and ``coerce``.  Arithmetic methods accept an
optional :class:`OpTally` that receives coefficient-level (word or scalar)
operation counts.  Ring-level counts are added by :class:`CountingRing`.
"""
from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np
import sympy

__all__ = [
    "ArithmeticModeError",
    "CountingRing",
    "ExactnessError",
    "IntegerRing",
    "OpTally",
    "PrimeField",
    "ShapeError",
    "is_prime",
    "word_length",
]

WORD_BITS = 64


class ExactnessError(ArithmeticError):
    """An exact division left a nonzero remainder."""


class ArithmeticModeError(OverflowError):
    """A machine-word value overflowed its checked range."""


class ShapeError(ValueError):
    """Operands disagree in variable count or matrix shape."""


@dataclass
class OpTally:
    n_mul: int = 0
    n_div: int = 0
    n_add: int = 0
    c_mul: int = 0
    c_div: int = 0
    c_add: int = 0

    def __add__(self, other: OpTally) -> OpTally:
        return OpTally(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    def merge(self, other: OpTally) -> None:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))

    def ring_counts(self) -> tuple[int, int, int]:
        return self.n_mul, self.n_div, self.n_add

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def is_prime(n: int) -> bool:
    # sympy's isprime is deterministic below 2**64
    return bool(sympy.isprime(n))


def word_length(x: int, word_bits: int = WORD_BITS) -> int:
    """Number of machine words holding ``|x|`` (at least one)."""
    return max(1, -(-abs(x).bit_length() // word_bits))


@dataclass(frozen=True)
class IntegerRing:
    """The integers.

    With ``word_bits=None`` values are arbitrary precision and the tally
    receives word-level counts of the classical (schoolbook) algorithms.
    Otherwise values are checked against a signed ``word_bits`` range and
    every operation costs one scalar operation.
    """

    word_bits: int | None = None

    @property
    def name(self) -> str:
        return "bigint" if self.word_bits is None else "int"

    zero = 0
    one = 1

    def coerce(self, x) -> int:
        return self._check(int(x))

    def is_zero(self, a: int) -> bool:
        return a == 0

    def neg(self, a: int) -> int:
        return self._check(-a)

    def _check(self, x: int) -> int:
        if self.word_bits is not None and abs(x) >= 1 << (self.word_bits - 1):
            raise ArithmeticModeError(f"{x} does not fit a signed {self.word_bits}-bit word")
        return x

    def check_array(self, arr: np.ndarray) -> np.ndarray:
        arr = np.asarray(arr, dtype=object)
        if self.word_bits is not None and arr.size:
            bound = 1 << (self.word_bits - 1)
            if any(abs(v) >= bound for v in arr.flat):
                raise ArithmeticModeError(f"coefficient does not fit a signed {self.word_bits}-bit word")
        return arr

    def add(self, a: int, b: int, tally: OpTally | None = None) -> int:
        if tally is not None:
            tally.c_add += self._add_cost(a, b)
        return self._check(a + b)

    def sub(self, a: int, b: int, tally: OpTally | None = None) -> int:
        if tally is not None:
            tally.c_add += self._add_cost(a, b)
        return self._check(a - b)

    def mul(self, a: int, b: int, tally: OpTally | None = None) -> int:
        if tally is not None:
            if self.word_bits is None:
                la, lb = word_length(a), word_length(b)
                tally.c_mul += la * lb
                tally.c_add += 2 * la * lb
            else:
                tally.c_mul += 1
        return self._check(a * b)

    def div(self, a: int, b: int, tally: OpTally | None = None) -> int:
        if b == 0:
            raise ZeroDivisionError("exact division by zero")
        q, rem = divmod(a, b)
        if rem:
            raise ExactnessError(f"{a} is not divisible by {b}")
        if tally is not None:
            if self.word_bits is None:
                lb = word_length(b)
                qlen = max(1, word_length(a) - lb + 1)
                tally.c_div += qlen
                tally.c_mul += qlen * lb
                tally.c_add += 2 * qlen * lb
            else:
                tally.c_div += 1
        return q

    def _add_cost(self, a: int, b: int) -> int:
        if self.word_bits is None:
            return 2 * max(word_length(a), word_length(b))
        return 1

    def format(self, a: int) -> str:
        return str(a)


@dataclass(frozen=True)
class PrimeField:
    """Integers modulo a word-sized prime; values live in ``[0, modulus)``."""

    modulus: int

    def __post_init__(self):
        if self.modulus < 3:
            raise ValueError(f"modulus must be at least 3, got {self.modulus}")
        if self.modulus >= 1 << WORD_BITS:
            raise ValueError(f"modulus {self.modulus} does not fit one {WORD_BITS}-bit word")
        if not is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")

    @property
    def name(self) -> str:
        return f"primefield:{self.modulus}"

    zero = 0
    one = 1

    def coerce(self, x) -> int:
        return int(x) % self.modulus

    def is_zero(self, a: int) -> bool:
        return a == 0

    def neg(self, a: int) -> int:
        return -a % self.modulus

    def check_array(self, arr: np.ndarray) -> np.ndarray:
        return np.asarray(arr % self.modulus, dtype=object)

    def add(self, a: int, b: int, tally: OpTally | None = None) -> int:
        if tally is not None:
            tally.c_add += 1
        return (a + b) % self.modulus

    def sub(self, a: int, b: int, tally: OpTally | None = None) -> int:
        if tally is not None:
            tally.c_add += 1
        return (a - b) % self.modulus

    def mul(self, a: int, b: int, tally: OpTally | None = None) -> int:
        if tally is not None:
            tally.c_mul += 1
        return a * b % self.modulus

    def inverse(self, a: int) -> int:
        if a % self.modulus == 0:
            raise ZeroDivisionError("zero has no inverse in a field")
        return pow(a, -1, self.modulus)

    def div(self, a: int, b: int, tally: OpTally | None = None) -> int:
        if tally is not None:
            tally.c_div += 1
        return a * self.inverse(b) % self.modulus

    def symmetric(self, a: int) -> int:
        return a - self.modulus if a > self.modulus // 2 else a

    def format(self, a: int) -> str:
        return str(a)


class CountingRing:
    """Forwards to ``ring`` and charges one ring-level operation per call.

    Coefficient-level counts produced inside the ring are accumulated on the
    same tally.
    """

    def __init__(self, ring, tally: OpTally | None = None):
        self.ring = ring
        self.tally = tally if tally is not None else OpTally()

    @property
    def zero(self):
        return self.ring.zero

    @property
    def one(self):
        return self.ring.one

    def is_zero(self, a) -> bool:
        return self.ring.is_zero(a)

    def neg(self, a):
        return self.ring.neg(a)

    def add(self, a, b):
        self.tally.n_add += 1
        return self.ring.add(a, b, self.tally)

    def sub(self, a, b):
        self.tally.n_add += 1
        return self.ring.sub(a, b, self.tally)

    def mul(self, a, b):
        self.tally.n_mul += 1
        return self.ring.mul(a, b, self.tally)

    def div(self, a, b):
        self.tally.n_div += 1
        return self.ring.div(a, b, self.tally)
