"""Seeded matrix generators shared by the test modules."""
import random

from ffdet.algorithms import MatrixData, det_oracle
from ffdet.poly import MultiPoly, PolynomialRing
from ffdet.rings import IntegerRing


def int_matrix(rng: random.Random, n: int, lo: int = -9, hi: int = 9, m: int | None = None):
    return [[rng.randint(lo, hi) for _ in range(m or n)] for _ in range(n)]


def poly_matrix(rng: random.Random, n: int, s: int, p: int, bound: int = 9) -> MatrixData:
    ring = PolynomialRing(s, IntegerRing())

    def entry():
        terms = {}
        for _ in range((p + 1) ** s):
            exps = tuple(rng.randint(0, p) for _ in range(s))
            terms[exps] = rng.randint(-bound, bound)
        return MultiPoly.from_terms(terms, s) if terms else ring.zero

    return MatrixData(tuple(tuple(entry() for _ in range(n)) for _ in range(n)), ring)


def zero_row_matrix(rng, n):
    A = int_matrix(rng, n)
    A[rng.randrange(n)] = [0] * n
    return A


def equal_rows_matrix(rng, n):
    A = int_matrix(rng, n)
    i, j = rng.sample(range(n), 2)
    A[j] = list(A[i])
    return A


def zero_corner_matrix(rng, n, k=None):
    """Invertible matrix whose leading k x k minor vanishes (k = 1 means a11 = 0)."""
    while True:
        A = int_matrix(rng, n)
        kk = k if k is not None else rng.randint(1, n - 1)
        if kk == 1:
            A[0][0] = 0
        else:
            # row kk-1 of the leading block copies row 0 there, the tail stays random
            for c in range(kk):
                A[kk - 1][c] = A[0][c]
        if det_oracle(A) != 0:
            return A
