"""Fraction-free determinant algorithms: Dodgson condensation, one-pass, combined.

All three work over any ring implementing the protocol in :mod:`ffdet.rings`
and route every ring operation through a :class:`CountingRing`, so each
:class:`DetResult` carries an exact operation tally.

Indices below are 0-based; a "step k" in the docstrings is the 1-based step
number, so step k builds minors of order k + 1 around the order-k corner.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .rings import CountingRing, IntegerRing, OpTally, ShapeError

__all__ = [
    "DetResult",
    "MatrixData",
    "as_matrix",
    "det_combined",
    "det_dodgson",
    "det_dodgson_rect",
    "det_one_pass",
    "det_oracle",
    "minor_oracle",
    "permutation_det",
]

ORACLE_MAX_N = 8


@dataclass(frozen=True)
class MatrixData:
    """Dense n x m matrix whose entries all belong to ``ring``."""

    rows: tuple[tuple, ...]
    ring: object = IntegerRing()

    def __post_init__(self):
        if not self.rows or any(len(r) != len(self.rows[0]) for r in self.rows):
            raise ShapeError("matrix rows must be non-empty and of equal length")
        if len(self.rows[0]) < len(self.rows):
            raise ShapeError(f"need m >= n, got {len(self.rows)}x{len(self.rows[0])}")

    @classmethod
    def from_rows(cls, rows, ring=None) -> MatrixData:
        ring = ring if ring is not None else IntegerRing()
        return cls(tuple(tuple(ring.coerce(x) for x in row) for row in rows), ring)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    @property
    def is_square(self) -> bool:
        return self.n == self.m

    def entries(self) -> list:
        return [x for row in self.rows for x in row]

    def map(self, fn, ring) -> MatrixData:
        return MatrixData(tuple(tuple(fn(x) for x in row) for row in self.rows), ring)

    def swap_rows(self, i: int, j: int) -> MatrixData:
        rows = list(self.rows)
        rows[i], rows[j] = rows[j], rows[i]
        return MatrixData(tuple(rows), self.ring)


def as_matrix(A, ring=None) -> MatrixData:
    if isinstance(A, MatrixData):
        return A
    return MatrixData.from_rows(A, ring)


@dataclass
class DetResult:
    value: object
    algorithm: str
    tally: OpTally = field(default_factory=OpTally)
    pivot_log: list[tuple[int, int]] = field(default_factory=list)
    r: int | None = None
    exhausted: bool = False

    @property
    def sign(self) -> int:
        return -1 if len(self.pivot_log) % 2 else 1

    @property
    def pivoted(self) -> bool:
        """True when a row swap or pivot exhaustion makes the tally non-generic."""
        return bool(self.pivot_log) or self.exhausted


def _square(A: MatrixData) -> None:
    if not A.is_square:
        raise ShapeError(f"determinant needs a square matrix, got {A.n}x{A.m}")


def _finish(value, R: CountingRing, log, algorithm, r=None, exhausted=False) -> DetResult:
    if len(log) % 2:
        value = R.neg(value)
    return DetResult(value, algorithm, R.tally, log, r, exhausted)


def _condense(W: list[list], t0: int, prev, R: CountingRing, log: list, on_step=None) -> bool:
    """Dodgson steps on working rows/columns ``t0..``, in place.

    On entry ``W[i][j]`` for ``i, j >= t0`` are the minors of order ``t0 + 1``
    surrounding the order-``t0`` corner, whose value is ``prev`` (``None``
    when ``t0 == 0``, i.e. no division in the first step).  On exit
    ``W[n-1][j]`` holds the order-n minors.  Returns False on pivot
    exhaustion, which means the leading n columns are singular.
    ``on_step(order, W)`` is called after each step, when rows and columns
    ``order - 1..`` hold minors of that order.
    """
    n, m = len(W), len(W[-1])
    for t in range(t0, n - 1):
        if R.is_zero(W[t][t]):
            swap = next((i for i in range(t + 1, n) if not R.is_zero(W[i][t])), None)
            if swap is None:
                return False
            W[t], W[swap] = W[swap], W[t]
            log.append((t, swap))
        piv, row_t = W[t][t], W[t]
        for i in range(t + 1, n):
            row_i = W[i]
            lead = row_i[t]
            for j in range(t + 1, m):
                v = R.sub(R.mul(piv, row_i[j]), R.mul(lead, row_t[j]))
                row_i[j] = v if prev is None else R.div(v, prev)
        prev = piv
        if on_step is not None:
            on_step(t + 2, W)
    return True


def det_dodgson(A, *, tally: OpTally | None = None, on_step=None) -> DetResult:
    """Determinant by Dodgson condensation with row pivoting.

    ``on_step(order, W)`` observes the working array (swapped rows included).
    """
    A = as_matrix(A)
    _square(A)
    R = CountingRing(A.ring, tally)
    W = [list(row) for row in A.rows]
    log: list[tuple[int, int]] = []
    if not _condense(W, 0, None, R, log, on_step):
        return _finish(R.zero, R, log, "dodgson", exhausted=True)
    return _finish(W[-1][-1], R, log, "dodgson")


def det_dodgson_rect(A, *, tally: OpTally | None = None) -> list:
    """Order-n minors on columns ``1..n-1, j`` for ``j = n..m`` (1-based).

    The first entry is the determinant of the leading square block; the rest
    are its Cramer numerators with column n replaced by column j.
    """
    A = as_matrix(A)
    R = CountingRing(A.ring, tally)
    W = [list(row) for row in A.rows]
    log: list[tuple[int, int]] = []
    if not _condense(W, 0, None, R, log):
        return [R.zero] * (A.m - A.n + 1)
    out = W[-1][A.n - 1 :]
    if len(log) % 2:
        out = [R.neg(v) for v in out]
    return out


class _OnePass:
    """Minor table of the one-pass scheme over a row-permutable copy of A.

    With ``order == k``, ``corner`` is the leading minor of order k and
    ``table[p][j]`` (``p < k <= j``) is that minor with column ``p`` replaced
    by column ``j``.
    """

    def __init__(self, A: MatrixData, R: CountingRing, log: list):
        self.rows = [list(row) for row in A.rows]
        self.n = A.n
        self.R = R
        self.log = log
        self.order = 0

    def _swap(self, a: int, b: int) -> None:
        self.rows[a], self.rows[b] = self.rows[b], self.rows[a]
        self.log.append((a, b))

    def start(self) -> bool:
        """Order-1 state, swapping a nonzero entry into the corner."""
        R, rows = self.R, self.rows
        if R.is_zero(rows[0][0]):
            swap = next((i for i in range(1, self.n) if not R.is_zero(rows[i][0])), None)
            if swap is None:
                return False
            self._swap(0, swap)
        self.corner = rows[0][0]
        self.table = [rows[0][:]]
        self.order = 1
        return True

    def extension(self, i: int) -> list:
        """Order ``k + 1`` minors on rows ``1..k, i`` and columns ``1..k, j``, ``j > k``.

        Division free: ``a[i][j] * corner - sum_p a[i][p] * table[p][j]``.
        Entries with ``j <= k`` are left as None.
        """
        R, k, row = self.R, self.order, self.rows[i]
        out = [None] * self.n
        for j in range(k, self.n):
            acc = R.mul(row[j], self.corner)
            for p in range(k):
                acc = R.sub(acc, R.mul(row[p], self.table[p][j]))
            out[j] = acc
        return out

    def step(self) -> bool:
        """Extend the corner from order k to k + 1; False on pivot exhaustion."""
        R, k, n = self.R, self.order, self.n
        ext = self.extension(k)
        if k + 1 < n and R.is_zero(ext[k]):
            for i in range(k + 1, n):
                self._swap(k, i)
                ext = self.extension(k)
                if not R.is_zero(ext[k]):
                    break
            else:
                return False
        new_corner = ext[k]
        rows = self.rows
        new_table = []
        for p in range(k):
            old = self.table[p]
            new = [None] * n
            for j in range(k + 1, n):
                if k == 1:
                    # first step uses the plain 2x2 minor, no division
                    v = R.sub(R.mul(rows[0][j], rows[1][1]), R.mul(rows[1][j], rows[0][1]))
                else:
                    v = R.sub(R.mul(new_corner, old[j]), R.mul(ext[j], old[k]))
                    v = R.div(v, self.corner)
                new[j] = v
            new_table.append(new)
        new_table.append(ext)
        self.table = new_table
        self.corner = new_corner
        self.order = k + 1
        return True


def det_one_pass(A, *, tally: OpTally | None = None, on_step=None) -> DetResult:
    """Determinant by the one-pass scheme: corner minors grow one row at a time.

    ``on_step(state)`` sees the internal state after each order increase.
    """
    A = as_matrix(A)
    _square(A)
    R = CountingRing(A.ring, tally)
    log: list[tuple[int, int]] = []
    state = _OnePass(A, R, log)
    if not state.start():
        return _finish(R.zero, R, log, "one-pass", exhausted=True)
    while state.order < A.n:
        if not state.step():
            return _finish(R.zero, R, log, "one-pass", exhausted=True)
        if on_step is not None:
            on_step(state)
    return _finish(state.corner, R, log, "one-pass")


def det_combined(A, r: int, *, tally: OpTally | None = None) -> DetResult:
    """One-pass up to order r, one division-free transition, then Dodgson.

    ``r <= 1`` runs plain Dodgson and ``r >= n - 1`` plain one-pass.
    """
    A = as_matrix(A)
    _square(A)
    n = A.n
    if r <= 1:
        res = det_dodgson(A, tally=tally)
        res.r = r
        return res
    if r >= n - 1:
        res = det_one_pass(A, tally=tally)
        res.r = r
        return res
    R = CountingRing(A.ring, tally)
    log: list[tuple[int, int]] = []
    state = _OnePass(A, R, log)
    ok = state.start()
    while ok and state.order < r:
        ok = state.step()
    if not ok:
        return _finish(R.zero, R, log, "combined", r, exhausted=True)
    # order r+1 minors surrounding the order-r corner by every row i > r and column j > r
    W = [None] * r + [state.extension(i) for i in range(r, n)]
    if not _condense(W, r, state.corner, R, log):
        return _finish(R.zero, R, log, "combined", r, exhausted=True)
    return _finish(W[-1][-1], R, log, "combined", r)


def minor_oracle(A, rows, cols):
    """Minor on the given row and column index lists, by Laplace expansion.

    Division free; memoized on the set of remaining columns so the cost is
    O(2^k k) ring operations rather than O(k!).
    """
    A = as_matrix(A)
    ring = A.ring
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise ShapeError("minor needs as many rows as columns")
    k = len(rows)
    if k == 0:
        return ring.one
    memo: dict[tuple[int, int], object] = {}

    def expand(depth: int, mask: int):
        if depth == k:
            return ring.one
        key = (depth, mask)
        if key in memo:
            return memo[key]
        total = ring.zero
        sign_pos = 0
        for c in range(k):
            if mask >> c & 1:
                continue
            entry = A.rows[rows[depth]][cols[c]]
            if not ring.is_zero(entry):
                term = ring.mul(entry, expand(depth + 1, mask | 1 << c))
                total = ring.add(total, term) if sign_pos % 2 == 0 else ring.sub(total, term)
            sign_pos += 1
        memo[key] = total
        return total

    return expand(0, 0)


def det_oracle(A):
    """Determinant by cofactor expansion; independent of the condensation code."""
    A = as_matrix(A)
    _square(A)
    if A.n > ORACLE_MAX_N:
        raise ValueError(f"oracle is limited to n <= {ORACLE_MAX_N}, got {A.n}")
    return minor_oracle(A, range(A.n), range(A.n))


def permutation_det(A):
    """Leibniz permutation sum; a second, slower oracle for small n."""
    A = as_matrix(A)
    _square(A)
    ring = A.ring
    total = ring.zero
    for perm in permutations(range(A.n)):
        inversions = sum(perm[i] > perm[j] for i in range(A.n) for j in range(i + 1, A.n))
        term = ring.one
        for i, j in enumerate(perm):
            term = ring.mul(term, A.rows[i][j])
        total = ring.sub(total, term) if inversions % 2 else ring.add(total, term)
    return total
