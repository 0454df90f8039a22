"""Dense linear algebra over prime fields."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

import numpy as np
from sympy import isprime

from config.settings import MAX_PRIME
from utils.errors import InconsistentSystemError


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isprime(self.p) or self.p > MAX_PRIME:
            raise ValueError(f"Field characteristic must be a prime <= {MAX_PRIME}, got {self.p}")

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in F{self.p}")
        return pow(a, -1, self.p)

    def elements(self) -> range:
        return range(self.p)

    def units(self) -> range:
        return range(1, self.p)

    def __repr__(self) -> str:
        return f"F{self.p}"


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


class FMatrix:
    """Immutable dense matrix over F_p backed by an int64 numpy array."""

    __slots__ = ('field', 'data')

    def __init__(self, field: PrimeField, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"FMatrix needs a 2-dimensional array, got shape {arr.shape}")
        arr = arr % field.p
        arr.setflags(write=False)
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'data', arr)

    def __setattr__(self, name, value):
        raise AttributeError("FMatrix is immutable")

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> 'FMatrix':
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> 'FMatrix':
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Sequence[Sequence[int]], cols: int = None) -> 'FMatrix':
        if len(rows) == 0:
            return cls.zeros(field, 0, cols or 0)
        return cls(field, np.array(rows, dtype=np.int64))

    @classmethod
    def from_entries(cls, field: PrimeField, rows: int, cols: int, entries: Iterable[int]) -> 'FMatrix':
        return cls(field, np.array(list(entries), dtype=np.int64).reshape(rows, cols))

    @classmethod
    def from_columns(cls, field: PrimeField, columns: Sequence[np.ndarray], rows: int) -> 'FMatrix':
        if not columns:
            return cls.zeros(field, rows, 0)
        return cls(field, np.column_stack([np.asarray(c, dtype=np.int64).reshape(-1) for c in columns]))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    @property
    def entries(self) -> Tuple[int, ...]:
        """Row-major entries."""
        return tuple(int(x) for x in self.data.reshape(-1))

    @property
    def T(self) -> 'FMatrix':
        return FMatrix(self.field, self.data.T)

    def _check(self, other: 'FMatrix'):
        if other.field != self.field:
            raise ValueError(f"Field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: 'FMatrix') -> 'FMatrix':
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"Shape mismatch for product: {self.shape} @ {other.shape}")
        return FMatrix(self.field, (self.data @ other.data) % self.field.p)

    def __add__(self, other: 'FMatrix') -> 'FMatrix':
        self._check(other)
        return FMatrix(self.field, self.data + other.data)

    def __sub__(self, other: 'FMatrix') -> 'FMatrix':
        self._check(other)
        return FMatrix(self.field, self.data - other.data)

    def __neg__(self) -> 'FMatrix':
        return FMatrix(self.field, -self.data)

    def scale(self, c: int) -> 'FMatrix':
        return FMatrix(self.field, self.data * (int(c) % self.field.p))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FMatrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and bool(np.array_equal(self.data, other.data)))

    def __hash__(self) -> int:
        return hash((self.field.p, self.shape, self.entries))

    def __repr__(self) -> str:
        return f"FMatrix({self.field}, {self.data.tolist()})"

    def is_zero(self) -> bool:
        return not self.data.any()

    def column(self, j: int) -> np.ndarray:
        return self.data[:, j].copy()

    def columns(self, indices: Sequence[int]) -> 'FMatrix':
        return FMatrix(self.field, self.data[:, list(indices)].reshape(self.rows, len(indices)))

    def row_block(self, start: int, stop: int) -> 'FMatrix':
        return FMatrix(self.field, self.data[start:stop, :].reshape(stop - start, self.cols))

    def col_block(self, start: int, stop: int) -> 'FMatrix':
        return FMatrix(self.field, self.data[:, start:stop].reshape(self.rows, stop - start))

    def rank(self) -> int:
        return row_reduce(self).rank

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def inverse(self) -> 'FMatrix':
        if not self.is_square():
            raise ValueError(f"Only square matrices are invertible, got {self.shape}")
        n = self.rows
        reduced = row_reduce(hstack([self, FMatrix.identity(self.field, n)]))
        if reduced.pivots[:n] != tuple(range(n)):
            raise ZeroDivisionError("Matrix is singular")
        return FMatrix(self.field, reduced.matrix[:, n:])

    def power(self, k: int) -> 'FMatrix':
        result = FMatrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result


def hstack(blocks: Sequence[FMatrix]) -> FMatrix:
    field = blocks[0].field
    return FMatrix(field, np.hstack([b.data for b in blocks]))


def vstack(blocks: Sequence[FMatrix]) -> FMatrix:
    field = blocks[0].field
    return FMatrix(field, np.vstack([b.data for b in blocks]))


def block_diagonal(field: PrimeField, blocks: Sequence[FMatrix]) -> FMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        out[r:r + b.rows, c:c + b.cols] = b.data
        r += b.rows
        c += b.cols
    return FMatrix(field, out)


@dataclass(frozen=True)
class RowReduceResult:
    matrix: np.ndarray
    rank: int
    pivots: Tuple[int, ...]


def row_reduce(m: FMatrix) -> RowReduceResult:
    """Reduced row echelon form over F_p."""
    p = m.field.p
    mat = m.data.copy()
    rows, cols = mat.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nonzero = np.nonzero(mat[row:, col])[0]
        if nonzero.size == 0:
            continue
        pivot = row + int(nonzero[0])
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        mat[row] = (mat[row] * pow(int(mat[row, col]), -1, p)) % p
        factors = mat[:, col].copy()
        factors[row] = 0
        mat = (mat - np.outer(factors, mat[row])) % p
        pivots.append(col)
        row += 1
    return RowReduceResult(matrix=mat, rank=len(pivots), pivots=tuple(pivots))


def rank_kernel(m: FMatrix) -> Tuple[int, FMatrix]:
    """Rank of m and a kernel basis stored as the columns of a cols x k matrix."""
    reduced = row_reduce(m)
    mat = reduced.matrix
    n = m.cols
    pivot_set = set(reduced.pivots)
    basis = []
    for free in (c for c in range(n) if c not in pivot_set):
        vec = np.zeros(n, dtype=np.int64)
        vec[free] = 1
        for row, col in enumerate(reduced.pivots):
            vec[col] = -mat[row, free]
        basis.append(vec)
    return reduced.rank, FMatrix.from_columns(m.field, basis, n)


def kernel_basis(m: FMatrix) -> FMatrix:
    return rank_kernel(m)[1]


def column_space(m: FMatrix) -> FMatrix:
    """Independent columns of m spanning its image."""
    return m.columns(row_reduce(m).pivots)


def complement_basis(sub: FMatrix, n: int) -> FMatrix:
    """Standard unit vectors completing the columns of sub to a basis of F_p^n."""
    field = sub.field
    if sub.cols == 0:
        return FMatrix.identity(field, n)
    reduced = row_reduce(hstack([sub, FMatrix.identity(field, n)]))
    extra = [c - sub.cols for c in reduced.pivots if c >= sub.cols]
    return FMatrix.identity(field, n).columns(extra)


def quotient_projection(sub: FMatrix, n: int) -> Tuple[FMatrix, FMatrix]:
    """
    Coordinates on F_p^n / span(sub).

    Returns:
        (complement, projection): complement columns lifting the quotient basis, and the
        matrix sending a vector to its quotient coordinates.
    """
    field = sub.field
    sub = column_space(sub) if sub.cols else sub
    comp = complement_basis(sub, n)
    full = hstack([sub, comp]) if sub.cols else comp
    inv = full.inverse()
    return comp, inv.row_block(sub.cols, n)


@dataclass(frozen=True)
class AffineSolution:
    particular: FMatrix
    kernel: FMatrix

    @property
    def dimension(self) -> int:
        return self.kernel.cols


def solve_affine(a: FMatrix, b: FMatrix) -> AffineSolution:
    """
    Solve a x = b for a column b.

    Raises:
        InconsistentSystemError: when b is not in the image of a
    """
    if b.rows != a.rows or b.cols != 1:
        raise ValueError(f"Right-hand side must be a column with {a.rows} rows, got {b.shape}")
    reduced = row_reduce(hstack([a, b]))
    if a.cols in reduced.pivots:
        raise InconsistentSystemError(f"Right-hand side is not in the image of a {a.rows}x{a.cols} map")
    x = np.zeros(a.cols, dtype=np.int64)
    for row, col in enumerate(reduced.pivots):
        x[col] = reduced.matrix[row, a.cols]
    return AffineSolution(particular=FMatrix(a.field, x.reshape(-1, 1)), kernel=kernel_basis(a))


def in_span(basis: FMatrix, v: np.ndarray) -> bool:
    if basis.cols == 0:
        return not np.any(np.asarray(v) % basis.field.p)
    extended = hstack([basis, FMatrix(basis.field, np.asarray(v).reshape(-1, 1))])
    return extended.rank() == basis.rank()
