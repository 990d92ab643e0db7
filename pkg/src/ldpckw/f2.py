"""
Dense linear algebra over GF(2).

Matrices are immutable ``uint8`` arrays wrapped in :class:`BinaryMatrix`.
Row reduction records every elementary row addition so that the
elimination can be replayed, which is what circuit extraction consumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError


@dataclass(frozen=True, eq=False)
class BinaryMatrix:
    """An ``rows x cols`` matrix with entries in {0, 1}."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.uint8, copy=True)
        if arr.ndim != 2:
            raise DimensionError(f"expected a 2D array, got shape {arr.shape}")
        arr %= 2
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "BinaryMatrix":
        if len(rows) == 0:
            return cls(np.zeros((0, cols or 0), dtype=np.uint8))
        return cls(np.asarray(rows, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BinaryMatrix":
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def entry(self, r: int, c: int) -> int:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols} matrix")
        return int(self.data[r, c])

    def row(self, r: int) -> np.ndarray:
        return self.data[r]

    def col(self, c: int) -> np.ndarray:
        return self.data[:, c]

    @property
    def T(self) -> "BinaryMatrix":
        return BinaryMatrix(self.data.T)

    def transpose(self) -> "BinaryMatrix":
        return self.T

    def __matmul__(self, other):
        if isinstance(other, BinaryMatrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            return BinaryMatrix(_matmul(self.data, other.data))
        vec = np.asarray(other, dtype=np.uint8)
        if vec.shape[0] != self.cols:
            raise DimensionError(f"cannot apply {self.shape} matrix to vector of length {vec.shape[0]}")
        return _matmul(self.data, vec)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self) -> int:
        return hash((self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        body = "; ".join("".join(str(int(v)) for v in row) for row in self.data)
        return f"BinaryMatrix({self.rows}x{self.cols}: [{body}])"

    def tolist(self) -> list[list[int]]:
        return self.data.astype(int).tolist()


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) @ b.astype(np.int64) % 2).astype(np.uint8)


@dataclass(frozen=True)
class RowOpTrace:
    """Replayable record of a row reduction.

    ``ops`` holds ``(target, source)`` pairs meaning ``R_target <- R_target + R_source``,
    applied in order to the original matrix.  ``row_permutation[r]`` is the row of the
    post-addition matrix that ends up at position ``r`` of the result.
    """

    ops: tuple[tuple[int, int], ...] = ()
    row_permutation: tuple[int, ...] = ()
    pivots: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for t, s in self.ops:
            if t == s:
                raise ValueError(f"row operation adds row {t} to itself")

    def replay(self, m: BinaryMatrix) -> BinaryMatrix:
        work = np.array(m.data, dtype=np.uint8)
        for t, s in self.ops:
            work[t] ^= work[s]
        if self.row_permutation:
            work = work[list(self.row_permutation)]
        return BinaryMatrix(work)

    def transform(self) -> BinaryMatrix:
        """The invertible matrix ``E`` with ``replay(M) == E @ M``."""
        n = len(self.row_permutation)
        return self.replay(BinaryMatrix.identity(n))


def rref_with_trace(m: BinaryMatrix) -> tuple[BinaryMatrix, RowOpTrace]:
    """Reduced row echelon form with a replayable trace.

    Columns are scanned left to right; the pivot is the lowest-index row not yet
    used as a pivot.  Rows are never physically swapped: the final ordering
    (pivot rows in pivot order, then zero rows in original order) is recorded
    as a permutation.
    """
    work = np.array(m.data, dtype=np.uint8)
    rows, cols = work.shape
    used = np.zeros(rows, dtype=bool)
    ops: list[tuple[int, int]] = []
    pivot_rows: list[int] = []
    pivot_cols: list[int] = []
    for c in range(cols):
        candidates = np.flatnonzero((work[:, c] == 1) & ~used)
        if candidates.size == 0:
            continue
        p = int(candidates[0])
        used[p] = True
        below = [r for r in np.flatnonzero(work[:, c]) if r != p and not used[r]]
        above = [r for r in np.flatnonzero(work[:, c]) if r != p and used[r]]
        for r in list(below) + list(above):
            work[r] ^= work[p]
            ops.append((int(r), p))
        pivot_rows.append(p)
        pivot_cols.append(c)
    zero_rows = [r for r in range(rows) if not used[r]]
    perm = tuple(pivot_rows + zero_rows)
    trace = RowOpTrace(tuple(ops), perm, tuple(pivot_cols))
    return BinaryMatrix(work[list(perm)]), trace


def rank(m: BinaryMatrix) -> int:
    _, trace = rref_with_trace(m)
    return len(trace.pivots)


def kernel_basis(m: BinaryMatrix) -> list[np.ndarray]:
    """Canonical basis of ``{v : M v = 0}``, one vector per free column in increasing order."""
    reduced, trace = rref_with_trace(m)
    pivots = trace.pivots
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(m.cols, dtype=np.uint8)
        v[f] = 1
        for r, p in enumerate(pivots):
            v[p] = reduced.data[r, f]
        basis.append(v)
    return basis


def kron(a: BinaryMatrix, b: BinaryMatrix) -> BinaryMatrix:
    """Kronecker product; row ``(i, k)`` sits at ``i * b.rows + k``."""
    return BinaryMatrix(np.kron(a.data, b.data))


def kron_all(factors: Sequence[BinaryMatrix]) -> BinaryMatrix:
    out = BinaryMatrix(np.ones((1, 1), dtype=np.uint8))
    for f in factors:
        out = kron(out, f)
    return out


def vstack(blocks: Sequence[BinaryMatrix]) -> BinaryMatrix:
    if not blocks:
        raise DimensionError("vstack needs at least one block")
    widths = {b.cols for b in blocks}
    if len(widths) != 1:
        raise DimensionError(f"column counts differ: {sorted(widths)}")
    return BinaryMatrix(np.vstack([b.data for b in blocks]))


def inverse(m: BinaryMatrix) -> BinaryMatrix:
    if m.rows != m.cols:
        raise DimensionError(f"cannot invert a {m.rows}x{m.cols} matrix")
    reduced, trace = rref_with_trace(m)
    if len(trace.pivots) != m.rows:
        raise np.linalg.LinAlgError("matrix is singular over GF(2)")
    return trace.transform()


def solve(a: BinaryMatrix, b: np.ndarray) -> np.ndarray | None:
    """One solution of ``A x = b`` (free variables set to zero), or None."""
    b = np.asarray(b, dtype=np.uint8) % 2
    aug = BinaryMatrix(np.hstack([a.data, b.reshape(-1, 1)]))
    reduced, trace = rref_with_trace(aug)
    if a.cols in trace.pivots:
        return None
    x = np.zeros(a.cols, dtype=np.uint8)
    for r, p in enumerate(trace.pivots):
        x[p] = reduced.data[r, -1]
    return x


def row_space(m: BinaryMatrix) -> BinaryMatrix:
    """Nonzero rows of the RREF: a canonical form of the row space."""
    reduced, trace = rref_with_trace(m)
    return BinaryMatrix(reduced.data[: len(trace.pivots)].reshape(len(trace.pivots), m.cols))


def same_row_space(a: BinaryMatrix, b: BinaryMatrix) -> bool:
    return a.cols == b.cols and row_space(a) == row_space(b)


def same_kernel(a: BinaryMatrix, b: BinaryMatrix) -> bool:
    """Kernels coincide iff the row spaces do."""
    return same_row_space(a, b)


def from_vectors(vectors: Iterable[np.ndarray], cols: int) -> BinaryMatrix:
    vectors = list(vectors)
    if not vectors:
        return BinaryMatrix.zeros(0, cols)
    return BinaryMatrix(np.vstack(vectors))
