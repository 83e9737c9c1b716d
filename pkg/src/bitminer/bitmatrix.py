"""Column-major Boolean occurrence matrix.

Column ``j`` holds the set of transactions (rows) containing item ``j``.
Two column layouts are available:

* ``dense``: the row set packed into bits. Row ``i`` is bit ``i mod 64`` of
  64-bit block ``i // 64``; the blocks are stored back to back in one Python
  ``int`` so AND/OR run word-wise in C and ``int.bit_count`` gives the
  population count. Bits at or beyond ``n`` are always zero.
* ``sparse``: the row set as a strictly ascending ``int64`` tid-list.

A matrix never mixes layouts.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DimensionError, RepresentationError, UnknownItemError
from .ingest import TransactionDatabase

DENSE = "dense"
SPARSE = "sparse"
REPRESENTATIONS = (DENSE, SPARSE)

BLOCK_BITS = 64
_BLOCK_MASK = (1 << BLOCK_BITS) - 1


def n_blocks(n: int) -> int:
    return -(-n // BLOCK_BITS)


@dataclass(frozen=True)
class DenseColumn:
    bits: int
    n: int

    kind = DENSE

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError("dense column has bits set outside rows [0, n)")

    @classmethod
    def from_rows(cls, rows: Iterable[int], n: int) -> "DenseColumn":
        bits = 0
        for i in rows:
            bits |= 1 << i
        return cls(bits, n)

    @classmethod
    def from_blocks(cls, blocks: Sequence[int], n: int) -> "DenseColumn":
        bits = 0
        for k, block in enumerate(blocks):
            bits |= (block & _BLOCK_MASK) << (BLOCK_BITS * k)
        return cls(bits, n)

    @classmethod
    def ones(cls, n: int) -> "DenseColumn":
        return cls((1 << n) - 1, n)

    def blocks(self) -> tuple[int, ...]:
        """The packed 64-bit words, lowest rows first."""
        return tuple((self.bits >> (BLOCK_BITS * k)) & _BLOCK_MASK for k in range(n_blocks(self.n)))

    def rows(self) -> list[int]:
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out

    def count(self) -> int:
        return self.bits.bit_count()


@dataclass(frozen=True, eq=False)
class SparseColumn:
    tids: np.ndarray
    n: int

    kind = SPARSE

    def __post_init__(self):
        tids = np.asarray(self.tids, dtype=np.int64)
        if tids.ndim != 1:
            raise ValueError("tid-list must be one-dimensional")
        if tids.size:
            if np.any(tids[1:] <= tids[:-1]):
                raise ValueError("tid-list must be strictly ascending")
            if tids[0] < 0 or tids[-1] >= self.n:
                raise ValueError("tid-list holds rows outside [0, n)")
        tids.flags.writeable = False
        object.__setattr__(self, "tids", tids)

    @classmethod
    def from_rows(cls, rows: Iterable[int], n: int) -> "SparseColumn":
        return cls(np.array(sorted(set(rows)), dtype=np.int64), n)

    @classmethod
    def ones(cls, n: int) -> "SparseColumn":
        return cls(np.arange(n, dtype=np.int64), n)

    def rows(self) -> list[int]:
        return self.tids.tolist()

    def count(self) -> int:
        return int(self.tids.size)

    def __eq__(self, other):
        if not isinstance(other, SparseColumn):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.tids, other.tids)

    def __hash__(self):
        return hash((self.n, self.tids.tobytes()))


BitColumn = Union[DenseColumn, SparseColumn]


def _check_pair(a: BitColumn, b: BitColumn) -> None:
    if a.kind != b.kind:
        raise RepresentationError(f"cannot combine {a.kind} and {b.kind} columns")
    if a.n != b.n:
        raise DimensionError(f"row counts differ: {a.n} != {b.n}")


def _sparse_and(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.size > b.size:
        a, b = b, a
    if not a.size:
        return a
    pos = np.searchsorted(b, a)
    pos[pos == b.size] = 0
    return a[b[pos] == a]


def intersect(a: BitColumn, b: BitColumn) -> BitColumn:
    """Row-wise AND of two columns of the same layout and height."""
    _check_pair(a, b)
    if a.kind == DENSE:
        return DenseColumn(a.bits & b.bits, a.n)
    return SparseColumn(_sparse_and(a.tids, b.tids), a.n)


def union(a: BitColumn, b: BitColumn) -> BitColumn:
    """Row-wise OR of two columns. Not used by the miner."""
    _check_pair(a, b)
    if a.kind == DENSE:
        return DenseColumn(a.bits | b.bits, a.n)
    return SparseColumn(np.union1d(a.tids, b.tids), a.n)


def popcount(col: BitColumn) -> int:
    return col.count()


def zeros(n: int, kind: str = DENSE) -> BitColumn:
    return DenseColumn(0, n) if kind == DENSE else SparseColumn(np.empty(0, dtype=np.int64), n)


def ones(n: int, kind: str = DENSE) -> BitColumn:
    return DenseColumn.ones(n) if kind == DENSE else SparseColumn.ones(n)


@dataclass(frozen=True)
class BitMatrix:
    columns: tuple[BitColumn, ...]
    n: int
    kind: str = DENSE

    def __post_init__(self):
        if self.kind not in REPRESENTATIONS:
            raise ValueError(f"unknown representation {self.kind!r}")
        for col in self.columns:
            if col.kind != self.kind or col.n != self.n:
                raise ValueError("all columns must share the matrix layout and row count")

    @property
    def m(self) -> int:
        return len(self.columns)

    def column(self, item: int) -> BitColumn:
        if not 0 <= item < len(self.columns):
            raise UnknownItemError(item)
        return self.columns[item]

    def __getitem__(self, key):
        i, j = key
        if not 0 <= i < self.n:
            raise IndexError(i)
        col = self.column(j)
        if col.kind == DENSE:
            return (col.bits >> i) & 1
        pos = np.searchsorted(col.tids, i)
        return int(pos < col.tids.size and col.tids[pos] == i)


def build_matrix(db: TransactionDatabase, repr: str = DENSE) -> BitMatrix:
    """Encode ``db`` as an n x m occurrence matrix in the requested layout."""
    if repr not in REPRESENTATIONS:
        raise ValueError(f"unknown representation {repr!r}")
    n, m = db.n, db.m
    tid_lists: list[list[int]] = [[] for _ in range(m)]
    for i, t in enumerate(db.transactions):
        for j in t:
            tid_lists[j].append(i)

    if repr == SPARSE:
        cols = tuple(SparseColumn(np.array(rows, dtype=np.int64), n) for rows in tid_lists)
        return BitMatrix(cols, n, SPARSE)

    width = n_blocks(n) * BLOCK_BITS
    cols = []
    for rows in tid_lists:
        flags = np.zeros(width, dtype=bool)
        flags[rows] = True
        packed = np.packbits(flags, bitorder="little").tobytes()
        cols.append(DenseColumn(int.from_bytes(packed, "little"), n))
    return BitMatrix(tuple(cols), n, DENSE)


def slice_rows(matrix: BitMatrix, start: int, stop: int) -> BitMatrix:
    """Sub-matrix of rows ``start <= i < stop``, renumbered from zero."""
    if not 0 <= start <= stop <= matrix.n:
        raise DimensionError(f"row range [{start}, {stop}) outside [0, {matrix.n})")
    height = stop - start
    if matrix.kind == DENSE:
        mask = (1 << height) - 1
        cols = tuple(DenseColumn((c.bits >> start) & mask, height) for c in matrix.columns)
    else:
        cols = []
        for c in matrix.columns:
            lo, hi = np.searchsorted(c.tids, [start, stop])
            cols.append(SparseColumn(c.tids[lo:hi] - start, height))
        cols = tuple(cols)
    return BitMatrix(cols, height, matrix.kind)


def support_of(matrix: BitMatrix, itemset: Sequence[int]) -> int:
    """Number of rows whose columns are all set for every item in ``itemset``.

    The empty itemset is supported by every row.
    """
    for item in itemset:
        if not 0 <= item < matrix.m:
            raise UnknownItemError(item)
    if not itemset:
        return matrix.n
    acc = matrix.columns[itemset[0]]
    for item in itemset[1:]:
        acc = intersect(acc, matrix.columns[item])
    return popcount(acc)


def estimate_memory(matrix: BitMatrix) -> int:
    """Matrix payload size in bytes under a fixed, machine-independent formula.

    Dense: ``m * ceil(n / 64) * 8``. Sparse: 8 bytes per stored row index.
    """
    if matrix.kind == DENSE:
        return matrix.m * n_blocks(matrix.n) * 8
    return 8 * sum(c.count() for c in matrix.columns)
