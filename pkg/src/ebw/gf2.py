"""Bit-packed GF(2) matrices.

Rows are stored as little-endian arrays of 64-bit words: column ``j`` of a row
lives in word ``j // 64`` at bit ``j % 64``.  Bits past ``cols`` in the final
word are always zero.
"""

from __future__ import annotations

import hashlib
from typing import Iterable, Sequence

import numpy as np

WORD = 64
_ONE = np.uint64(1)


def _nwords(cols: int) -> int:
    return (cols + WORD - 1) // WORD


class BinaryMatrix:
    """Immutable dense binary matrix with packed rows."""

    __slots__ = ("rows", "cols", "words", "_row_ints", "_col_ints")

    def __init__(self, words: np.ndarray, rows: int, cols: int):
        if rows < 1 or cols < 1:
            raise ValueError(f"matrix must be at least 1x1, got {rows}x{cols}")
        words = np.ascontiguousarray(words, dtype=np.uint64)
        if words.shape != (rows, _nwords(cols)):
            raise ValueError(f"packed storage has shape {words.shape}, expected {(rows, _nwords(cols))}")
        tail = cols % WORD
        if tail and np.any(words[:, -1] >> np.uint64(tail)):
            raise ValueError("nonzero padding bits beyond the last column")
        words.setflags(write=False)
        self.rows = rows
        self.cols = cols
        self.words = words
        self._row_ints: tuple[int, ...] | None = None
        self._col_ints: tuple[int, ...] | None = None

    # construction -------------------------------------------------------

    @classmethod
    def from_dense(cls, a) -> "BinaryMatrix":
        a = np.asarray(a)
        if a.ndim != 2:
            raise ValueError("expected a 2-D array")
        bits = (a.astype(np.int64) % 2).astype(np.uint8)
        rows, cols = bits.shape
        nw = _nwords(cols)
        padded = np.zeros((rows, nw * WORD), dtype=np.uint8)
        padded[:, :cols] = bits
        packed = np.packbits(padded, axis=1, bitorder="little")
        words = packed.view("<u8").astype(np.uint64)
        return cls(words.reshape(rows, nw), rows, cols)

    @classmethod
    def from_row_ints(cls, row_masks: Sequence[int], cols: int) -> "BinaryMatrix":
        nw = _nwords(cols)
        words = np.zeros((len(row_masks), nw), dtype=np.uint64)
        full = (1 << cols) - 1
        for i, mask in enumerate(row_masks):
            if mask & ~full:
                raise ValueError(f"row {i} has bits beyond column {cols - 1}")
            for w in range(nw):
                words[i, w] = (mask >> (WORD * w)) & 0xFFFFFFFFFFFFFFFF
        return cls(words, len(row_masks), cols)

    @classmethod
    def from_supports(cls, supports: Iterable[Iterable[int]], rows: int) -> "BinaryMatrix":
        """Build a matrix column by column from the row indices of each column's ones."""
        supports = [list(s) for s in supports]
        a = np.zeros((rows, len(supports)), dtype=np.uint8)
        for j, s in enumerate(supports):
            a[s, j] = 1
        return cls.from_dense(a)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def ones(cls, rows: int, cols: int) -> "BinaryMatrix":
        return cls.from_dense(np.ones((rows, cols), dtype=np.uint8))

    # views --------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def to_dense(self) -> np.ndarray:
        as_bytes = self.words.astype("<u8").view(np.uint8).reshape(self.rows, -1)
        bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
        return bits[:, : self.cols].copy()

    def row_ints(self) -> tuple[int, ...]:
        """Rows as Python ints, bit ``j`` = column ``j``."""
        if self._row_ints is None:
            out = []
            for r in self.words:
                x = 0
                for w in reversed(r.tolist()):
                    x = (x << WORD) | w
                out.append(x)
            self._row_ints = tuple(out)
        return self._row_ints

    def col_ints(self) -> tuple[int, ...]:
        """Columns as Python ints, bit ``i`` = row ``i``."""
        if self._col_ints is None:
            self._col_ints = self.transpose().row_ints()
        return self._col_ints

    def row_weights(self) -> np.ndarray:
        return np.bitwise_count(self.words).sum(axis=1).astype(np.int64)

    def col_weights(self) -> np.ndarray:
        return self.to_dense().sum(axis=0).astype(np.int64)

    def row_support(self, i: int) -> list[int]:
        return np.flatnonzero(self.to_dense()[i]).tolist()

    def col_supports(self) -> list[list[int]]:
        dense = self.to_dense()
        return [np.flatnonzero(dense[:, j]).tolist() for j in range(self.cols)]

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix.from_dense(self.to_dense().T)

    @property
    def T(self) -> "BinaryMatrix":
        return self.transpose()

    def fingerprint(self) -> str:
        """SHA-256 over the shape and packed little-endian words."""
        h = hashlib.sha256()
        h.update(f"{self.rows}x{self.cols}:".encode())
        h.update(self.words.astype("<u8").tobytes())
        return h.hexdigest()

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.rows}x{self.cols})"


def _eliminate(words: np.ndarray, cols: int, reduced: bool) -> tuple[np.ndarray, list[int]]:
    """Gaussian elimination on a private copy; leftmost pivot, top-down.

    With ``reduced`` the pivot column is cleared above as well as below
    (reduced row echelon form).
    """
    W = words.copy()
    nrows = W.shape[0]
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == nrows:
            break
        w, b = divmod(col, WORD)
        bit = _ONE << np.uint64(b)
        hits = np.flatnonzero(W[r:, w] & bit)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            W[[r, p]] = W[[p, r]]
        if reduced:
            mask = (W[:, w] & bit) != 0
            mask[r] = False
            W[mask] ^= W[r]
        else:
            below = np.flatnonzero(W[r + 1 :, w] & bit) + r + 1
            if below.size:
                W[below] ^= W[r]
        pivots.append(col)
        r += 1
    return W, pivots


def rank(M: BinaryMatrix) -> int:
    """Row rank over GF(2).  ``M`` is left untouched."""
    _, pivots = _eliminate(M.words, M.cols, reduced=False)
    return len(pivots)


def rref(M: BinaryMatrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form (packed words, nonzero rows only) and pivot columns."""
    W, pivots = _eliminate(M.words, M.cols, reduced=True)
    return W[: len(pivots)].copy(), pivots


def gram(M: BinaryMatrix) -> BinaryMatrix:
    """``M @ M.T`` over GF(2): entry (i, j) is the parity of the shared ones of rows i and j."""
    W = M.words
    out = np.zeros((M.rows, M.rows), dtype=np.uint8)
    for i in range(M.rows):
        out[i] = (np.bitwise_count(W & W[i]).sum(axis=1) & 1).astype(np.uint8)
    return BinaryMatrix.from_dense(out)


def matmul(A: BinaryMatrix, B: BinaryMatrix) -> BinaryMatrix:
    if A.cols != B.rows:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    prod = A.to_dense().astype(np.int64) @ B.to_dense().astype(np.int64)
    return BinaryMatrix.from_dense(prod & 1)


def matvec(M: BinaryMatrix, x) -> np.ndarray:
    """``M @ x`` over GF(2) for a 0/1 vector ``x`` of length ``M.cols``."""
    x = np.asarray(x, dtype=np.int64).ravel()
    if x.size != M.cols:
        raise ValueError(f"vector length {x.size} != {M.cols} columns")
    return ((M.to_dense().astype(np.int64) @ x) & 1).astype(np.uint8)


def nullspace_basis(M: BinaryMatrix) -> list[np.ndarray]:
    """Basis of ``{x : Mx = 0}``, one 0/1 vector per free column."""
    W, pivots = rref(M)
    R = BinaryMatrix(W, len(pivots), M.cols).to_dense() if pivots else np.zeros((0, M.cols), np.uint8)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        x = np.zeros(M.cols, dtype=np.uint8)
        x[free] = 1
        for row, pc in enumerate(pivots):
            if R[row, free]:
                x[pc] = 1
        basis.append(x)
    return basis


def bits_to_int(x) -> int:
    """Pack a 0/1 vector into an int, element ``j`` -> bit ``j``."""
    out = 0
    for j in np.flatnonzero(np.asarray(x)).tolist():
        out |= 1 << j
    return out


def int_to_bits(x: int, n: int) -> np.ndarray:
    return np.array([(x >> j) & 1 for j in range(n)], dtype=np.uint8)


class RowSpace:
    """Membership tests against the row space of a matrix, using Python-int rows."""

    def __init__(self, M: BinaryMatrix):
        self._basis: dict[int, int] = {}
        for r in M.row_ints():
            self.add(r)

    def reduce(self, x: int) -> int:
        while x:
            lead = x.bit_length() - 1
            b = self._basis.get(lead)
            if b is None:
                return x
            x ^= b
        return 0

    def add(self, x: int) -> bool:
        x = self.reduce(x)
        if x:
            self._basis[x.bit_length() - 1] = x
            return True
        return False

    def __contains__(self, x: int) -> bool:
        return self.reduce(x) == 0

    def __len__(self) -> int:
        return len(self._basis)
