"""Immutable bit-packed matrices over GF(2) and the basic linear algebra on them."""

from __future__ import annotations

import hashlib
from functools import cached_property

import numpy as np

from ..errors import ShapeMismatch
from . import _kernels as K


class BitMatrix:
    """Row-major bit-packed GF(2) matrix.

    ``payload`` has shape ``(rows, ceil(cols / 64))`` with zero pad bits.  The
    object is treated as immutable; the dense 0/1 view is cached.
    """

    __slots__ = ("rows", "cols", "payload", "__dict__")

    def __init__(self, rows: int, cols: int, payload: np.ndarray):
        payload = np.ascontiguousarray(payload, dtype=np.uint64)
        if payload.shape != (rows, K.nwords(cols)):
            raise ShapeMismatch(f"payload {payload.shape} for {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.payload = payload

    # construction -------------------------------------------------------------

    @classmethod
    def from_dense(cls, dense) -> BitMatrix:
        dense = np.asarray(dense, dtype=np.uint8)
        if dense.ndim == 1:
            dense = dense.reshape(1, -1)
        rows, cols = dense.shape
        return cls(rows, cols, K.pack(dense))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols, np.zeros((rows, K.nwords(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_permutation(cls, perm) -> BitMatrix:
        """Row-vector convention: ``e_i`` maps to ``e_{perm[i]}``."""
        perm = np.asarray(perm, dtype=np.int64)
        d = len(perm)
        dense = np.zeros((d, d), dtype=np.uint8)
        dense[np.arange(d), perm] = 1
        return cls.from_dense(dense)

    # views ---------------------------------------------------------------------

    @cached_property
    def dense(self) -> np.ndarray:
        arr = K.unpack(self.payload, self.cols)
        arr.flags.writeable = False
        return arr

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.payload, other.payload)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.payload.tobytes()))

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.rows}x{self.cols}".encode())
        h.update(self.payload.tobytes())
        return h.hexdigest()[:16]

    # arithmetic ------------------------------------------------------------------

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return BitMatrix(self.rows, self.cols, self.payload ^ other.payload)

    __xor__ = __add__

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        if K.USE_NUMBA and self.rows * other.cols < 1 << 20:
            return BitMatrix(self.rows, other.cols,
                             K.matmul_packed(self.payload, other.payload, self.cols, other.cols))
        return BitMatrix.from_dense(K.dense_matmul(self.dense, other.dense))

    @property
    def T(self) -> BitMatrix:
        return BitMatrix.from_dense(self.dense.T)

    def kron(self, other: BitMatrix) -> BitMatrix:
        return BitMatrix.from_dense(np.kron(self.dense, other.dense))

    def vstack(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.cols:
            raise ShapeMismatch(f"vstack {self.shape} / {other.shape}")
        return BitMatrix(self.rows + other.rows, self.cols, np.vstack([self.payload, other.payload]))

    def take_rows(self, idx) -> BitMatrix:
        idx = np.asarray(idx, dtype=np.int64)
        return BitMatrix(len(idx), self.cols, self.payload[idx])

    def is_zero(self) -> bool:
        return not self.payload.any()


# --- linear algebra -------------------------------------------------------------


def rref(m: BitMatrix) -> tuple[BitMatrix, np.ndarray]:
    """Reduced row echelon basis of the row space and its pivot columns."""
    words = m.payload.copy()
    rank, piv = K.rref_inplace(words, m.cols)
    return BitMatrix(rank, m.cols, words[:rank]), piv


def rank(m: BitMatrix) -> int:
    return rref(m)[0].rows


def nullspace(m: BitMatrix) -> BitMatrix:
    """Basis (RREF) of ``{x : m @ x = 0}`` as rows."""
    r, piv = rref(m)
    free = np.setdiff1d(np.arange(m.cols), piv)
    basis = np.zeros((len(free), m.cols), dtype=np.uint8)
    dense = r.dense
    for k, f in enumerate(free):
        basis[k, f] = 1
        basis[k, piv] = dense[:, f]
    out, _ = rref(BitMatrix.from_dense(basis))
    return out


def left_nullspace(m: BitMatrix) -> BitMatrix:
    """Basis of ``{x : x @ m = 0}`` as rows."""
    return nullspace(m.T)


def row_reduce_against(vectors: np.ndarray, basis_dense: np.ndarray, pivots: np.ndarray) -> np.ndarray:
    """Reduce dense rows against an RREF basis with the given pivot columns."""
    if len(pivots) == 0 or vectors.shape[0] == 0:
        return vectors.copy()
    coeff = vectors[:, pivots]
    return vectors ^ K.dense_matmul(coeff, basis_dense)


def solve_rows(basis: BitMatrix, targets: BitMatrix) -> BitMatrix:
    """``X`` with ``X @ basis == targets``; ``basis`` must have independent rows."""
    if basis.cols != targets.cols:
        raise ShapeMismatch(f"solve {basis.shape} / {targets.shape}")
    k = basis.rows
    aug = np.hstack([basis.dense, np.eye(k, dtype=np.uint8)])
    words = K.pack(aug)
    rnk, piv = K.rref_inplace(words, basis.cols)
    if rnk != k:
        raise ValueError("basis rows are dependent")
    full = K.unpack(words[:rnk], basis.cols + k)
    red, trans = full[:, : basis.cols], full[:, basis.cols :]
    coeff = targets.dense[:, piv]
    if not np.array_equal(K.dense_matmul(coeff, red), targets.dense):
        raise ValueError("target not in the row space")
    return BitMatrix.from_dense(K.dense_matmul(coeff, trans))


def solve(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """One solution ``x`` of ``a @ x = b`` (columns of ``b`` solved jointly)."""
    if a.rows != b.rows:
        raise ShapeMismatch(f"solve {a.shape} x = {b.shape}")
    aug = np.hstack([a.dense, b.dense])
    words = K.pack(aug)
    rnk, piv = K.rref_inplace(words, a.cols)
    full = K.unpack(words, a.cols + b.cols)
    if full[rnk:, a.cols :].any():
        raise ValueError("inconsistent system")
    x = np.zeros((a.cols, b.cols), dtype=np.uint8)
    x[piv] = full[:rnk, a.cols :]
    return BitMatrix.from_dense(x)


def inverse(m: BitMatrix) -> BitMatrix:
    if m.rows != m.cols:
        raise ShapeMismatch(f"inverse of {m.shape}")
    return solve(m, BitMatrix.identity(m.rows))


def is_invertible(m: BitMatrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows
