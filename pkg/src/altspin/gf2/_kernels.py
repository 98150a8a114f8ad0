"""Bit-packed GF(2) kernels with a numba path and a pure-numpy path.

Rows are packed little-endian into uint64 words: column ``j`` lives in bit
``j % 64`` of word ``j // 64``.  Pad bits past the last column are zero.

Set ``ALTSPIN_PURE_NUMPY=1`` to force the numpy path (the numba path is also
skipped when numba is not importable).  Both paths produce identical output.
"""

from __future__ import annotations

import os

import numpy as np

WORD = 64

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("ALTSPIN_PURE_NUMPY", "") not in ("1", "true", "yes")


def nwords(ncols: int) -> int:
    return (ncols + WORD - 1) // WORD


def pack(dense: np.ndarray) -> np.ndarray:
    """0/1 matrix -> packed uint64 words (rows x nwords)."""
    dense = np.ascontiguousarray(dense, dtype=np.uint8) & 1
    rows, cols = dense.shape
    nw = nwords(cols)
    if rows == 0 or nw == 0:
        return np.zeros((rows, nw), dtype=np.uint64)
    padded = np.zeros((rows, nw * WORD), dtype=np.uint8)
    padded[:, :cols] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64).reshape(rows, nw)


def unpack(words: np.ndarray, ncols: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype=np.uint64)
    rows = words.shape[0]
    if rows == 0 or words.shape[1] == 0:
        return np.zeros((rows, ncols), dtype=np.uint8)
    as_bytes = words.view(np.uint8).reshape(rows, -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :ncols]


# --- row reduction -------------------------------------------------------------


def _rref_numpy(words: np.ndarray, ncols: int) -> tuple[int, np.ndarray]:
    rows = words.shape[0]
    pivots = []
    rank = 0
    one = np.uint64(1)
    for col in range(ncols):
        if rank == rows:
            break
        w, b = col // WORD, np.uint64(col % WORD)
        column = (words[:, w] >> b) & one
        below = np.flatnonzero(column[rank:])
        if below.size == 0:
            continue
        piv = rank + below[0]
        if piv != rank:
            words[[rank, piv]] = words[[piv, rank]]
            column[[rank, piv]] = column[[piv, rank]]
        hits = np.flatnonzero(column)
        hits = hits[hits != rank]
        if hits.size:
            words[hits] ^= words[rank]
        pivots.append(col)
        rank += 1
    return rank, np.asarray(pivots, dtype=np.int64)


if USE_NUMBA:

    @numba.njit(cache=True)
    def _rref_numba(words, ncols):  # pragma: no cover - compiled
        rows, nw = words.shape
        pivots = np.empty(min(rows, ncols), dtype=np.int64)
        rank = 0
        for col in range(ncols):
            if rank == rows:
                break
            w = col // 64
            mask = np.uint64(1) << np.uint64(col % 64)
            piv = -1
            for r in range(rank, rows):
                if words[r, w] & mask:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for k in range(nw):
                    tmp = words[rank, k]
                    words[rank, k] = words[piv, k]
                    words[piv, k] = tmp
            for r in range(rows):
                if r != rank and (words[r, w] & mask):
                    for k in range(w, nw):
                        words[r, k] ^= words[rank, k]
            pivots[rank] = col
            rank += 1
        return rank, pivots[:rank].copy()

    @numba.njit(cache=True)
    def _matmul_numba(a, b, inner):  # pragma: no cover - compiled
        rows = a.shape[0]
        nw = b.shape[1]
        out = np.zeros((rows, nw), dtype=np.uint64)
        for i in range(rows):
            for j in range(inner):
                if (a[i, j // 64] >> np.uint64(j % 64)) & np.uint64(1):
                    for k in range(nw):
                        out[i, k] ^= b[j, k]
        return out


def rref_inplace(words: np.ndarray, ncols: int, use_numba: bool | None = None) -> tuple[int, np.ndarray]:
    """Reduced row echelon form in place, pivoting only on the first ``ncols`` columns.

    Columns past ``ncols`` ride along (augmented data).  Returns
    ``(rank, pivot_columns)``; the first ``rank`` rows hold the pivot rows in
    pivot order and the rest are zero on the pivot range.
    """
    if use_numba is None:
        use_numba = USE_NUMBA
    if words.shape[0] == 0 or ncols == 0:
        return 0, np.zeros(0, dtype=np.int64)
    if use_numba:
        rank, piv = _rref_numba(words, ncols)
        return int(rank), piv
    return _rref_numpy(words, ncols)


def matmul_packed(a: np.ndarray, b: np.ndarray, inner: int, ncols: int, use_numba: bool | None = None) -> np.ndarray:
    """Product of packed matrices: ``a`` is rows x inner, ``b`` is inner x ncols."""
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _matmul_numba(np.ascontiguousarray(a), np.ascontiguousarray(b), inner)
    prod = dense_matmul(unpack(a, inner), unpack(b, ncols))
    return pack(prod)


def dense_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """0/1 dense product mod 2 through float BLAS (exact below 2**24 terms)."""
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.uint8)
    prod = a.astype(np.float32) @ b.astype(np.float32)
    return (prod.astype(np.int64) & 1).astype(np.uint8)
