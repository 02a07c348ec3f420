"""Dense linear algebra over GF(2).

Matrices are ``numpy.uint8`` arrays holding only 0 and 1.  Everything in this
package is small (a few hundred rows at most), so no bit packing is done.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np


def as_gf2(m) -> np.ndarray:
    """Copy ``m`` into a fresh uint8 array reduced mod 2."""
    return (np.asarray(m, dtype=np.int64) % 2).astype(np.uint8)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.uint8)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # uint8 accumulation wraps mod 256, which keeps the parity intact
    return (np.asarray(a, dtype=np.uint8) @ np.asarray(b, dtype=np.uint8)) & 1


def rref(m) -> Tuple[np.ndarray, int, List[int]]:
    """Reduced row-echelon form, rank and pivot columns.

    Pivots are chosen at the lowest available column and, within a column, at
    the topmost remaining row, so the output is canonical.
    """
    a = as_gf2(m)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.flatnonzero(a[r:, c])
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        mask = a[:, c].astype(bool)
        mask[r] = False
        a[mask] ^= a[r]
        pivots.append(c)
        r += 1
    return a, r, pivots


def rank(m) -> int:
    return rref(m)[1]


def kernel(m) -> np.ndarray:
    """Basis of the right kernel, one vector per row (shape ``(nullity, cols)``)."""
    a = as_gf2(m)
    cols = a.shape[1]
    red, rk, pivots = rref(a)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = zeros(len(free), cols)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, p in enumerate(pivots):
            basis[t, p] = red[i, f]
    return basis


def solve(a, b) -> Tuple[Optional[np.ndarray], np.ndarray]:
    """Solve ``a @ x = b``.

    Returns ``(x, kernel_basis)``.  ``x`` is the solution with all free
    variables set to zero, or ``None`` when the system is inconsistent.
    """
    a = as_gf2(a)
    b = as_gf2(b).reshape(-1)
    rows, cols = a.shape
    if b.shape[0] != rows:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    red, rk, pivots = rref(np.concatenate([a, b.reshape(-1, 1)], axis=1))
    ker = kernel(a)
    if pivots and pivots[-1] == cols:
        return None, ker
    x = np.zeros(cols, dtype=np.uint8)
    for i, p in enumerate(pivots):
        x[p] = red[i, cols]
    return x, ker


def invert(a) -> Optional[np.ndarray]:
    """Inverse of a square matrix, or ``None`` if it is singular."""
    a = as_gf2(a)
    n, m = a.shape
    if n != m:
        raise ValueError("invert needs a square matrix")
    red, rk, pivots = rref(np.concatenate([a, identity(n)], axis=1))
    if rk < n or pivots[n - 1] >= n:
        return None
    return red[:, n:].copy()


__all__ = ["as_gf2", "zeros", "identity", "matmul", "rref", "rank", "kernel", "solve", "invert"]
