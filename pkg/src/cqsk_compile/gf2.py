"""Dense linear algebra over GF(2) on uint8 numpy arrays."""

from __future__ import annotations

import numpy as np


def as_bits(a) -> np.ndarray:
    return np.asarray(a, dtype=np.uint8) & 1


def row_reduce(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = as_bits(a).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        hits = np.nonzero(m[:, c])[0]
        hits = hits[hits != r]
        m[hits] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray) -> int:
    return len(row_reduce(a)[1])


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution of ``a @ x = b`` or None if inconsistent."""
    a = as_bits(a)
    b = as_bits(b).reshape(-1, 1)
    aug, pivots = row_reduce(np.hstack([a, b]))
    ncols = a.shape[1]
    if pivots and pivots[-1] == ncols:
        return None
    x = np.zeros(ncols, dtype=np.uint8)
    for r, c in enumerate(pivots):
        x[c] = aug[r, ncols]
    return x


def nullspace(a: np.ndarray) -> np.ndarray:
    """Basis of {x : a @ x = 0}, one vector per row."""
    a = as_bits(a)
    red, pivots = row_reduce(a)
    ncols = a.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, c in enumerate(pivots):
            basis[i, c] = red[r, f]
    return basis


def inverse(a: np.ndarray) -> np.ndarray:
    a = as_bits(a)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    red, pivots = row_reduce(np.hstack([a, np.eye(n, dtype=np.uint8)]))
    if pivots[:n] != list(range(n)):
        raise np.linalg.LinAlgError("matrix is singular over GF(2)")
    return red[:, n:].copy()


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (as_bits(a).astype(np.int64) @ as_bits(b).astype(np.int64) & 1).astype(np.uint8)


def omega(n: int) -> np.ndarray:
    """Symplectic form for the [x | z] layout."""
    z = np.zeros((n, n), dtype=np.uint8)
    i = np.eye(n, dtype=np.uint8)
    return np.block([[z, i], [i, z]])
