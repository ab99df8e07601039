"""Exact dense linear algebra mod p on numpy integer matrices.

All routines are deterministic: pivots are chosen as the first usable row
in column order, so echelon forms and kernel bases are canonical.  Large
eliminations are handed to jitted kernels when numba is importable; the
numpy fallback computes exactly the same thing.
"""

from __future__ import annotations

import numpy as np

_ACCEL_MIN_SIZE = 2048
_accel = None


def _load_accel():
    global _accel
    if _accel is None:
        try:
            from . import _kernels

            _accel = _kernels
        except Exception:
            _accel = False
    return _accel


def warm_accelerator() -> bool:
    """Force the jitted kernels to load now; True if they are available."""
    return bool(_load_accel())


def _accel_fits(shape, p: int) -> bool:
    # raw entries stay below 2 * pivots * p^2 in magnitude
    return 2 * (min(shape) + 1) * p * p < 2**62


def as_matrix(rows, width: int | None = None) -> np.ndarray:
    arr = np.array(rows, dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, width or 0)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return arr


def rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over F_p, returned with pivot columns."""
    a = np.mod(np.array(mat, dtype=np.int64), p)
    rows, cols = a.shape
    if a.size >= _ACCEL_MIN_SIZE and _accel_fits(a.shape, p):
        mod = _load_accel()
        if mod:
            a = np.ascontiguousarray(a)
            piv = np.zeros(min(rows, cols) + 1, dtype=np.int64)
            r = mod.rref_kernel(a, p, piv)
            return a, [int(c) for c in piv[:r]]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r, c:] = a[r, c:] * inv % p
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        if hit.size:
            # rows left of the pivot are already clear, so update the tail only
            a[hit, c:] = (a[hit, c:] - np.outer(a[hit, c], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(mat: np.ndarray, p: int) -> int:
    """Rank over F_p by forward elimination, no back-substitution.

    Only rows with a nonzero entry in the pivot column are touched, which
    keeps the cost near the fill-in for the sparse matrices this sees.
    """
    if mat.size == 0:
        return 0
    a = np.mod(np.asarray(mat, dtype=np.int64), p)
    if a.size >= _ACCEL_MIN_SIZE and _accel_fits(a.shape, p):
        mod = _load_accel()
        if mod:
            return int(mod.rank_kernel(np.ascontiguousarray(a), p))
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        sub = nz[1:]
        if sub.size:
            inv = pow(int(a[r, c]), p - 2, p)
            hit = r + sub
            factors = a[hit, c] * inv % p
            a[hit, c + 1 :] = (a[hit, c + 1 :] - np.outer(factors, a[r, c + 1 :])) % p
        r += 1
    return r


def kernel_basis(mat: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis of the right kernel, one row per basis vector.

    Each vector has 1 in its free column and the pivot columns filled by
    back-substitution from the RREF.
    """
    mat = np.mod(np.array(mat, dtype=np.int64), p)
    rows, cols = mat.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref(mat, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-int(r[i, fc])) % p
    return basis


def row_space_extension(base: np.ndarray, candidates: np.ndarray, p: int) -> list[int]:
    """Indices of candidate rows that enlarge the row space of base, greedily."""
    width = candidates.shape[1] if candidates.size else (base.shape[1] if base.size else 0)
    if base.size:
        work, _ = rref(base, p)
        work = work[np.any(work, axis=1)]
    else:
        work = np.zeros((0, width), dtype=np.int64)
    picked = []
    for idx in range(candidates.shape[0]):
        v = reduce_against(work, candidates[idx], p)
        if np.any(v):
            work = _insert_reduced(work, v, p)
            picked.append(idx)
    return picked


def reduce_against(reduced_rows: np.ndarray, vec: np.ndarray, p: int) -> np.ndarray:
    """Reduce vec modulo a set of RREF rows (leading entries 1)."""
    v = np.mod(np.array(vec, dtype=np.int64), p)
    for row in reduced_rows:
        nz = np.nonzero(row)[0]
        if nz.size == 0:
            continue
        lead = nz[0]
        if v[lead]:
            v = (v - v[lead] * row) % p
    return v


def _insert_reduced(work: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    lead = int(np.nonzero(v)[0][0])
    v = v * pow(int(v[lead]), p - 2, p) % p
    if work.size:
        hit = np.nonzero(work[:, lead])[0]
        if hit.size:
            work[hit] = (work[hit] - np.outer(work[hit, lead], v)) % p
    return np.vstack([work, v.reshape(1, -1)])


def det(mat: np.ndarray, p: int) -> int:
    """Determinant over F_p by Gaussian elimination."""
    a = np.mod(np.array(mat, dtype=np.int64), p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    d = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            a[[c, i]] = a[[i, c]]
            d = -d
        piv = int(a[c, c])
        d = d * piv % p
        inv = pow(piv, p - 2, p)
        below = np.arange(c + 1, n)
        if below.size:
            factors = a[below, c] * inv % p
            a[below] = (a[below] - np.outer(factors, a[c])) % p
    return d % p
