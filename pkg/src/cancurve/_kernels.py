"""Jitted Gaussian elimination kernels, imported lazily by linalg.

Pivot rows are reduced mod p once when they are frozen; every other row
accumulates raw int64 values.  One elimination hit changes an entry by at
most (p-1)^2, so magnitudes stay below rows * p^2 and the hot inner loops
need no division at all.  Callers guarantee 2 * min(rows, cols) * p^2 fits
in int64 and hand over C-contiguous arrays already reduced mod p.
"""

from __future__ import annotations

from numba import njit


@njit("int64(int64[:, ::1], int64)", cache=True)
def rank_kernel(a, p):
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] % p != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                t = a[piv, j]
                a[piv, j] = a[r, j]
                a[r, j] = t
        for j in range(c, cols):
            a[r, j] %= p
        inv = 1
        base = a[r, c]
        e = p - 2
        while e:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for i in range(r + 1, rows):
            f = a[i, c] % p * inv % p
            if f:
                for j in range(c + 1, cols):
                    a[i, j] -= f * a[r, j]
                a[i, c] = 0
        r += 1
    return r


@njit("int64(int64[:, ::1], int64, int64[::1])", cache=True)
def rref_kernel(a, p, piv):
    """Full reduced row echelon form in place; pivot columns go into piv."""
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hit = -1
        for i in range(r, rows):
            if a[i, c] % p != 0:
                hit = i
                break
        if hit < 0:
            continue
        if hit != r:
            for j in range(c, cols):
                t = a[hit, j]
                a[hit, j] = a[r, j]
                a[r, j] = t
        inv = 1
        base = a[r, c] % p
        e = p - 2
        while e:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for j in range(c, cols):
            a[r, j] = a[r, j] % p * inv % p
        for i in range(r + 1, rows):
            f = a[i, c] % p
            if f:
                for j in range(c + 1, cols):
                    a[i, j] -= f * a[r, j]
                a[i, c] = 0
        piv[r] = c
        r += 1
    for k in range(r - 1, -1, -1):
        c = piv[k]
        for j in range(c, cols):
            a[k, j] %= p
        for i in range(k):
            f = a[i, c] % p
            if f:
                for j in range(c, cols):
                    a[i, j] -= f * a[k, j]
    for i in range(rows):
        for j in range(cols):
            a[i, j] %= p
    return r
