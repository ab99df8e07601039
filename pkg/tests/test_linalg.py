"""Exact linear algebra over F_p, including agreement between the jitted
elimination kernels and the plain numpy fallback."""

import random

import numpy as np
import pytest

from cancurve import linalg


def random_matrix(rng, rows, cols, p):
    return np.array(
        [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)],
        dtype=np.int64,
    )


def planted(rng, rows, cols, r, p):
    """Product of random rows x r and r x cols factors: rank at most r."""
    a = random_matrix(rng, rows, r, p)
    b = random_matrix(rng, r, cols, p)
    return (a @ b) % p


def is_rref(a, pivots, p):
    rows, cols = a.shape
    assert list(pivots) == sorted(set(pivots))
    for r, c in enumerate(pivots):
        col = a[:, c]
        assert col[r] == 1
        assert not any(col[k] for k in range(rows) if k != r)
        assert not any(a[r, :c])
    for r in range(len(pivots), rows):
        assert not a[r].any()
    assert ((a % p) == a).all()


@pytest.mark.parametrize("p", [2, 3, 5, 11, 32003])
def test_rref_canonical(p):
    rng = random.Random(p)
    for rows, cols in [(1, 1), (3, 5), (5, 3), (8, 8), (10, 4)]:
        m = random_matrix(rng, rows, cols, p)
        red, piv = linalg.rref(m.copy(), p)
        is_rref(red, piv, p)
        assert linalg.rank(m, p) == len(piv)


def test_rref_idempotent():
    rng = random.Random(0)
    for _ in range(20):
        m = random_matrix(rng, 6, 9, 5)
        red, piv = linalg.rref(m, 5)
        again, piv2 = linalg.rref(red, 5)
        assert (again == red).all() and piv2 == piv


@pytest.mark.parametrize("p", [2, 5, 32003])
def test_rank_planted(p):
    rng = random.Random(p + 1)
    for _ in range(15):
        r = rng.randrange(1, 5)
        m = planted(rng, 7, 9, r, p)
        assert linalg.rank(m, p) <= r
    # full-rank identity block stays full rank
    m = np.eye(6, dtype=np.int64)
    assert linalg.rank(m, p) == 6


def test_rank_zero_and_empty():
    assert linalg.rank(np.zeros((3, 4), dtype=np.int64), 5) == 0
    assert linalg.rank(np.zeros((0, 4), dtype=np.int64), 5) == 0


def test_accelerated_paths_match_fallback():
    """Above the size cutoff rref/rank dispatch to the compiled kernels;
    both routes must produce identical canonical forms."""
    if not linalg.warm_accelerator():
        pytest.skip("accelerator unavailable")
    rng = random.Random(7)
    for p in (2, 3, 11, 251):
        for rows, cols in [(48, 64), (64, 48), (60, 60)]:
            m = planted(rng, rows, cols, rng.randrange(1, 40), p)
            assert m.size >= linalg._ACCEL_MIN_SIZE
            fast_red, fast_piv = linalg.rref(m.copy(), p)
            fast_rank = linalg.rank(m.copy(), p)
            saved = linalg._accel
            linalg._accel = False
            try:
                slow_red, slow_piv = linalg.rref(m.copy(), p)
                slow_rank = linalg.rank(m.copy(), p)
            finally:
                linalg._accel = saved
            assert fast_piv == slow_piv
            assert fast_rank == slow_rank
            assert (fast_red == slow_red).all()


def test_accel_overflow_guard():
    # the delayed-reduction kernel is only safe while the accumulated
    # entries stay inside int64; huge p on a big matrix must not qualify
    assert not linalg._accel_fits((100, 100), 2147483647)
    assert linalg._accel_fits((100, 100), 32003)


@pytest.mark.parametrize("p", [2, 5, 7])
def test_kernel_basis(p):
    rng = random.Random(p)
    for _ in range(12):
        rows, cols = rng.randrange(1, 7), rng.randrange(1, 9)
        m = random_matrix(rng, rows, cols, p)
        ker = linalg.kernel_basis(m, p)
        assert len(ker) == cols - linalg.rank(m, p)
        if len(ker):
            assert not ((m @ np.array(ker).T) % p).any()
            assert linalg.rank(np.array(ker), p) == len(ker)


def test_kernel_of_injective_map_is_empty():
    m = np.array([[1, 0], [0, 1], [1, 1]], dtype=np.int64)
    assert len(linalg.kernel_basis(m, 5)) == 0


def test_row_space_extension():
    p = 5
    base = np.array([[1, 0, 0, 0], [0, 1, 0, 0]], dtype=np.int64)
    cands = np.array(
        [[2, 3, 0, 0], [0, 0, 1, 1], [0, 0, 2, 2], [0, 0, 0, 3]],
        dtype=np.int64,
    )
    picked = linalg.row_space_extension(base, cands, p)
    assert picked == [1, 3]
    stacked = np.vstack([base, cands[picked]])
    assert linalg.rank(stacked, p) == 4


def test_reduce_against():
    p = 7
    rows, piv = linalg.rref(
        np.array([[1, 2, 0], [0, 0, 1]], dtype=np.int64), p
    )
    v = linalg.reduce_against(rows, np.array([3, 6, 5], dtype=np.int64), p)
    assert not v.any()
    w = linalg.reduce_against(rows, np.array([0, 1, 0], dtype=np.int64), p)
    assert w.any()


def test_det():
    p = 7
    assert linalg.det(np.array([[2, 1], [1, 4]], dtype=np.int64), p) == 0
    assert linalg.det(np.array([[1, 2], [3, 4]], dtype=np.int64), p) == (1 * 4 - 2 * 3) % p
    rng = random.Random(2)
    for _ in range(10):
        a = random_matrix(rng, 3, 3, p)
        b = random_matrix(rng, 3, 3, p)
        ab = (a @ b) % p
        assert linalg.det(ab, p) == linalg.det(a, p) * linalg.det(b, p) % p
