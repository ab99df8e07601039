import pytest

from cancurve.field import (
    PrimeField,
    is_prime,
    projective_lines,
    projective_points,
    sqrt_mod,
)

PRIMES = [2, 3, 5, 7, 11]


def test_is_prime_small():
    assert [n for n in range(2, 32) if is_prime(n)] == [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31,
    ]
    assert not is_prime(0)
    assert not is_prime(1)


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        PrimeField(6)


@pytest.mark.parametrize("p", PRIMES)
def test_inverse_exhaustive(p):
    k = PrimeField(p)
    for a in range(1, p):
        assert (k(a) * k.inv(a)).value == 1


@pytest.mark.parametrize("p", PRIMES)
def test_field_arithmetic(p):
    k = PrimeField(p)
    for a in range(p):
        for b in range(p):
            assert (k(a) + k(b)).value == (a + b) % p
            assert (k(a) - k(b)).value == (a - b) % p
            assert (k(a) * k(b)).value == a * b % p
    x = k(p - 1)
    assert (-x).value == 1 % p
    assert (x ** 3).value == pow(p - 1, 3, p)


@pytest.mark.parametrize("p", PRIMES)
def test_sqrt_counts(p):
    squares = [a for a in range(p) if sqrt_mod(a, p) is not None]
    if p == 2:
        assert len(squares) == 2
    else:
        # 0 plus the (p-1)/2 nonzero squares
        assert len(squares) == (p + 1) // 2
    for a in squares:
        r = sqrt_mod(a, p)
        assert r * r % p == a


def test_sqrt_large_prime():
    p = 32003
    hits = 0
    for a in range(1, 200):
        r = sqrt_mod(a * a % p, p)
        assert r is not None and r * r % p == a * a % p
        hits += 1
    assert hits == 199


@pytest.mark.parametrize("p", PRIMES)
def test_projective_points(p):
    pts = projective_points(p)
    assert len(pts) == p * p + p + 1
    assert len(set(pts)) == len(pts)
    for pt in pts:
        nz = [c for c in pt if c]
        assert nz and nz[0] == 1
        assert all(0 <= c < p for c in pt)


@pytest.mark.parametrize("p", PRIMES)
def test_projective_lines(p):
    lines = projective_lines(p)
    assert len(lines) == p * p + p + 1
    # every line has exactly p+1 rational points
    pts = projective_points(p)
    for line in lines[:: max(1, len(lines) // 7)]:
        on = sum(
            1 for pt in pts if sum(line[i] * pt[i] for i in range(3)) % p == 0
        )
        assert on == p + 1
