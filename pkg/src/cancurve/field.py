"""Exact arithmetic in prime fields F_p.

Elements are canonical residues in [0, p).  The experiment workloads only
use p in {2, 3, 5, 7, 11}, but any machine-word prime is accepted.
"""

from __future__ import annotations

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every 64-bit integer."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sqrt_mod(a: int, p: int) -> int | None:
    """Smaller square root of a mod p, or None if a is a non-residue.

    In characteristic 2 the Frobenius is bijective, so the root exists and
    is unique.  Small p is handled by exhaustion, larger p by Tonelli-Shanks.
    """
    a %= p
    if p == 2 or a == 0:
        return a
    if p <= 61:
        for r in range(1, p // 2 + 1):
            if r * r % p == a:
                return r
        return None
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # Tonelli-Shanks: write p-1 = q * 2^s with q odd.
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t * t % p, 1
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


class FieldElement:
    """A residue in F_p with operator-overloaded arithmetic."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: "PrimeField"):
        self.value = value % field.p
        self.field = field

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field.p != self.field.p:
                raise ValueError("elements of different prime fields")
            return other
        if isinstance(other, int):
            return FieldElement(other, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value + other.value, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value - other.value, self.field)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(other.value - self.value, self.field)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * other.value, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElement(pow(self.value, n, self.field.p), self.field)

    def __neg__(self):
        return FieldElement(-self.value, self.field)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field.p == other.field.p
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}"

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.field.p)
        return FieldElement(pow(self.value, self.field.p - 2, self.field.p), self.field)

    def sqrt(self) -> "FieldElement | None":
        r = sqrt_mod(self.value, self.field.p)
        return None if r is None else FieldElement(r, self.field)

    def is_square(self) -> bool:
        return sqrt_mod(self.value, self.field.p) is not None


class PrimeField:
    """The field F_p, acting as a factory for its elements."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value, self)

    def element(self, value: int) -> FieldElement:
        return FieldElement(value, self)

    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def elements(self):
        """All residues in canonical order."""
        return [FieldElement(v, self) for v in range(self.p)]

    def inv(self, a: int) -> int:
        """Inverse of a residue, as an int."""
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return pow(a, self.p - 2, self.p)

    def sqrt(self, a: int) -> int | None:
        return sqrt_mod(a, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"F_{self.p}"


def projective_points(p: int) -> list[tuple[int, int, int]]:
    """The p^2 + p + 1 points of P^2(F_p), first nonzero coordinate 1.

    Enumeration order is fixed: (1 : a : b), then (0 : 1 : b), then (0 : 0 : 1).
    """
    pts = [(1, a, b) for a in range(p) for b in range(p)]
    pts += [(0, 1, b) for b in range(p)]
    pts.append((0, 0, 1))
    return pts


def projective_lines(p: int) -> list[tuple[int, int, int]]:
    """Coefficient triples of the lines of P^2(F_p), same normalization."""
    return projective_points(p)
