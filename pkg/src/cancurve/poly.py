"""Sparse multivariate polynomials over F_p.

A monomial is a tuple of exponents, a polynomial a dict mapping monomials
to nonzero canonical residues.  Monomial orders expose an additive key():
key(m * n) = key(m) + key(n) componentwise, which the Groebner engine
relies on to shift precomputed keys instead of recomputing them.
"""

from __future__ import annotations

import re
from functools import cache

from .field import PrimeField

Monomial = tuple  # exponent tuples


def m_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def m_div(a: Monomial, b: Monomial) -> Monomial | None:
    """a / b, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def m_divides(b: Monomial, a: Monomial) -> bool:
    return all(y <= x for x, y in zip(a, b))


def m_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class MonomialOrder:
    """Base class; subclasses provide the additive key on exponent tuples."""

    name = "order"

    def __init__(self, ring: "Ring"):
        self.ring = ring

    def key(self, expo: Monomial):
        raise NotImplementedError

    def sort_terms(self, poly: "Polynomial") -> list[tuple[Monomial, int]]:
        """Terms of poly, leading term first."""
        return sorted(poly.terms.items(), key=lambda t: self.key(t[0]), reverse=True)

    def leading_term(self, poly: "Polynomial") -> tuple[Monomial, int]:
        if not poly.terms:
            raise ValueError("leading term of the zero polynomial")
        m = max(poly.terms, key=self.key)
        return m, poly.terms[m]


class GrevlexOrder(MonomialOrder):
    """Graded reverse lexicographic order (weighted degree first)."""

    name = "grevlex"

    def key(self, expo: Monomial):
        w = self.ring.weights
        return (sum(e * wi for e, wi in zip(expo, w)),) + tuple(-e for e in reversed(expo))


class LexOrder(MonomialOrder):
    name = "lex"

    def key(self, expo: Monomial):
        return expo


class BlockOrder(MonomialOrder):
    """Eliminates the first `front` variables: grevlex on each block,
    front block compared first."""

    name = "block"

    def __init__(self, ring: "Ring", front: int):
        super().__init__(ring)
        if not 0 < front < ring.nvars:
            raise ValueError("block split must be strictly inside the variable list")
        self.front = front

    def key(self, expo: Monomial):
        f = self.front
        w = self.ring.weights
        head = expo[:f]
        tail = expo[f:]
        return (
            (sum(e * wi for e, wi in zip(head, w[:f])),)
            + tuple(-e for e in reversed(head))
            + (sum(e * wi for e, wi in zip(tail, w[f:])),)
            + tuple(-e for e in reversed(tail))
        )


class Ring:
    """A polynomial ring F_p[x_1..x_n] with optional variable weights."""

    def __init__(self, p: int, names, weights=None):
        self.field = PrimeField(p)
        self.p = p
        self.names = tuple(names)
        self.nvars = len(self.names)
        if len(set(self.names)) != self.nvars or not self.nvars:
            raise ValueError("variable names must be distinct and nonempty")
        self.weights = tuple(weights) if weights is not None else (1,) * self.nvars
        if len(self.weights) != self.nvars or any(w < 1 for w in self.weights):
            raise ValueError("need one positive weight per variable")
        self._zero_mono = (0,) * self.nvars
        self.grevlex = GrevlexOrder(self)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and other.p == self.p
            and other.names == self.names
            and other.weights == self.weights
        )

    def __hash__(self):
        return hash((self.p, self.names, self.weights))

    def __repr__(self):
        return f"F_{self.p}[{','.join(self.names)}]"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self._zero_mono: 1})

    def constant(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {self._zero_mono: c} if c else {})

    def variable(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def variables(self) -> list["Polynomial"]:
        return [self.variable(i) for i in range(self.nvars)]

    def monomial(self, expo, c: int = 1) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {tuple(expo): c} if c else {})

    def from_terms(self, terms: dict) -> "Polynomial":
        clean = {}
        for m, c in terms.items():
            c %= self.p
            if c:
                clean[tuple(m)] = c
        return Polynomial(self, clean)

    def monomials_of_degree(self, d: int) -> list[Monomial]:
        """All exponent tuples of plain total degree d, lex order."""
        return _monomials(self.nvars, d)

    def wdeg(self, expo: Monomial) -> int:
        return sum(e * w for e, w in zip(expo, self.weights))

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def random_form(self, degree: int, rng) -> "Polynomial":
        """Uniformly random homogeneous form of the given degree."""
        return self.from_terms(
            {m: rng.randrange(self.p) for m in self.monomials_of_degree(degree)}
        )


@cache
def _monomials(n: int, d: int) -> list[Monomial]:
    if n == 1:
        return [(d,)]
    out = []
    for e in range(d, -1, -1):
        out.extend((e,) + rest for rest in _monomials(n - 1, d - e))
    return out


class Polynomial:
    """Immutable-by-convention sparse polynomial."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- arithmetic ------------------------------------------------------

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = (out.get(m, 0) + c) % p
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ring.p
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m_mul(m1, m2)
                s = (out.get(m, 0) + c1 * c2) % p
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def scale(self, c: int) -> "Polynomial":
        c %= self.ring.p
        if c == 0:
            return self.ring.zero()
        p = self.ring.p
        return Polynomial(self.ring, {m: c * v % p for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == self.ring.constant(other).terms
        return (
            isinstance(other, Polynomial)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- structure -------------------------------------------------------

    def degree(self) -> int:
        """Weighted total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.wdeg(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.wdeg(m) for m in self.terms}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_coefficient(self) -> int:
        return self.terms.get(self.ring._zero_mono, 0)

    def coefficient(self, expo) -> int:
        return self.terms.get(tuple(expo), 0)

    def homogeneous_parts(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(self.ring.wdeg(m), {})[m] = c
        return {d: Polynomial(self.ring, t) for d, t in sorted(parts.items())}

    def homogeneous_components(self, center=None) -> list["Polynomial"]:
        """The list [f_(0), f_(1), ...] of graded pieces at a point.

        With a center the polynomial is first translated so the center sits
        at the origin.  Trailing entries run through the top degree; interior
        zero pieces are included.
        """
        f = self.translate(center) if center else self
        if not f.terms:
            return []
        parts = f.homogeneous_parts()
        top = max(parts)
        zero = self.ring.zero()
        return [parts.get(d, zero) for d in range(top + 1)]

    def translate(self, center) -> "Polynomial":
        """Substitute x_i -> x_i + c_i."""
        imgs = [self.ring.variable(i) + int(c) for i, c in enumerate(center)]
        if len(imgs) != self.ring.nvars:
            raise ValueError("center length mismatch")
        return self.substitute(imgs)

    def diff(self, i: int) -> "Polynomial":
        """Formal partial derivative with respect to variable i."""
        p = self.ring.p
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            nc = c * e % p
            if nc:
                nm = m[:i] + (e - 1,) + m[i + 1 :]
                out[nm] = (out.get(nm, 0) + nc) % p
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    def evaluate(self, point) -> int:
        """Value at a point of residues, as a canonical residue."""
        p = self.ring.p
        vals = [int(v) % p for v in point]
        if len(vals) != self.ring.nvars:
            raise ValueError("point length mismatch")
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t = t * pow(v, e, p) % p
            total = (total + t) % p
        return total

    def substitute(self, images: list["Polynomial"]) -> "Polynomial":
        """Ring map sending variable i to images[i]."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        ring = images[0].ring
        pow_cache: list[dict[int, Polynomial]] = [{0: ring.one()} for _ in images]

        def power(i: int, e: int) -> Polynomial:
            cache_i = pow_cache[i]
            if e not in cache_i:
                cache_i[e] = power(i, e - 1) * images[i]
            return cache_i[e]

        out = ring.zero()
        for m, c in self.terms.items():
            t = ring.constant(c)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            out = out + t
        return out

    def apply_matrix(self, mat) -> "Polynomial":
        """Linear change of variables x_i -> sum_j mat[i][j] x_j."""
        ring = self.ring
        imgs = []
        for i in range(ring.nvars):
            img = ring.zero()
            for j in range(ring.nvars):
                img = img + ring.variable(j).scale(int(mat[i][j]))
            imgs.append(img)
        return self.substitute(imgs)

    def dehomogenize(self, var: int) -> "Polynomial":
        """Set variable var to 1, in a ring without it."""
        names = self.ring.names[:var] + self.ring.names[var + 1 :]
        sub = Ring(self.ring.p, names)
        out: dict = {}
        for m, c in self.terms.items():
            nm = m[:var] + m[var + 1 :]
            out[nm] = (out.get(nm, 0) + c) % self.ring.p
        return Polynomial(sub, {m: c for m, c in out.items() if c})

    def map_to(self, ring: Ring, positions: list[int]) -> "Polynomial":
        """Reinterpret in another ring; positions maps new variable index to
        old exponent slot.  Exponents outside `positions` must be zero."""
        out = {}
        keep = set(positions)
        for m, c in self.terms.items():
            if any(e and i not in keep for i, e in enumerate(m)):
                raise ValueError("polynomial uses a variable outside the target ring")
            out[tuple(m[i] for i in positions)] = c
        return Polynomial(ring, out)

    # -- text ------------------------------------------------------------

    def __repr__(self):
        return format_polynomial(self)

    def __str__(self):
        return format_polynomial(self)


def format_polynomial(f: Polynomial, order: MonomialOrder | None = None) -> str:
    """Canonical text form: terms in descending order joined by ' + '."""
    if not f.terms:
        return "0"
    order = order or f.ring.grevlex
    names = f.ring.names
    chunks = []
    for m, c in order.sort_terms(f):
        factors = []
        if c != 1 or not any(m):
            factors.append(str(c))
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        chunks.append("*".join(factors))
    return " + ".join(chunks)


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+|\^|\*|\+|-)")


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    """Parse the term grammar: c*x^a*y^b joined by '+' or '-'."""
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad character in polynomial text: {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise ValueError("empty polynomial text")
    index = {n: i for i, n in enumerate(ring.names)}
    p = ring.p
    terms: dict = {}
    i = 0
    sign = 1
    # leading sign
    while i < len(tokens) and tokens[i] in "+-":
        if tokens[i] == "-":
            sign = -sign
        i += 1
    while i < len(tokens):
        coeff = 1
        expo = [0] * ring.nvars
        expect_factor = True
        while i < len(tokens) and (tokens[i] not in "+-" or expect_factor):
            tok = tokens[i]
            if tok == "*":
                i += 1
                expect_factor = True
                continue
            if tok in "+-":
                raise ValueError("misplaced sign in polynomial text")
            if tok.isdigit():
                coeff = coeff * int(tok)
                i += 1
            elif tok == "^":
                raise ValueError("misplaced '^' in polynomial text")
            else:
                if tok not in index:
                    raise ValueError(f"unknown variable {tok!r}")
                e = 1
                i += 1
                if i < len(tokens) and tokens[i] == "^":
                    i += 1
                    if i >= len(tokens) or not tokens[i].isdigit():
                        raise ValueError("exponent must be an integer")
                    e = int(tokens[i])
                    i += 1
                expo[index[tok]] += e
                expect_factor = False
                continue
            expect_factor = False
        m = tuple(expo)
        c = (terms.get(m, 0) + sign * coeff) % p
        if c:
            terms[m] = c
        else:
            terms.pop(m, None)
        sign = 1
        while i < len(tokens) and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
    return Polynomial(ring, terms)
