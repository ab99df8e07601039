"""Resultants, dense form helpers, and gcd routines over F_p.

Univariate dense polynomials are plain coefficient lists, lowest degree
first, trimmed of trailing zeros ([] is zero).  Binary forms of degree d
are lists of length d+1 whose entry k multiplies U^(d-k) * V^k; their zero
entries are structural, so binary form lists are never trimmed.

The elimination resultants needed by the singular-point detector are
computed by fraction-free elimination on the Sylvester matrix.  Entry
polynomials are packed into single integers (one coefficient per fixed-width
digit), which turns every polynomial product into one native integer
product; a permanent bound on the minors fixes the digit width.
"""

from __future__ import annotations

from math import factorial

from .linalg import as_matrix, det
from .poly import Polynomial, Ring

# -- dense univariate helpers -----------------------------------------------


def u_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def u_add(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % p
    return u_trim(out)


def u_sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, v in enumerate(b):
        out[i] = (out[i] - v) % p
    return u_trim(out)


def u_scale(a: list[int], c: int, p: int) -> list[int]:
    c %= p
    if c == 0:
        return []
    return [v * c % p for v in a]


def u_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return u_trim([v % p for v in out])


def u_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if c:
            c = c * inv % p
            q[i - db] = c
            for j, v in enumerate(b):
                r[i - db + j] = (r[i - db + j] - c * v) % p
    return u_trim(q), u_trim([v % p for v in r])


def u_exact_div(a: list[int], b: list[int], p: int) -> list[int]:
    q, r = u_divmod(a, b, p)
    if r:
        raise ValueError("inexact polynomial division")
    return q


def u_monic(a: list[int], p: int) -> list[int]:
    if not a:
        return []
    return u_scale(a, pow(a[-1], p - 2, p), p)


def u_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, u_divmod(a, b, p)[1]
    return u_monic(a, p)


def u_derivative(a: list[int], p: int) -> list[int]:
    return u_trim([i * v % p for i, v in enumerate(a)][1:])


def u_squarefree(a: list[int], p: int) -> bool:
    """True when a nonzero polynomial has no repeated root in the closure."""
    if not a:
        raise ValueError("squarefree test on the zero polynomial")
    if len(a) == 1:
        return True
    d = u_derivative(a, p)
    if not d:
        return False
    return len(u_gcd(a, d, p)) == 1


def u_eval(a: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def u_roots(a: list[int], p: int) -> list[int]:
    if not a:
        raise ValueError("roots of the zero polynomial")
    return [x for x in range(p) if u_eval(a, x, p) == 0]


# -- binary forms -------------------------------------------------------------
# A root (alpha, beta) of a form is a projective zero; the matching linear
# factor is beta*U - alpha*V.  Rational roots are scanned in the fixed order
# (0,1), (1,1), ..., (p-1,1), (1,0).


def bf_is_zero(c: list[int]) -> bool:
    return all(v == 0 for v in c)


def bf_eval(c: list[int], u: int, v: int, p: int) -> int:
    d = len(c) - 1
    return sum(
        ck * pow(u, d - k, p) * pow(v, k, p) for k, ck in enumerate(c) if ck
    ) % p


def bf_roots_iter(p: int):
    yield from ((a, 1) for a in range(p))
    yield (1, 0)


def bf_div_linear(c: list[int], root: tuple[int, int], p: int) -> list[int] | None:
    """Quotient of the form by the linear factor at `root`, or None."""
    alpha, beta = root
    d = len(c) - 1
    if d < 1:
        return None
    if beta % p:
        a = alpha * pow(beta, p - 2, p) % p
        q = []
        acc = 0
        for k in range(d):
            acc = (c[k] + a * acc) % p
            q.append(acc)
        if (c[d] + a * acc) % p:
            return None
        return q
    if c[0] % p:
        return None
    return list(c[1:])


def bf_linear_factors(
    c: list[int], p: int
) -> tuple[list[int], dict[tuple[int, int], int]]:
    """Strip every rational linear factor; returns (cofactor, root -> mult)."""
    if bf_is_zero(c):
        raise ValueError("factoring the zero form")
    roots: dict[tuple[int, int], int] = {}
    for root in bf_roots_iter(p):
        m = 0
        while True:
            q = bf_div_linear(c, root, p)
            if q is None:
                break
            c = q
            m += 1
        if m:
            roots[root] = m
    return c, roots


def bf_root_multiplicity(c: list[int], root: tuple[int, int], p: int) -> int:
    m = 0
    while True:
        q = bf_div_linear(c, root, p)
        if q is None:
            return m
        c = q
        m += 1


def bf_squarefree(c: list[int], p: int) -> bool:
    """Geometric squarefreeness of a nonzero binary form."""
    if bf_is_zero(c):
        raise ValueError("squarefree test on the zero form")
    d = len(c) - 1
    if d == 0:
        return True
    if c[0] == 0 and c[1] == 0:
        return False
    u = u_trim([c[d - a] for a in range(d + 1)])
    return u_squarefree(u, p)


def bf_resultant(a: list[int], b: list[int], p: int) -> int:
    """Resultant scalar of two binary forms at their structural degrees."""
    if bf_is_zero(a) or bf_is_zero(b):
        return 0
    da, db = len(a) - 1, len(b) - 1
    if da == 0:
        return pow(a[0], db, p)
    if db == 0:
        return pow(b[0], da, p)
    n = da + db
    rows = []
    for j in range(db):
        row = [0] * n
        for i, v in enumerate(a):
            row[j + i] = v % p
        rows.append(row)
    for j in range(da):
        row = [0] * n
        for i, v in enumerate(b):
            row[j + i] = v % p
        rows.append(row)
    return det(as_matrix(rows, n), p)


def poly_to_bf(f: Polynomial, i: int, j: int, degree: int) -> list[int]:
    """Coefficient list of a form supported on variables i and j."""
    c = [0] * (degree + 1)
    for m, v in f.terms.items():
        if any(e and k not in (i, j) for k, e in enumerate(m)):
            raise ValueError("form involves a variable outside the chosen pair")
        if m[i] + m[j] != degree:
            raise ValueError("form is not homogeneous of the stated degree")
        c[m[j]] = v
    return c


def bf_to_poly(ring: Ring, i: int, j: int, c: list[int]) -> Polynomial:
    d = len(c) - 1
    terms = {}
    for k, v in enumerate(c):
        if v % ring.p:
            e = [0] * ring.nvars
            e[i] = d - k
            e[j] = k
            terms[tuple(e)] = v % ring.p
    return Polynomial(ring, terms)


# -- multivariate division and generic resultant ------------------------------


def exact_div(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g, raising ValueError when g does not divide f."""
    ring = f.ring
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    order = ring.grevlex
    gm, gc = order.leading_term(g)
    ginv = pow(gc, ring.p - 2, ring.p)
    rest = g - ring.monomial(gm, gc)
    q = ring.zero()
    r = f
    while r:
        rm, rc = order.leading_term(r)
        quot = tuple(a - b for a, b in zip(rm, gm))
        if any(e < 0 for e in quot):
            raise ValueError("inexact polynomial division")
        t = ring.monomial(quot, rc * ginv % ring.p)
        q = q + t
        r = (r - ring.monomial(rm, rc)) - t * rest
    return q


def _var_coefficients(f: Polynomial, var: int) -> list[Polynomial]:
    """Coefficients of f as a polynomial in variable var, low degree first."""
    d = max((m[var] for m in f.terms), default=0)
    buckets: list[dict] = [{} for _ in range(d + 1)]
    for m, c in f.terms.items():
        nm = m[:var] + (0,) + m[var + 1 :]
        buckets[m[var]][nm] = c
    return [Polynomial(f.ring, b) for b in buckets]


def resultant(f: Polynomial, g: Polynomial, var: int) -> Polynomial:
    """Sylvester resultant with respect to one variable, sparse entries.

    Intended for small inputs and cross-checks; the detector uses the packed
    integer route below.
    """
    ring = f.ring
    if not f or not g:
        return ring.zero()
    cf = _var_coefficients(f, var)
    cg = _var_coefficients(g, var)
    df, dg = len(cf) - 1, len(cg) - 1
    if df == 0 and dg == 0:
        return ring.one()
    if df == 0:
        return cf[0] ** dg
    if dg == 0:
        return cg[0] ** df
    n = df + dg
    zero = ring.zero()
    mat = [[zero] * n for _ in range(n)]
    for j in range(dg):
        for i in range(df + 1):
            mat[j][j + i] = cf[df - i]
    for j in range(df):
        for i in range(dg + 1):
            mat[dg + j][j + i] = cg[dg - i]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not mat[k][k]:
            for r in range(k + 1, n):
                if mat[r][k]:
                    mat[k], mat[r] = mat[r], mat[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = exact_div(
                    mat[k][k] * mat[i][j] - mat[i][k] * mat[k][j], prev
                )
            mat[i][k] = zero
        prev = mat[k][k]
    return mat[n - 1][n - 1].scale(sign)


# -- packed elimination for ternary forms -------------------------------------


def _packed_entries(f: Polynomial, elim: int, k1: int, bits: int) -> list[int]:
    """Sylvester row content for f as packed coefficient forms.

    Entry s is the coefficient of X_elim^(d-s), a binary form in the kept
    variables packed with digit index = exponent of X_k1.
    """
    d = f.degree()
    packed = [0] * (d + 1)
    for m, c in f.terms.items():
        packed[d - m[elim]] += c << (bits * m[k1])
    return packed


def resultant_coeffs(f: Polynomial, g: Polynomial, elim: int) -> list[int]:
    """Binary-form coefficients of Res along one variable of two ternary forms.

    Both inputs must be nonzero homogeneous forms in a 3-variable ring.  The
    result has structural degree deg(f)*deg(g) in the two kept variables
    (lower index first), and is the all-zero list when the resultant
    vanishes identically.
    """
    ring = f.ring
    if ring.nvars != 3 or ring.weights != (1, 1, 1):
        raise ValueError("packed resultant expects a plain 3-variable ring")
    if not f or not g:
        raise ValueError("packed resultant needs nonzero forms")
    if not (f.is_homogeneous() and g.is_homogeneous()):
        raise ValueError("packed resultant needs homogeneous forms")
    p = ring.p
    k1, k2 = (i for i in range(3) if i != elim)
    d0, d1 = f.degree(), g.degree()
    if d0 == 0 or d1 == 0:
        base = f.terms[ring._zero_mono] if d0 == 0 else g.terms[ring._zero_mono]
        return [pow(base, d1 if d0 == 0 else d0, p)]
    n = d0 + d1
    # digit width from a permanent bound on every minor of the matrix
    mass_f = sum(f.terms.values())
    mass_g = sum(g.terms.values())
    bits = 2 + factorial(n).bit_length()
    bits += d1 * mass_f.bit_length() + d0 * mass_g.bit_length()
    ef = _packed_entries(f, elim, k1, bits)
    eg = _packed_entries(g, elim, k1, bits)
    mat = [[0] * n for _ in range(n)]
    for j in range(d1):
        for s, v in enumerate(ef):
            mat[j][j + s] = v
    for j in range(d0):
        for s, v in enumerate(eg):
            mat[d1 + j][j + s] = v
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            for r in range(k + 1, n):
                if mat[r][k]:
                    mat[k], mat[r] = mat[r], mat[k]
                    sign = -sign
                    break
            else:
                return [0] * (d0 * d1 + 1)
        pivot = mat[k][k]
        for i in range(k + 1, n):
            mik = mat[i][k]
            row = mat[i]
            top = mat[k]
            for j in range(k + 1, n):
                q, rem = divmod(pivot * row[j] - mik * top[j], prev)
                if rem:
                    raise ArithmeticError("fraction-free elimination lost exactness")
                row[j] = q
            row[k] = 0
        prev = pivot
    value = sign * mat[n - 1][n - 1]
    degree = d0 * d1
    low_first = _unpack_digits(value, bits, degree + 1, p)
    return [low_first[degree - k] for k in range(degree + 1)]


def _unpack_digits(x: int, bits: int, length: int, p: int) -> list[int]:
    base = 1 << bits
    half = base >> 1
    out = []
    for _ in range(length):
        d = x & (base - 1)
        if d >= half:
            d -= base
        x = (x - d) >> bits
        out.append(d % p)
    if x:
        raise ArithmeticError("packed resultant overflowed its digit budget")
    return out


# -- bivariate gcd -------------------------------------------------------------


def _rows_from_poly(f: Polynomial) -> list[list[int]]:
    d = max((m[1] for m in f.terms), default=0)
    rows: list[list[int]] = [[] for _ in range(d + 1)]
    for (a, b), c in f.terms.items():
        row = rows[b]
        if len(row) <= a:
            row.extend([0] * (a + 1 - len(row)))
        row[a] = c
    return [u_trim(r) for r in rows]


def _rows_trim(rows: list[list[int]]) -> list[list[int]]:
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _rows_content(rows: list[list[int]], p: int) -> list[int]:
    g: list[int] = []
    for r in rows:
        if r:
            g = u_gcd(g, r, p)
            if len(g) == 1:
                break
    return g


def _rows_primitive(rows: list[list[int]], p: int) -> list[list[int]]:
    c = _rows_content(rows, p)
    if len(c) == 1:
        return rows
    return [u_exact_div(r, c, p) if r else [] for r in rows]


def bivariate_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Gcd in F_p[x,y], normalized to leading coefficient 1."""
    ring = f.ring
    if ring.nvars != 2:
        raise ValueError("bivariate gcd expects a 2-variable ring")
    p = ring.p
    if not f or not g:
        h = f + g
        if not h:
            return ring.zero()
        _, lc = ring.grevlex.leading_term(h)
        return h.scale(pow(lc, p - 2, p))
    fa = _rows_trim(_rows_from_poly(f))
    fb = _rows_trim(_rows_from_poly(g))
    ca, cb = _rows_content(fa, p), _rows_content(fb, p)
    cont = u_gcd(ca, cb, p)
    a = _rows_primitive(fa, p)
    b = _rows_primitive(fb, p)
    if len(a) < len(b):
        a, b = b, a
    while True:
        if len(b) == 1:
            pp = [[1]]
            break
        r = _rows_prem(a, b, p)
        if not r:
            pp = _rows_primitive(b, p)
            break
        a, b = b, _rows_primitive(r, p)
    rows = [u_mul(r, cont, p) if r else [] for r in pp]
    terms = {}
    for yk, row in enumerate(rows):
        for xk, v in enumerate(row):
            if v:
                terms[(xk, yk)] = v
    out = Polynomial(ring, terms)
    _, lc = ring.grevlex.leading_term(out)
    return out.scale(pow(lc, p - 2, p))


def _rows_prem(a: list[list[int]], b: list[list[int]], p: int) -> list[list[int]]:
    """Pseudo-remainder of a by b along the second variable."""
    a = [list(r) for r in a]
    lcb = b[-1]
    while len(a) >= len(b):
        lca = a[-1]
        shift = len(a) - len(b)
        nxt = []
        for i in range(len(a) - 1):
            t = u_mul(lcb, a[i], p)
            if i >= shift:
                t = u_sub(t, u_mul(lca, b[i - shift], p), p)
            nxt.append(t)
        a = _rows_trim(nxt)
        if not a:
            break
    return a
