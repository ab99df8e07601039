"""Singular points of plane curves over F_p and connectedness bookkeeping.

Rational singular points come from an exhaustive projective scan (exact for
the small primes this tool targets).  The resultant cascade answers the
complementary question, whether singularities exist that are NOT defined
over F_p, with the four check codes:

  0 all singular points are rational
  1 inconclusive (the degree-divides-characteristic blind spot)
  2 definitely some singular point is not rational
  4 the procedure failed (no usable pivot or a degenerate resultant)

Classification distinguishes ordinary m-fold points R(m) (tangent cone
squarefree), double points of index m D(m) (tangent cone a rational double
line L with L^2 dividing everything below order m), and an inadmissible
bucket processed downstream as if regular of its local order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .field import projective_lines, projective_points
from .poly import Polynomial, Ring
from .polyops import (
    bf_is_zero,
    bf_linear_factors,
    bf_resultant,
    bf_root_multiplicity,
    bf_squarefree,
    bivariate_gcd,
    exact_div,
    poly_to_bf,
    resultant_coeffs,
    u_add,
    u_mul,
)

CHECK_RATIONAL = 0
CHECK_INCONCLUSIVE = 1
CHECK_NONRATIONAL = 2
CHECK_FAILED = 4

IMPOSSIBLE = "impossible"
FORCED_IRREDUCIBLE = "forced-irreducible"


@dataclass(frozen=True)
class SingularPoint:
    """A classified rational singular point.

    kind "R" and "D" carry the index m; kind "X" is the inadmissible
    bucket and m is then the local order, handled as if the point were
    regular of that order (the record grows flag b downstream).
    """

    location: tuple[int, int, int]
    kind: str
    m: int
    tangent: tuple[int, int, int] | None = None

    @property
    def admissible(self) -> bool:
        return self.kind in ("R", "D")

    @property
    def delta(self) -> int:
        if self.kind == "D":
            return self.m // 2
        return comb(self.m, 2)

    @property
    def subord(self) -> int:
        if self.kind == "D":
            return self.m // 2 if self.m % 2 == 0 else 0
        return self.m * self.m // 4

    def label(self) -> str:
        return f"{self.kind}{self.m}"


@dataclass
class SingularityCheck:
    check1: int
    check2: int
    check: int
    lines: list[tuple[int, int, int]] = field(default_factory=list)
    points: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return self.check == CHECK_FAILED


@dataclass
class CurveGeometry:
    degree: int
    delta_total: int
    genus: int
    reduced: bool
    irreducible: bool | None
    witness: Polynomial | None = None
    verdict: str = "unknown"


@dataclass
class CurveAnalysis:
    reduced: bool
    points: list[tuple[int, int, int]]
    singularities: list[SingularPoint]
    check: SingularityCheck
    geometry: CurveGeometry

    @property
    def flag_b(self) -> bool:
        return any(not s.admissible for s in self.singularities)


# -- points and frames ---------------------------------------------------------


def normalize_point(v, p: int) -> tuple[int, int, int]:
    v = tuple(int(x) % p for x in v)
    lead = next((x for x in v if x), None)
    if lead is None:
        raise ValueError("zero vector is not a projective point")
    inv = pow(lead, p - 2, p)
    return tuple(x * inv % p for x in v)


def _frame_matrix(P, p: int, position: int) -> list[list[int]]:
    """Invertible matrix whose `position`-th column is P, the others unit."""
    lead = next(i for i, x in enumerate(P) if x % p)
    cols = []
    for i in range(3):
        if i != lead:
            e = [0, 0, 0]
            e[i] = 1
            cols.append(e)
    cols.insert(position, [x % p for x in P])
    return [[cols[j][i] for j in range(3)] for i in range(3)]


def _mat_vec(mat, v, p: int) -> tuple[int, int, int]:
    return tuple(sum(mat[i][j] * v[j] for j in range(3)) % p for i in range(3))


def _cross(u, v, p: int) -> tuple[int, int, int]:
    return (
        (u[1] * v[2] - u[2] * v[1]) % p,
        (u[2] * v[0] - u[0] * v[2]) % p,
        (u[0] * v[1] - u[1] * v[0]) % p,
    )


def _values_at(F: Polynomial, pts: np.ndarray) -> np.ndarray:
    """F evaluated at each row of pts, as a vector mod p."""
    p = F.ring.p
    vals = np.zeros(pts.shape[0], dtype=np.int64)
    for m, c in F.terms.items():
        term = np.full(pts.shape[0], c % p, dtype=np.int64)
        for i, e in enumerate(m):
            col = pts[:, i]
            for _ in range(e):
                term = term * col % p
        vals = (vals + term) % p
    return vals


def rational_singular_points(F: Polynomial) -> list[tuple[int, int, int]]:
    """All points of P^2(F_p) where F and its three partials vanish."""
    if not F:
        raise ValueError("zero polynomial has no singular locus")
    p = F.ring.p
    keep = np.array(projective_points(p), dtype=np.int64)
    keep = keep[_values_at(F, keep) == 0]
    for i in range(3):
        if not len(keep):
            break
        keep = keep[_values_at(F.diff(i), keep) == 0]
    return [tuple(int(x) for x in pt) for pt in keep]


# -- local classification --------------------------------------------------------


def classify(F: Polynomial, P) -> SingularPoint:
    """Type of the singular point P on V(F)."""
    ring = F.ring
    p = ring.p
    P = normalize_point(P, p)
    mat = _frame_matrix(P, p, position=2)
    local = F.apply_matrix(mat).dehomogenize(2)
    comps = local.homogeneous_components()
    order = next((i for i, c in enumerate(comps) if c), None)
    if order is None or order < 2:
        raise ValueError("point is not a singular point of the curve")
    cone = poly_to_bf(comps[order], 0, 1, order)
    if bf_squarefree(cone, p):
        return SingularPoint(P, "R", order)
    if order != 2:
        return SingularPoint(P, "X", order)
    root = next(
        r for r in _p1_points(p) if bf_root_multiplicity(cone, r, p) == 2
    )
    for m in range(3, F.degree() + 1):
        part = comps[m] if m < len(comps) else ring.zero()
        if not part:
            continue
        mult = bf_root_multiplicity(poly_to_bf(part, 0, 1, m), root, p)
        if mult >= 2:
            continue
        if mult == 1:
            return SingularPoint(P, "X", order)
        tangent = _tangent_line(P, mat, root, p)
        return SingularPoint(P, "D", m, tangent)
    # every part is divisible by the tangent squared: a double-line curve
    return SingularPoint(P, "X", order)


def _p1_points(p: int):
    yield from ((a, 1) for a in range(p))
    yield (1, 0)


def _tangent_line(P, mat, root, p: int) -> tuple[int, int, int]:
    """Original-coordinate line through P in the chart direction `root`."""
    direction = _mat_vec(mat, (root[0], root[1], 0), p)
    return normalize_point(_cross(P, direction, p), p)


def geometric_genus(degree: int, sings: list[SingularPoint]) -> int:
    g = comb(degree - 1, 2) - sum(s.delta for s in sings)
    if g < 0:
        raise ValueError("singularity configuration exceeds the genus budget")
    return g


# -- reducedness -----------------------------------------------------------------


def _pivot_point(F: Polynomial, parts) -> tuple[int, int, int] | None:
    """Lexicographically first point with a nonzero partial, preferring
    points off the curve."""
    p = F.ring.p
    fallback = None
    for pt in projective_points(p):
        if not any(g.evaluate(pt) for g in parts):
            continue
        if F.evaluate(pt):
            return pt
        if fallback is None:
            fallback = pt
    return fallback


def is_reduced(F: Polynomial) -> bool:
    """No repeated factor.  Resultant route when a pivot exists, exact gcd
    of F with its partials otherwise."""
    if not F:
        return False
    p = F.ring.p
    parts = [F.diff(i) for i in range(3)]
    if not any(parts):
        return F.degree() == 0
    pivot = _pivot_point(F, parts)
    if pivot is None:
        common = F
        for g in parts:
            if g:
                common = _ternary_gcd(common, g)
        return common.degree() == 0
    mat = _frame_matrix(pivot, p, position=0)
    moved = F.apply_matrix(mat)
    dparts = [moved.diff(j) for j in range(3)]
    j = next(j for j in range(3) if dparts[j].evaluate((1, 0, 0)))
    return not bf_is_zero(resultant_coeffs(moved, dparts[j], 0))


def _strip_variable(F: Polynomial, var: int) -> tuple[Polynomial, int]:
    k = min(m[var] for m in F.terms)
    if k == 0:
        return F, 0
    terms = {
        m[:var] + (m[var] - k,) + m[var + 1 :]: c for m, c in F.terms.items()
    }
    return Polynomial(F.ring, terms), k


def _ternary_gcd(F: Polynomial, G: Polynomial) -> Polynomial:
    """gcd of homogeneous forms in three variables, monic normalization."""
    ring = F.ring
    f1, a = _strip_variable(F, 2)
    g1, b = _strip_variable(G, 2)
    h = bivariate_gcd(f1.dehomogenize(2), g1.dehomogenize(2))
    d = h.degree()
    lifted = {
        m + (d - sum(m),): c for m, c in h.terms.items()
    }
    out = Polynomial(ring, lifted)
    if min(a, b):
        out = out * ring.monomial((0, 0, min(a, b)))
    return out


# -- the nonrational-singularity cascade -------------------------------------------


def nonrational_singularity_check(F: Polynomial) -> SingularityCheck:
    """Two-stage resultant cascade deciding whether all singular points of
    V(F) are rational.  Also reports the candidate lines through the pivot
    and the rational singular points found along them."""
    ring = F.ring
    p = ring.p
    f = F.degree()
    parts = [F.diff(i) for i in range(3)]
    pivot = _pivot_point(F, parts)
    if pivot is None:
        return SingularityCheck(0, 0, CHECK_FAILED)
    mat = _frame_matrix(pivot, p, position=0)
    moved = F.apply_matrix(mat)
    dparts = [moved.diff(j) for j in range(3)]
    j0 = next(j for j in range(3) if dparts[j].evaluate((1, 0, 0)))
    lead = dparts[j0]
    others = [dparts[j] for j in range(3) if j != j0]
    if not others[0] or not others[1]:
        return SingularityCheck(0, 0, CHECK_FAILED)
    r01 = resultant_coeffs(lead, others[0], 0)
    r02 = resultant_coeffs(lead, others[1], 0)
    if bf_is_zero(r01) or bf_is_zero(r02):
        return SingularityCheck(0, 0, CHECK_FAILED)
    rem01, roots01 = bf_linear_factors(r01, p)
    rem02, roots02 = bf_linear_factors(r02, p)
    r0f = resultant_coeffs(lead, moved, 0)
    common = set(roots01) & set(roots02)
    if not bf_is_zero(r0f):
        common &= set(bf_linear_factors(r0f, p)[1])
    if bf_resultant(rem01, rem02, p):
        check1 = CHECK_RATIONAL
    elif f % p == 0:
        check1 = CHECK_INCONCLUSIVE
    else:
        check1 = CHECK_NONRATIONAL

    check2 = 0
    lines: list[tuple[int, int, int]] = []
    found: set[tuple[int, int, int]] = set()
    for root in sorted(common):
        direction = (0, root[0], root[1])
        restrictions = [
            _restrict_to_line(G, (1, 0, 0), direction)
            for G in (moved, lead, others[0], others[1])
        ]
        stripped = []
        root_sets = []
        for r in restrictions:
            if bf_is_zero(r):
                stripped.append(None)
                root_sets.append(None)
            else:
                s, roots = bf_linear_factors(r, p)
                stripped.append(s)
                root_sets.append(set(roots))
        live = [rs for rs in root_sets if rs is not None]
        for a, b in set.intersection(*live) if live else ():
            pt = tuple((a * e1 + b * e2) % p for e1, e2 in zip((1, 0, 0), direction))
            found.add(normalize_point(_mat_vec(mat, pt, p), p))
        clean = any(
            bf_resultant(stripped[i], stripped[j], p)
            for i in range(4)
            for j in range(i + 1, 4)
            if stripped[i] is not None and stripped[j] is not None
        )
        if not clean:
            check2 = 1
        spread = _mat_vec(mat, direction, p)
        lines.append(normalize_point(_cross(pivot, spread, p), p))
    # combined code: minimum over the nonzero stage codes, so a clean stage
    # never masks the other one
    nonzero = [c for c in (check1, check2) if c]
    check = min(nonzero) if nonzero else 0
    return SingularityCheck(check1, check2, check, lines, sorted(found))


def _restrict_to_line(G: Polynomial, base, direction) -> list[int]:
    """Binary form, in the line parameters, of G on span(base, direction)."""
    p = G.ring.p
    d = G.degree()
    acc: list[int] = []
    for m, c in G.terms.items():
        term = [c % p]
        for i, e in enumerate(m):
            lin = [base[i] % p, direction[i] % p]
            for _ in range(e):
                term = u_mul(term, lin, p)
            if not term:
                break
        acc = u_add(acc, term, p)
    return acc + [0] * (d + 1 - len(acc))


# -- factorability and connectedness ------------------------------------------------


def max_factor_degree(degree: int, genus: int):
    """Largest degree of a factor allowed by the genus bound: an integer,
    or the impossible/forced-irreducible sentinel."""
    slack = comb(degree - 1, 2) - genus
    if slack < 0:
        return IMPOSSIBLE
    best = 0
    for h in range(1, degree // 2 + 1):
        if h * (degree - h) <= slack:
            best = h
    return best if best else FORCED_IRREDUCIBLE


def factor_bound_symbol(degree: int, genus: int) -> str:
    bound = max_factor_degree(degree, genus)
    if bound == IMPOSSIBLE:
        return "*"
    if bound == FORCED_IRREDUCIBLE:
        return "-"
    return str(bound)


def cases_of_interest(degree: int, genus: int) -> bool:
    """Degree/genus ranges where any factor must be a rational line or conic."""
    return (
        (degree <= 7 and genus >= 4)
        or (degree == 8 and genus >= 7)
        or (degree == 9 and genus >= 11)
    )


def _line_span(line, p: int) -> tuple[tuple, tuple]:
    a, b, c = line
    if a % p:
        return (-b % p, a % p, 0), (-c % p, 0, a % p)
    if b % p:
        return (1, 0, 0), (0, -c % p, b % p)
    return (1, 0, 0), (0, 1, 0)


def _conic_forms(ring: Ring):
    """Every ternary quadratic form up to scalar, leading coefficient 1."""
    p = ring.p
    mons = ring.monomials_of_degree(2)
    count = len(mons)

    def build(idx, coeffs):
        terms = {mons[idx]: 1}
        for k, c in enumerate(coeffs):
            if c:
                terms[mons[idx + 1 + k]] = c
        return Polynomial(ring, terms)

    for idx in range(count):
        tail = count - idx - 1
        for packed in range(p**tail):
            coeffs = []
            x = packed
            for _ in range(tail):
                coeffs.append(x % p)
                x //= p
            yield build(idx, coeffs)


def _divides(candidate: Polynomial, F: Polynomial) -> bool:
    try:
        exact_div(F, candidate)
    except ValueError:
        return False
    return True


def irreducible_over_k(
    F: Polynomial, genus: int, admissible: bool = True
) -> tuple[bool | None, Polynomial | None]:
    """(verdict, witness): True/False when decidable, None for unknown.

    Inside the cases of interest with admissible rational singularities a
    missing line/conic divisor proves irreducibility; outside, trial
    division can only ever refute.
    """
    ring = F.ring
    p = ring.p
    degree = F.degree()
    bound = max_factor_degree(degree, genus)
    lines = projective_lines(p)
    if p >= degree:
        # a nonzero binary form of degree < p+1 cannot have p+1 roots, so a
        # line divides F exactly when all its rational points are on the curve
        pts = np.array(projective_points(p), dtype=np.int64)
        zeros = pts[_values_at(F, pts) == 0]
        if len(zeros):
            lm = np.array(lines, dtype=np.int64)
            hits = ((lm @ zeros.T) % p == 0).sum(axis=1)
            lines = [lines[int(k)] for k in np.nonzero(hits == p + 1)[0]]
        else:
            lines = []
    for line in lines:
        base, direction = _line_span(line, p)
        if bf_is_zero(_restrict_to_line(F, base, direction)):
            witness = Polynomial(
                ring, {tuple(1 if k == i else 0 for k in range(3)): line[i] % p
                       for i in range(3) if line[i] % p}
            )
            return False, witness
    want_conics = bound not in (IMPOSSIBLE, FORCED_IRREDUCIBLE) and bound >= 2
    if want_conics and degree >= 4:
        for conic in _conic_forms(ring):
            if _divides(conic, F):
                return False, conic
    decisive = cases_of_interest(degree, genus) and admissible
    return (True, None) if decisive else (None, None)


def connectedness_verdict(
    degree: int,
    genus: int,
    check: int,
    admissible: bool,
    irreducible: bool | None,
) -> str:
    if irreducible is False:
        return "reducible"
    if check == CHECK_FAILED or not admissible or irreducible is not True:
        return "unknown"
    return "connected" if cases_of_interest(degree, genus) else "unknown"


def analyze(F: Polynomial) -> CurveAnalysis:
    """Full singularity report: scan, classify, cascade, genus, verdict."""
    degree = F.degree()
    reduced = is_reduced(F)
    if not reduced:
        geometry = CurveGeometry(degree, 0, comb(degree - 1, 2), False, None)
        return CurveAnalysis(False, [], [], SingularityCheck(0, 0, CHECK_FAILED), geometry)
    points = rational_singular_points(F)
    sings = [classify(F, P) for P in points]
    check = nonrational_singularity_check(F)
    delta = sum(s.delta for s in sings)
    genus = geometric_genus(degree, sings)
    admissible = all(s.admissible for s in sings)
    irreducible, witness = irreducible_over_k(F, genus, admissible)
    verdict = connectedness_verdict(degree, genus, check.check, admissible, irreducible)
    geometry = CurveGeometry(degree, delta, genus, True, irreducible, witness, verdict)
    return CurveAnalysis(reduced, points, sings, check, geometry)
