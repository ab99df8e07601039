"""Adjoint systems of singular plane curves and their canonical ideals.

An adjoint of a reduced degree-f curve is a form of degree f-3 constrained
at every singular point: at an R(m) point it vanishes to order m-1, at a
D(m) point with tangent L it lies in (L) + I_P^n where n = m // 2, and an
inadmissible point of local order r imposes the R(r) conditions.  The
conditions are linear in the coefficients, so the system is a kernel and a
basis F_0..F_{g-1} of it realizes the canonical map of the normalization.

The canonical ideal is the kernel of X_i -> F_i into k[x,y,z]/(F).  The
default route computes it degree by degree with linear algebra, which is
enough because the ideal is generated by quadrics and cubics; the block
elimination route is kept as an independent cross check.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from . import linalg
from .groebner import GroebnerBasis, eliminate
from .poly import Polynomial, Ring
from .singular import SingularPoint, _frame_matrix, _line_span, normalize_point


@dataclass(frozen=True)
class AdjointCondition:
    """One linear functional on the coefficient space of adjoint candidates.

    The frame columns span the local chart in which the functional reads
    off the coefficient of ``local_monomial``: column 2 is the point, and
    for tangency conditions column 1 spans the tangent line with it.
    """

    point: tuple[int, int, int]
    label: str
    local_monomial: tuple[int, int]
    frame: tuple[tuple[int, int, int], ...]
    row: tuple[int, ...]


@dataclass
class AdjointSystem:
    degree: int
    conditions: list[AdjointCondition]
    basis: list[Polynomial]
    expected_dimension: int

    @property
    def flagged(self) -> bool:
        """Dependent conditions: the system is bigger than the genus count."""
        return len(self.basis) != self.expected_dimension


@dataclass
class CanonicalIdeal:
    ambient: Ring
    generators: list[Polynomial]
    genus: int
    flagged: bool = False


# -- the linear conditions -------------------------------------------------------


def _tangent_frame(P, line, p: int) -> list[list[int]]:
    """Columns (off-line unit, second point of line, P); the line pulls back
    to the second coordinate axis of the chart at P."""
    u, v = _line_span(line, p)
    P = normalize_point(P, p)
    on_line = u if normalize_point(u, p) != P else v
    k = next(i for i in range(3) if line[i] % p)
    off = [0, 0, 0]
    off[k] = 1
    cols = [off, list(on_line), list(P)]
    mat = [[cols[j][i] for j in range(3)] for i in range(3)]
    if not linalg.det(linalg.as_matrix(mat), p):
        raise ValueError("tangent line does not pass through the point")
    return mat


def _local_monomials(order: int) -> list[tuple[int, int]]:
    return [(a, t - a) for t in range(order - 1) for a in range(t + 1)]


def adjoint_conditions(
    ring: Ring, sings: list[SingularPoint], f: int
) -> list[AdjointCondition]:
    """Condition rows over the monomial basis of degree f - 3."""
    p = ring.p
    mons = ring.monomials_of_degree(f - 3)
    out: list[AdjointCondition] = []
    for s in sings:
        if s.kind in ("R", "X"):
            mat = _frame_matrix(s.location, p, position=2)
            locs = _local_monomials(s.m)
        elif s.kind == "D":
            if s.tangent is None:
                raise ValueError("double-type point carries no tangent line")
            mat = _tangent_frame(s.location, s.tangent, p)
            locs = [(0, j) for j in range(s.m // 2)]
        else:
            raise ValueError(f"cannot impose conditions for kind {s.kind!r}")
        images = [
            ring.monomial(mu).apply_matrix(mat).dehomogenize(2) for mu in mons
        ]
        frame = tuple(tuple(mat[i][j] for i in range(3)) for j in range(3))
        for lm in locs:
            row = tuple(im.coefficient(lm) for im in images)
            out.append(AdjointCondition(s.location, s.label(), lm, frame, row))
    return out


def adjoint_basis(F: Polynomial, sings: list[SingularPoint]) -> AdjointSystem:
    """Kernel basis of the condition matrix, in a fixed reduced form."""
    ring = F.ring
    f = F.degree()
    if f < 4:
        raise ValueError("adjoint systems need curve degree at least 4")
    delta = sum(s.delta for s in sings)
    expected = comb(f - 1, 2) - delta
    if expected <= 0:
        raise ValueError("adjoint system is empty for this configuration")
    conds = adjoint_conditions(ring, sings, f)
    mons = ring.monomials_of_degree(f - 3)
    mat = linalg.as_matrix([c.row for c in conds], width=len(mons))
    kernel = linalg.kernel_basis(mat, ring.p)
    basis = [
        Polynomial(ring, {mons[j]: int(v[j]) for j in range(len(mons)) if v[j]})
        for v in kernel
    ]
    return AdjointSystem(f - 3, conds, basis, expected)


# -- the canonical ideal ---------------------------------------------------------


def _coeff_vector(h: Polynomial, index: dict, width: int) -> list[int]:
    v = [0] * width
    for m, c in h.terms.items():
        v[index[m]] = c
    return v


def _kernel_generators(
    F: Polynomial, basis: list[Polynomial], ambient: Ring
) -> tuple[list[Polynomial], bool]:
    ring = F.ring
    p = ring.p
    g = len(basis)
    m = basis[0].degree()
    f = F.degree()
    cache: dict[tuple[int, ...], Polynomial] = {(): ring.one()}

    def product(idx: tuple[int, ...]) -> Polynomial:
        if idx not in cache:
            cache[idx] = product(idx[:-1]) * basis[idx[-1]]
        return cache[idx]

    def image_columns(d: int):
        big = ring.monomials_of_degree(d * m)
        index = {mm: i for i, mm in enumerate(big)}
        width = len(big)
        if d * m >= f:
            rows = [
                _coeff_vector(F * ring.monomial(mu), index, width)
                for mu in ring.monomials_of_degree(d * m - f)
            ]
            red, _ = linalg.rref(linalg.as_matrix(rows, width), p)
        else:
            red = np.zeros((0, width), dtype=np.int64)
        cols = []
        for xm in ambient.monomials_of_degree(d):
            idx = tuple(i for i, e in enumerate(xm) for _ in range(e))
            vec = np.array(_coeff_vector(product(idx), index, width))
            cols.append(linalg.reduce_against(red, vec, p))
        return np.stack(cols, axis=1)

    def to_poly(vec, d: int) -> Polynomial:
        xmons = ambient.monomials_of_degree(d)
        return Polynomial(
            ambient, {xmons[j]: int(vec[j]) for j in range(len(xmons)) if vec[j]}
        )

    # a relation already in degree 1 means the basis was not independent
    lin = linalg.kernel_basis(
        np.stack(
            [
                np.array(
                    _coeff_vector(
                        b, {mm: i for i, mm in enumerate(ring.monomials_of_degree(m))},
                        len(ring.monomials_of_degree(m)),
                    )
                )
                for b in basis
            ],
            axis=1,
        ),
        p,
    )
    gens = [to_poly(v, 1) for v in lin]
    flagged = bool(gens)

    quadrics = [to_poly(v, 2) for v in linalg.kernel_basis(image_columns(2), p)]
    gens.extend(quadrics)

    cubic_kernel = linalg.kernel_basis(image_columns(3), p)
    xmons3 = ambient.monomials_of_degree(3)
    index3 = {mm: i for i, mm in enumerate(xmons3)}
    spanned = [
        _coeff_vector(ambient.variable(k) * q, index3, len(xmons3))
        for q in quadrics
        for k in range(g)
    ]
    base = linalg.as_matrix(spanned, width=len(xmons3))
    picked = linalg.row_space_extension(base, cubic_kernel, p)
    gens.extend(to_poly(cubic_kernel[i], 3) for i in picked)
    return gens, flagged


def _eliminate_generators(
    F: Polynomial, basis: list[Polynomial], ambient: Ring
) -> tuple[list[Polynomial], bool]:
    ring = F.ring
    p = ring.p
    g = len(basis)
    m = basis[0].degree()
    big = Ring(
        p,
        list(ring.names) + list(ambient.names),
        weights=[1] * 3 + [m] * g,
    )

    def lift(h: Polynomial) -> Polynomial:
        return Polynomial(big, {mm + (0,) * g: c for mm, c in h.terms.items()})

    rels = [big.variable(3 + i) - lift(basis[i]) for i in range(g)]
    back = eliminate(big, [lift(F)] + rels, front=3)
    polys = [h.map_to(ambient, [3 + i for i in range(g)]) for h in back]
    gens = _minimal_generators(ambient, polys)
    return gens, any(h.degree() == 1 for h in gens)


def _minimal_generators(ring: Ring, polys: list[Polynomial]) -> list[Polynomial]:
    """Degree-by-degree reduction of a generating set to an irredundant one."""
    p = ring.p
    chosen: list[Polynomial] = []
    for d in sorted({h.degree() for h in polys if h}):
        mons = ring.monomials_of_degree(d)
        index = {mm: i for i, mm in enumerate(mons)}
        spanned = [
            _coeff_vector(c * ring.monomial(mu), index, len(mons))
            for c in chosen
            for mu in ring.monomials_of_degree(d - c.degree())
        ]
        fresh = [h for h in polys if h and h.degree() == d]
        rows = [_coeff_vector(h, index, len(mons)) for h in fresh]
        picked = linalg.row_space_extension(
            linalg.as_matrix(spanned, width=len(mons)),
            linalg.as_matrix(rows, width=len(mons)),
            p,
        )
        chosen.extend(fresh[i] for i in picked)
    return chosen


def canonical_ideal(
    F: Polynomial, adj: AdjointSystem, method: str = "kernel"
) -> CanonicalIdeal:
    """Kernel of X_i -> F_i into the coordinate ring of the curve."""
    g = len(adj.basis)
    if g < 3:
        raise ValueError("need at least 3 adjoint forms for a canonical ideal")
    ambient = Ring(F.ring.p, [f"X{i}" for i in range(g)])
    if method == "kernel":
        gens, flagged = _kernel_generators(F, adj.basis, ambient)
    elif method == "eliminate":
        gens, flagged = _eliminate_generators(F, adj.basis, ambient)
    else:
        raise ValueError(f"unknown construction method {method!r}")
    return CanonicalIdeal(ambient, gens, g, flagged or adj.flagged)


# -- checks ----------------------------------------------------------------------


def substitution_check(F: Polynomial, adj: AdjointSystem, ideal: CanonicalIdeal) -> bool:
    """Every generator maps to 0 in k[x,y,z]/(F) under X_i -> F_i."""
    gb = GroebnerBasis(F.ring, [F])
    return all(gb.contains(h.substitute(adj.basis)) for h in ideal.generators)


def validate_canonical(ideal: CanonicalIdeal) -> dict[str, bool]:
    from .resolution import quotient_dims

    g = ideal.genus
    dims = quotient_dims(ideal.ambient, ideal.generators, 3)
    no_linear = all(h.degree() != 1 for h in ideal.generators if h)
    quadrics = comb(g + 1, 2) - dims[2]
    report = {
        "no-linear": no_linear,
        "quadric-count": quadrics == (g - 2) * (g - 3) // 2,
        "hilbert-2": dims[2] == 3 * (g - 1),
        "hilbert-3": dims[3] == 5 * (g - 1),
    }
    report["passed"] = all(report.values())
    return report
