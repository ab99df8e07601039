"""Configuration strings, point placement, seeded generation, pipeline runs.

A run takes (p, f, config, placement, seed) to a single record.  Everything
random is drawn from a generator keyed by the explicit seed and the attempt
number, so a record can be regenerated bit for bit from its own fields
(the ms field excepted).  Stage failures are captured in the record rather
than raised, so batch runs always produce one line per trial.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import linalg
from .adjoint import (
    _tangent_frame,
    adjoint_basis,
    canonical_ideal,
    substitution_check,
    validate_canonical,
)
from .field import projective_lines, projective_points
from .fixtures import FIXTURES, TableFixture
from .groebner import GroebnerBasis
from .poly import Polynomial, Ring, format_polynomial
from .resolution import (
    betti_table,
    diagram_text,
    duality_check,
    first_strand,
    free_resolution,
    hilbert_check,
    hilbert_dims_check,
    sequence_a,
    strand_nonzero_count,
)
from .singular import (
    SingularPoint,
    _frame_matrix,
    classify,
    connectedness_verdict,
    geometric_genus,
    irreducible_over_k,
    is_reduced,
    nonrational_singularity_check,
    rational_singular_points,
)


class GenerationError(RuntimeError):
    pass


# -- configuration strings -------------------------------------------------------


@dataclass(frozen=True)
class SingularityConfig:
    """Requested singularity multiset, e.g. R2^3*R4*D4, in given order."""

    atoms: tuple[tuple[str, int], ...]
    text: str

    @property
    def delta(self) -> int:
        return sum(m // 2 if kind == "D" else comb(m, 2) for kind, m in self.atoms)

    def genus(self, f: int) -> int:
        return comb(f - 1, 2) - self.delta

    def __len__(self) -> int:
        return len(self.atoms)


def parse_config(s: str) -> SingularityConfig:
    text = s.strip()
    if text in ("", "{}"):
        return SingularityConfig((), "{}")
    atoms: list[tuple[str, int]] = []
    i = 0
    after_sep = False
    while i < len(text):
        ch = text[i]
        if ch == "*":
            if not atoms or after_sep or i + 1 >= len(text):
                raise ValueError(f"config syntax error at position {i}: stray separator")
            after_sep = True
            i += 1
            continue
        after_sep = False
        if ch not in "RD":
            raise ValueError(
                f"config syntax error at position {i}: expected R or D, got {ch!r}"
            )
        i += 1
        j = i
        while j < len(text) and text[j].isdigit():
            j += 1
        if j == i:
            raise ValueError(f"config syntax error at position {i}: missing index")
        m = int(text[i:j])
        i = j
        count = 1
        if i < len(text) and text[i] == "^":
            i += 1
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i:
                raise ValueError(f"config syntax error at position {i}: missing exponent")
            count = int(text[i:j])
            i = j
            if count < 1:
                raise ValueError(f"config syntax error: exponent {count} at position {j}")
        if ch == "R" and m < 2:
            raise ValueError(f"R{m} is not a singularity type")
        if ch == "D" and m < 3:
            raise ValueError(f"D{m} is not a singularity type (index starts at 3)")
        atoms.extend([(ch, m)] * count)
    return SingularityConfig(tuple(atoms), text)


# -- point placement -------------------------------------------------------------

FRAME4 = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))
FRAME6 = ((1, 0, 0), (1, 1, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1), (0, 0, 1))


def _dot(line, P, p: int) -> int:
    return sum(line[i] * P[i] for i in range(3)) % p


def _free_point(chosen, p: int):
    """First scan-order point off every line joining two chosen points,
    else simply the first unused point."""
    from .singular import _cross

    lines = [
        _cross(A, B, p) for k, A in enumerate(chosen) for B in chosen[k + 1 :]
    ]
    unused = [pt for pt in projective_points(p) if pt not in chosen]
    for pt in unused:
        if all(_dot(line, pt, p) for line in lines):
            return pt
    if unused:
        return unused[0]
    raise ValueError("no rational point left for the placement")


def place_points(count: int, p: int, variant: str = "default", rng=None) -> list:
    total = p * p + p + 1
    if count > total:
        raise ValueError(
            f"need {count} distinct points but the plane over F_{p} has only {total}"
        )
    if variant == "collinear":
        if count != 4:
            raise ValueError("the collinear variant places a fourth point on z=0")
        return [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)]
    if variant != "default":
        raise ValueError(f"unknown placement variant {variant!r}")
    if count <= 4:
        return list(FRAME4[:count])
    if count == 5:
        return list(FRAME4) + [_free_point(list(FRAME4), p)]
    if count == 6:
        return list(FRAME6)
    if rng is None:
        raise ValueError("7 or more points are drawn at random; a seeded rng is required")
    return rng.sample(list(projective_points(p)), count)


# -- constrained random curves ---------------------------------------------------


@dataclass
class GeneratedCurve:
    F: Polynomial
    points: list[tuple[int, int, int]]
    tangents: dict[tuple[int, int, int], tuple[int, int, int]]
    seed: int
    attempts: int
    achieved: list[SingularPoint]
    mismatch: bool


def _vanishing_rows(ring: Ring, f: int, mat, locs) -> list[list[int]]:
    mons = ring.monomials_of_degree(f)
    images = [ring.monomial(mu).apply_matrix(mat).dehomogenize(2) for mu in mons]
    return [[im.coefficient(lm) for im in images] for lm in locs]


def generate_curve(
    p: int,
    f: int,
    config: SingularityConfig | str,
    placement=None,
    seed: int | None = None,
    budget: int = 32,
) -> GeneratedCurve:
    """Random degree-f curve with the requested singularities at the placed
    points, seeded and verified; after the retry budget the best reduced
    candidate is returned with its achieved types and a mismatch mark."""
    if isinstance(config, str):
        config = parse_config(config)
    if seed is None:
        seed = time.time_ns() % 2**64
    ring = Ring(p, ["x", "y", "z"])
    mons = ring.monomials_of_degree(f)
    row_cache: dict = {}
    last: GeneratedCurve | None = None
    for attempt in range(budget):
        rng = random.Random(f"{seed}:{attempt}")
        pts = (
            list(placement)
            if placement is not None
            else place_points(len(config), p, rng=rng)
        )
        if len(set(pts)) != len(config):
            raise ValueError("placement repeats a point")
        rows: list[list[int]] = []
        tangents: dict = {}
        for (kind, m), P in zip(config.atoms, pts):
            if kind == "R":
                key = (P, None, m)
                if key not in row_cache:
                    mat = _frame_matrix(P, p, position=2)
                    locs = [(a, t - a) for t in range(m) for a in range(t + 1)]
                    row_cache[key] = _vanishing_rows(ring, f, mat, locs)
            else:
                through = [ln for ln in projective_lines(p) if not _dot(ln, P, p)]
                L = through[rng.randrange(len(through))]
                tangents[P] = L
                key = (P, L, m)
                if key not in row_cache:
                    mat = _tangent_frame(P, L, p)
                    locs = [(0, b) for b in range(m)] + [(1, b) for b in range(m - 1)]
                    row_cache[key] = _vanishing_rows(ring, f, mat, locs)
            rows.extend(row_cache[key])
        kernel = linalg.kernel_basis(linalg.as_matrix(rows, width=len(mons)), p)
        if kernel.shape[0] == 0:
            raise GenerationError("the constrained linear system is empty")
        combo = np.array([rng.randrange(p) for _ in range(kernel.shape[0])])
        vec = combo @ kernel % p
        F = Polynomial(ring, {mons[j]: int(vec[j]) for j in range(len(mons)) if vec[j]})
        if not F or not is_reduced(F):
            continue
        found = rational_singular_points(F)
        achieved = [classify(F, P) for P in found]
        by_point = {s.location: s for s in achieved}
        ok = len(found) == len(config) and all(
            P in by_point and by_point[P].kind == kind and by_point[P].m == m
            for (kind, m), P in zip(config.atoms, pts)
        )
        last = GeneratedCurve(F, pts, tangents, seed, attempt + 1, achieved, not ok)
        if ok:
            return last
    if last is None:
        raise GenerationError(f"no reduced curve of degree {f} in {budget} attempts")
    return last


# -- pipeline records ------------------------------------------------------------

RECORD_FIELDS = (
    "p", "f", "config", "points", "seed", "check", "flag_b", "genus",
    "a", "strand", "twoLP", "betti", "verdict", "stage", "ms",
)


@dataclass
class CurveReport:
    p: int
    f: int
    config: str
    points: list = field(default_factory=list)
    seed: int | None = None
    check: int | None = None
    flag_b: bool = False
    genus: int | None = None
    a: tuple[int, ...] | None = None
    strand: tuple[int, ...] | None = None
    twoLP: int | None = None
    betti: str | None = None
    verdict: str = "unknown"
    stage: str = "generate"
    ms: int = 0
    # audit fields, carried on the object but not in the record line
    achieved: list[str] = field(default_factory=list)
    mismatch: bool = False
    dependent: bool = False
    validation: dict | None = None
    duality: bool | None = None
    hilbert: bool | None = None
    diagram: str | None = None
    curve: str | None = None
    error: str | None = None

    @property
    def flagged(self) -> bool:
        """True unless this is a clean run usable as a table entry."""
        if self.stage != "done" or self.mismatch or self.flag_b or self.dependent:
            return True
        if self.check != 0:
            return True
        return bool(self.validation) and not self.validation.get("passed", False)

    def line(self, include_ms: bool = True) -> str:
        def seq(t):
            return "(" + ",".join(str(x) for x in t) + ")"

        values = {
            "p": self.p,
            "f": self.f,
            "config": self.config,
            "points": ",".join(f"({a}:{b}:{c})" for a, b, c in self.points) or "-",
            "seed": self.seed if self.seed is not None else "-",
            "check": self.check if self.check is not None else "-",
            "flag_b": "true" if self.flag_b else "false",
            "genus": self.genus if self.genus is not None else "-",
            "a": seq(self.a) if self.a is not None else "-",
            "strand": seq(self.strand) if self.strand is not None else "-",
            "twoLP": self.twoLP if self.twoLP is not None else "-",
            "betti": self.betti if self.betti is not None else "-",
            "verdict": self.verdict,
            "stage": self.stage,
            "ms": self.ms,
        }
        names = RECORD_FIELDS if include_ms else RECORD_FIELDS[:-1]
        return " ".join(f"{k}={values[k]}" for k in names)


def _encode_betti(res) -> str:
    cols = res.length + 1
    rows = res.max_row() + 1
    return ";".join(
        ",".join(str(res.betti(i, i + r)) for i in range(cols)) for r in range(rows)
    )


def run_pipeline(
    p: int,
    f: int,
    config: SingularityConfig | str,
    placement=None,
    seed: int | None = None,
    budget: int = 32,
    method: str = "auto",
) -> CurveReport:
    """One record: generate, analyze, canonical ideal, resolution, sequence."""
    t0 = time.perf_counter()
    cfg = parse_config(config) if isinstance(config, str) else config
    rep = CurveReport(p=p, f=f, config=cfg.text, seed=seed)

    def finish(stage: str, err: Exception | None = None) -> CurveReport:
        rep.stage = stage
        if err is not None:
            rep.error = str(err)
        rep.ms = int((time.perf_counter() - t0) * 1000)
        return rep

    try:
        gen = generate_curve(p, f, cfg, placement, seed, budget)
    except (GenerationError, ValueError) as e:
        return finish("generate", e)
    F = gen.F
    rep.points = gen.points
    rep.seed = gen.seed
    rep.curve = format_polynomial(F)
    rep.achieved = [f"{s.label()}@({s.location[0]}:{s.location[1]}:{s.location[2]})"
                    for s in gen.achieved]
    rep.mismatch = gen.mismatch

    if not is_reduced(F):
        return finish("reduced")

    sings = gen.achieved
    rep.flag_b = any(not s.admissible for s in sings)
    try:
        genus = geometric_genus(f, sings)
    except ValueError as e:
        return finish("classify", e)
    rep.genus = genus

    try:
        chk = nonrational_singularity_check(F)
    except (ValueError, ZeroDivisionError) as e:
        return finish("cascade", e)
    rep.check = chk.check

    admissible = all(s.admissible for s in sings)
    try:
        irreducible, _ = irreducible_over_k(F, genus, admissible)
        rep.verdict = connectedness_verdict(f, genus, chk.check, admissible, irreducible)
    except ValueError as e:
        return finish("irreducible", e)

    try:
        adj = adjoint_basis(F, sings)
        rep.dependent = adj.flagged
    except ValueError as e:
        return finish("adjoint", e)
    try:
        ideal = canonical_ideal(F, adj)
    except ValueError as e:
        return finish("canonical", e)
    try:
        val = validate_canonical(ideal)
        val["substitution"] = substitution_check(F, adj, ideal)
        val["passed"] = val["passed"] and val["substitution"]
        rep.validation = val
    except (ValueError, ArithmeticError) as e:
        return finish("validate", e)

    g = ideal.genus
    exact = method == "exact" or (method == "auto" and g <= 4)
    try:
        if exact:
            gb = GroebnerBasis(ideal.ambient, ideal.generators)
            res = free_resolution(gb)
            rep.hilbert = hilbert_check(gb, g)
        else:
            res = betti_table(ideal.ambient, ideal.generators)
            rep.hilbert = hilbert_dims_check(res.quotient_dims, g)
    except (ValueError, ArithmeticError) as e:
        return finish("resolution", e)

    try:
        rep.betti = _encode_betti(res)
        rep.diagram = diagram_text(res)
        rep.duality = duality_check(res, g)
        rep.a = sequence_a(res, g)
        rep.strand = first_strand(res, g)
        rep.twoLP = strand_nonzero_count(res, g)
    except (ValueError, ArithmeticError) as e:
        return finish("betti", e)
    return finish("done")


# -- table reproduction ----------------------------------------------------------


@dataclass
class FixtureOutcome:
    fixture: TableFixture
    runs: dict[int, list[CurveReport]]

    @property
    def clean(self) -> list[CurveReport]:
        return [r for rs in self.runs.values() for r in rs if not r.flagged]

    @property
    def observed(self) -> Counter:
        return Counter(r.a for r in self.clean)

    @property
    def membership_ok(self) -> bool:
        return all(r.a in self.fixture.allowed for r in self.clean)

    @property
    def generic_ok(self) -> bool:
        want = self.fixture.generic
        return want is None or any(r.a == want for r in self.clean)

    @property
    def passed(self) -> bool:
        return self.membership_ok and self.generic_ok


@dataclass
class TableSummary:
    genus: int
    outcomes: list[FixtureOutcome]

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    @property
    def reports(self) -> list[CurveReport]:
        return [r for o in self.outcomes for rs in o.runs.values() for r in rs]


def reproduce_table(
    genus: int,
    chars=None,
    trials: int | None = None,
    seed_base: int = 0,
    budget: int = 32,
    method: str = "auto",
) -> TableSummary:
    if genus not in FIXTURES:
        raise ValueError(f"no built-in fixtures for genus {genus}")
    outcomes = []
    for fx in FIXTURES[genus]:
        runs: dict[int, list[CurveReport]] = {}
        for p in tuple(chars) if chars else fx.chars:
            runs[p] = [
                run_pipeline(p, fx.degree, fx.config, seed=seed_base + t,
                             budget=budget, method=method)
                for t in range(trials if trials is not None else fx.trials)
            ]
        outcomes.append(FixtureOutcome(fx, runs))
    return TableSummary(genus, outcomes)
