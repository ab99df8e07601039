"""Minimal free resolutions, Betti tables, the quadratic strand, duality,
and the Hilbert-function checks used to validate canonical ideals."""

import random
from math import comb

import pytest

from cancurve.groebner import GroebnerBasis
from cancurve.poly import Ring
from cancurve.resolution import (
    BettiTable,
    betti_table,
    diagram_text,
    duality_check,
    first_strand,
    free_resolution,
    hilbert_check,
    hilbert_dims_check,
    quotient_dims,
    sequence_a,
    strand_nonzero_count,
    template_check,
)


def resolve(ring, texts):
    return free_resolution(GroebnerBasis(ring, [ring.parse(t) for t in texts]))


def test_koszul_two_variables():
    r = Ring(5, ["x", "y"])
    res = resolve(r, ["x", "y"])
    assert res.twists == [[0], [1, 1], [2]]
    assert res.is_minimal() and res.verify()


def test_koszul_three_variables():
    r = Ring(7, ["x", "y", "z"])
    res = resolve(r, ["x", "y", "z"])
    assert res.twists == [[0], [1, 1, 1], [2, 2, 2], [3]]
    assert [res.rank(i) for i in range(4)] == [1, 3, 3, 1]
    assert res.is_minimal() and res.verify()


def test_principal_ideal():
    r = Ring(5, ["x", "y", "z"])
    res = resolve(r, ["x^3 + y^2*z"])
    assert res.twists == [[0], [3]]
    assert res.length == 1


def test_regular_sequence_quadric_cubic():
    """The genus-4 canonical shape: R <- R(-2)+R(-3) <- R(-5) <- 0."""
    r = Ring(7, ["X0", "X1", "X2", "X3"])
    res = resolve(r, ["X0*X3 - X1*X2", "X0^3 + X1^3 + X2^3 + X3^3"])
    assert res.twists == [[0], [2, 3], [5]]
    assert template_check(res, 4)
    assert duality_check(res, 4)
    assert first_strand(res, 4) == (1,)
    assert strand_nonzero_count(res, 4) == 1
    assert sequence_a(res, 4) == ()


def test_diagram_text_matches_grid():
    r = Ring(7, ["X0", "X1", "X2", "X3"])
    res = resolve(r, ["X0*X3 - X1*X2", "X0^3 + X1^3 + X2^3 + X3^3"])
    lines = diagram_text(res).splitlines()
    cells = [ln.split() for ln in lines]
    assert cells[0] == ["1", ".", "."]
    assert cells[1] == [".", "1", "."]
    assert cells[2] == [".", "1", "."]
    assert cells[3] == [".", ".", "1"]


def test_koszul_diagram_rows():
    r = Ring(5, ["x", "y", "z"])
    res = resolve(r, ["x", "y", "z"])
    lines = diagram_text(res).splitlines()
    assert lines[0].split() == ["1", "3", "3", "1"]


def synthetic_table(genus, quad_row):
    """Self-dual canonical Betti table with the given quadratic row."""
    g = genus
    entries = {(0, 0): 1, (g - 2, g + 1): 1}
    for i, a in enumerate(quad_row, start=1):
        if a:
            entries[(i, i + 1)] = a
    # cubic row mirrors the quadratic one: b_{i,i+2} = a_{g-2-i}
    for i in range(1, g - 2):
        j = g - 2 - i
        a_j = quad_row[j - 1] if 0 <= j - 1 < len(quad_row) else 0
        if a_j:
            entries[(i, i + 2)] = a_j
    return BettiTable(Ring(5, [f"X{k}" for k in range(g)]), entries)


def test_strand_table_seven_row():
    row = (21, 64, 71, 24, 1, 0)
    bt = synthetic_table(9, row)
    assert first_strand(bt, 9) == row
    assert sequence_a(bt, 9) == (24, 1, 0)
    assert strand_nonzero_count(bt, 9) == 5


def test_strand_generic_genus_nine():
    row = (21, 64, 70, 0, 0, 0)
    bt = synthetic_table(9, row)
    assert sequence_a(bt, 9) == (0, 0, 0)
    assert strand_nonzero_count(bt, 9) == 3
    assert duality_check(bt, 9)


def test_duality_relation_binomials():
    # a_i - a_{g-i-1} = i*C(g-2, i+1) - (g-i-1)*C(g-2, i-2)
    g = 9
    assert 2 * comb(7, 3) - 6 * comb(7, 0) == 64
    assert comb(7, 2) == 21  # the relation pins a_1 for genus 9

    def c(n, k):
        return comb(n, k) if 0 <= k <= n else 0

    for row in [(21, 64, 71, 24, 1, 0), (21, 64, 70, 0, 0, 0)]:
        for i in range(1, g - 1):
            a_i = row[i - 1] if i - 1 < len(row) else 0
            j = g - 1 - i
            a_dual = row[j - 1] if 0 <= j - 1 < len(row) else 0
            want = i * c(g - 2, i + 1) - (g - i - 1) * c(g - 2, i - 2)
            assert a_i - a_dual == want


def test_duality_check_rejects_wrong_row():
    # a_2 pairs with a_6, so bumping it breaks the relation; a_4 pairs with
    # itself and is exactly the data the relation cannot pin down
    assert not duality_check(synthetic_table(9, (21, 65, 71, 24, 1, 0)), 9)
    assert duality_check(synthetic_table(9, (21, 64, 71, 24, 1, 0)), 9)


def test_betti_table_matches_exact_resolution():
    """The rank-only route and the full syzygy route agree on the table."""
    r = Ring(7, ["X0", "X1", "X2", "X3"])
    gens = ["X0*X3 - X1*X2", "X0^3 + X1^3 + X2^3 + X3^3"]
    res = resolve(r, gens)
    bt = betti_table(r, [r.parse(t) for t in gens])
    for i in range(res.length + 1):
        for j in range(res.length + 4):
            assert res.betti(i, j) == bt.betti(i, j)


def test_betti_table_koszul():
    r = Ring(5, ["x", "y", "z"])
    bt = betti_table(r, [r.parse("x"), r.parse("y"), r.parse("z")], max_row=1)
    assert bt.betti(0, 0) == 1
    assert bt.betti(1, 1) == 3
    assert bt.betti(2, 2) == 3
    assert bt.betti(3, 3) == 1


def test_betti_invariant_under_generator_shuffle():
    rng = random.Random(6)
    r = Ring(7, ["X0", "X1", "X2", "X3"])
    gens = [r.parse("X0*X3 - X1*X2"), r.parse("X0^3 + X1^3 + 2*X2^3 + X3^3")]
    base = resolve(r, [str(g) for g in gens]).twists
    for _ in range(3):
        shuffled = gens[:]
        rng.shuffle(shuffled)
        lifted = free_resolution(GroebnerBasis(r, shuffled))
        assert lifted.twists == base


def test_quotient_dims_and_hilbert():
    r = Ring(7, ["X0", "X1", "X2", "X3"])
    gens = [r.parse("X0*X3 - X1*X2"), r.parse("X0^3 + X1^3 + X2^3 + X3^3")]
    dims = quotient_dims(r, gens, 3)
    # dim R_2 = C(5,2) = 10, one quadric: (R/I)_2 = 9 = (2*2-1)(g-1)
    assert dims[2] == 9
    assert dims[3] == 15
    assert hilbert_dims_check(dims, 4)
    assert hilbert_check(GroebnerBasis(r, gens), 4)


def test_hilbert_counts_from_spec_formulas():
    # g=9: dim R_2 = C(10,2) = 45, target 24, so dim I_2 = 21
    assert comb(10, 2) - (2 * 2 - 1) * (9 - 1) == 21
    # g=4: dim I_2 = C(5,2) - 9 = 1
    assert comb(5, 2) - 9 == 1
    # g=7, d=3 target
    assert (2 * 3 - 1) * (7 - 1) == 30


def test_sequence_a_monotone_vanishing():
    """Once a_i = 0 the rest of the tail must vanish in every produced table."""
    row = (21, 64, 70, 0, 0, 0)
    seq = sequence_a(synthetic_table(9, row), 9)
    seen_zero = False
    for v in seq:
        if seen_zero:
            assert v == 0
        seen_zero = seen_zero or v == 0


def test_template_check_rejects_bad_shapes():
    r = Ring(7, ["X0", "X1", "X2", "X3"])
    res = resolve(r, ["X0*X3 - X1*X2", "X0^3 + X1^3 + X2^3 + X3^3"])
    assert template_check(res, 4)
    assert not template_check(res, 5)
    short = resolve(r, ["X0"])
    assert not template_check(short, 4)
