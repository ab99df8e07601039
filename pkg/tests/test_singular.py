"""Singularity scanning, classification, and the nonrational-point cascade."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from cancurve.poly import Ring
from cancurve.singular import (
    CHECK_FAILED,
    FORCED_IRREDUCIBLE,
    IMPOSSIBLE,
    SingularPoint,
    analyze,
    cases_of_interest,
    classify,
    connectedness_verdict,
    factor_bound_symbol,
    geometric_genus,
    irreducible_over_k,
    is_reduced,
    max_factor_degree,
    nonrational_singularity_check,
    rational_singular_points,
)


def ring(p: int) -> Ring:
    return Ring(p, ["x", "y", "z"])


# -- scanning -------------------------------------------------------------------


def test_smooth_fermat_cubic_has_no_singular_points():
    assert rational_singular_points(ring(7).parse("x^3 + y^3 + z^3")) == []


def test_coordinate_triangle_singular_at_vertices():
    pts = rational_singular_points(ring(2).parse("x*y*z"))
    assert sorted(pts) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_cuspidal_cubic_single_singular_point():
    assert rational_singular_points(ring(5).parse("z*y^2 - x^3")) == [(0, 0, 1)]


# -- classification -------------------------------------------------------------


def test_classify_cusp():
    s = classify(ring(5).parse("z*y^2 - x^3"), (0, 0, 1))
    assert (s.kind, s.m) == ("D", 3)
    assert s.label() == "D3"
    assert s.tangent == (0, 1, 0)
    assert s.admissible


def test_classify_node():
    F = ring(5).parse("x*y*z + x^3 + y^3")
    s = classify(F, (0, 0, 1))
    assert (s.kind, s.m) == ("R", 2)
    assert (s.delta, s.subord) == (1, 1)


def test_classify_tacnode():
    s = classify(ring(5).parse("y^2*z^2 - x^4"), (0, 0, 1))
    assert (s.kind, s.m) == ("D", 4)
    assert (s.delta, s.subord) == (2, 2)


def test_classify_rejects_smooth_point():
    with pytest.raises(ValueError):
        classify(ring(7).parse("x^3 + y^3 + z^3"), (1, 0, 0))


def test_classify_inadmissible_branch():
    # y * (y*z^2 + x^3): at (0,0,1) the cubic part meets the double tangent
    # with multiplicity one, which no R/D model covers
    F = ring(5).parse("y^2*z^2 + x^3*y")
    kinds = {P: classify(F, P).label() for P in rational_singular_points(F)}
    assert kinds == {(0, 1, 0): "D3", (0, 0, 1): "X2"}
    assert not classify(F, (0, 0, 1)).admissible


def test_delta_subord_closed_forms():
    mk = lambda kind, m: SingularPoint((0, 0, 1), kind, m)
    assert (mk("D", 6).delta, mk("D", 6).subord) == (3, 3)
    assert (mk("R", 4).delta, mk("R", 4).subord) == (6, 4)
    assert (mk("D", 5).delta, mk("D", 5).subord) == (2, 0)
    assert (mk("R", 2).delta, mk("R", 2).subord) == (1, 1)


@given(
    st.lists(
        st.one_of(
            st.integers(2, 9).map(lambda m: SingularPoint((0, 0, 1), "R", m)),
            st.integers(3, 12).map(lambda m: SingularPoint((0, 0, 1), "D", m)),
        ),
        max_size=8,
    )
)
def test_subord_bounded_by_delta(sings):
    total_subord = sum(s.subord for s in sings)
    total_delta = sum(s.delta for s in sings)
    assert total_subord <= total_delta
    tight = all(
        (s.kind == "R" and s.m == 2) or (s.kind == "D" and s.m % 2 == 0)
        for s in sings
    )
    assert (total_subord == total_delta) == tight


# -- genus ----------------------------------------------------------------------


def test_geometric_genus_examples():
    mk = lambda kind, m: SingularPoint((0, 0, 1), kind, m)
    assert geometric_genus(7, [mk("R", 2)] * 8) == 7
    assert geometric_genus(6, [mk("R", 2)] * 3 + [mk("D", 4)]) == 5
    assert geometric_genus(5, []) == 6


def test_geometric_genus_rejects_overfull_configuration():
    nodes = [SingularPoint((0, 0, 1), "R", 2)] * 4
    with pytest.raises(ValueError):
        geometric_genus(4, nodes)


# -- reducedness ----------------------------------------------------------------


def test_is_reduced():
    assert not is_reduced(ring(5).parse("x^2*y"))
    assert is_reduced(ring(2).parse("x*y*z"))
    # (x+y+z)^2 in characteristic 3
    sq = ring(3).parse("x^2 + y^2 + z^2 + 2*x*y + 2*x*z + 2*y*z")
    assert not is_reduced(sq)


# -- factor degree bounds -------------------------------------------------------

# bound on the degree of a proper factor compatible with the genus, degrees
# 5..10 against genera 4..14
FACTOR_BOUND_TABLE = {
    5: "- - - * * * * * * * *",
    6: "1 1 - - - - - * * * *",
    7: "2 2 1 1 1 1 - - - - -",
    8: "4 4 3 2 2 2 1 1 1 1 1",
    9: "4 4 4 4 4 3 3 2 2 2 2",
    10: "5 5 5 5 5 5 5 5 4 3 3",
}


@pytest.mark.parametrize("degree", sorted(FACTOR_BOUND_TABLE))
def test_factor_bound_row(degree):
    want = FACTOR_BOUND_TABLE[degree].split()
    got = [factor_bound_symbol(degree, g) for g in range(4, 15)]
    assert got == want


def test_max_factor_degree_values():
    assert max_factor_degree(8, 10) == 1
    assert max_factor_degree(9, 11) == 2
    assert max_factor_degree(6, 6) == FORCED_IRREDUCIBLE
    assert max_factor_degree(5, 7) == IMPOSSIBLE


def test_cases_of_interest_boundaries():
    assert cases_of_interest(7, 4) and not cases_of_interest(7, 3)
    assert cases_of_interest(8, 7) and not cases_of_interest(8, 6)
    assert cases_of_interest(9, 11) and not cases_of_interest(9, 10)
    assert cases_of_interest(5, 4)
    assert not cases_of_interest(10, 14)


# -- irreducibility -------------------------------------------------------------


def test_line_factor_refutes_irreducibility():
    r = ring(5)
    F = r.parse("x") * r.parse("x^2 + y^2 + 3*z^2")
    verdict, witness = irreducible_over_k(F, 0)
    assert verdict is False
    assert witness == r.parse("x")


def test_line_factor_small_field():
    # p < degree disables the point-count shortcut
    r = ring(2)
    F = r.parse("x") * r.parse("x^3 + y^3 + x*y*z + z^3")
    verdict, witness = irreducible_over_k(F, 0)
    assert verdict is False
    assert witness == r.parse("x")


def test_conic_factor_refutes_irreducibility():
    r = ring(5)
    conic = r.parse("x^2 + y^2 + 3*z^2")
    F = conic * r.parse("x^5 + x^4*y + y^4*z + z^4*x + 2*y^2*z^3")
    verdict, witness = irreducible_over_k(F, 4)
    assert verdict is False
    assert witness == conic


def test_factor_free_curve_in_case_of_interest_is_irreducible():
    F = ring(5).parse("x^4*y + y^4*z + z^4*x")
    assert rational_singular_points(F) == []
    assert irreducible_over_k(F, 6) == (True, None)


def test_outside_cases_of_interest_stays_unknown():
    r = ring(5)
    F = r.parse("x^8 + y^8 + z^8 + x^3*y^3*z^2 + 2*x*y*z^6")
    assert irreducible_over_k(F, 5) == (None, None)


def test_connectedness_verdicts():
    assert connectedness_verdict(5, 6, 0, True, True) == "connected"
    assert connectedness_verdict(5, 6, 0, True, False) == "reducible"
    assert connectedness_verdict(5, 6, 4, True, True) == "unknown"
    assert connectedness_verdict(5, 6, 1, True, True) == "connected"
    assert connectedness_verdict(8, 5, 0, True, None) == "unknown"
    assert connectedness_verdict(5, 6, 0, False, True) == "unknown"


# -- nonrational singularity cascade --------------------------------------------


def test_cascade_smooth_curves_pass():
    for p, text in [(5, "x^4 + y^4 + z^4"), (7, "x^3 + y^3 + z^3")]:
        chk = nonrational_singularity_check(ring(p).parse(text))
        assert (chk.check1, chk.check2, chk.check) == (0, 0, 0)
        assert not chk.failed


def test_cascade_locates_rational_cusp():
    chk = nonrational_singularity_check(ring(5).parse("z*y^2 - x^3"))
    assert (chk.check1, chk.check2, chk.check) == (0, 0, 0)
    assert chk.points == [(0, 0, 1)]
    assert chk.lines == [(0, 1, 0)]


def test_cascade_fails_on_nonreduced_curve():
    sq = ring(3).parse("x^2 + y^2 + z^2 + 2*x*y + 2*x*z + 2*y*z")
    chk = nonrational_singularity_check(sq)
    assert chk.check == CHECK_FAILED
    assert chk.failed


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (7, 3), (11, 2)])
def test_cascade_detects_conjugate_singular_pair(p, n):
    # (y^2 - n*z^2)^2 + x^4 with n a nonsquare: singular exactly at the
    # conjugate pair (0, +-sqrt(n), 1), invisible to the rational scan
    r = ring(p)
    M = r.parse(f"y^2 - {n}*z^2")
    F = M * M + r.parse("x^4")
    assert rational_singular_points(F) == []
    chk = nonrational_singularity_check(F)
    assert chk.check1 == 2
    assert chk.check == 2


def test_cascade_inconclusive_when_char_divides_degree():
    r5, r7 = ring(5), ring(7)
    M5 = r5.parse("y^2 - 2*z^2")
    F5 = M5 * M5 * r5.parse("z") + r5.parse("x^4*y")
    M7 = r7.parse("y^2 - 3*z^2")
    F7 = M7 * M7 * r7.parse("z^3") + r7.parse("x^6*y")
    for F in (F5, F7):
        assert F.degree() % F.ring.p == 0
        chk = nonrational_singularity_check(F)
        assert (chk.check1, chk.check) == (1, 1)


def test_cascade_agrees_with_scan_on_random_curves():
    """Whenever the cascade completes it reports exactly the scanned points."""
    rng = random.Random(20260814)
    checked = 0
    for p in (2, 3, 5):
        r = ring(p)
        for _ in range(20):
            d = rng.choice([3, 4, 5, 6])
            F = r.zero()
            for i in range(d + 1):
                for j in range(d + 1 - i):
                    c = rng.randrange(p)
                    if c:
                        F = F + r.monomial((i, j, d - i - j), c)
            if not F:
                continue
            chk = nonrational_singularity_check(F)
            if chk.check == CHECK_FAILED:
                continue
            assert sorted(chk.points) == sorted(rational_singular_points(F))
            checked += 1
    assert checked >= 30


# -- end to end -----------------------------------------------------------------


def test_analyze_cuspidal_cubic():
    an = analyze(ring(5).parse("z*y^2 - x^3"))
    assert an.reduced
    assert [s.label() for s in an.singularities] == ["D3"]
    assert an.geometry.genus == 0
    assert not an.flag_b
    assert an.geometry.verdict == "unknown"


def test_analyze_flags_inadmissible_point():
    an = analyze(ring(5).parse("y^2*z^2 + x^3*y"))
    assert an.flag_b
    assert an.geometry.verdict == "reducible"


def test_analyze_nonreduced_curve():
    an = analyze(ring(5).parse("x^2*y"))
    assert not an.reduced
    assert an.check.failed
    assert an.geometry.verdict == "unknown"
