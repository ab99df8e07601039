"""Configuration parsing, curve generation, and the record pipeline."""

import random

import pytest

from cancurve.harness import (
    FRAME4,
    FRAME6,
    RECORD_FIELDS,
    generate_curve,
    parse_config,
    place_points,
    reproduce_table,
    run_pipeline,
)


# -- configuration grammar --------------------------------------------------------


def test_parse_config_multiset():
    c = parse_config("R2^3*D4")
    assert c.atoms == (("R", 2), ("R", 2), ("R", 2), ("D", 4))
    assert c.text == "R2^3*D4"
    assert c.delta == 5
    assert c.genus(7) == 10
    assert len(c) == 4


def test_parse_config_empty_forms():
    assert parse_config("{}").atoms == ()
    assert parse_config("").atoms == ()
    assert parse_config("  ").text == "{}"


def test_parse_config_separators_optional():
    assert parse_config("R2R2").atoms == parse_config("R2*R2").atoms


@pytest.mark.parametrize(
    "bad",
    ["Q3", "R", "R2^", "R2^0", "*R2", "R2*", "R2**D4", "R1", "D2", "D"],
)
def test_parse_config_rejects(bad):
    with pytest.raises(ValueError):
        parse_config(bad)


# -- point placement --------------------------------------------------------------


def test_placement_small_counts_use_frame():
    assert place_points(3, 5) == list(FRAME4[:3])
    assert place_points(4, 5) == list(FRAME4)
    assert place_points(6, 5) == list(FRAME6)


def test_placement_collinear_variant():
    assert place_points(4, 5, variant="collinear") == [
        (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0),
    ]
    with pytest.raises(ValueError):
        place_points(5, 5, variant="collinear")


def test_placement_five_extends_frame():
    pts = place_points(5, 5, rng=random.Random(1))
    assert pts[:4] == list(FRAME4)
    assert len(set(pts)) == 5


def test_placement_many_needs_rng():
    with pytest.raises(ValueError):
        place_points(7, 5)
    pts = place_points(8, 3, rng=random.Random(2))
    assert len(set(pts)) == 8


def test_placement_bounded_by_plane_size():
    with pytest.raises(ValueError):
        place_points(8, 2)


# -- curve generation --------------------------------------------------------------


def test_generation_is_seed_deterministic():
    a = generate_curve(5, 5, "R2^2", seed=7)
    b = generate_curve(5, 5, "R2^2", seed=7)
    assert str(a.F) == str(b.F)
    assert a.points == b.points
    assert not a.mismatch


def test_generation_achieves_requested_types():
    cur = generate_curve(7, 6, "R2^5", seed=3)
    assert not cur.mismatch
    assert sorted(s.label() for s in cur.achieved) == ["R2"] * 5
    assert sorted(s.location for s in cur.achieved) == sorted(cur.points)


def test_generation_genus_matches_configuration():
    cfg = parse_config("R2^4")
    cur = generate_curve(7, 6, cfg, seed=1)
    delta = sum(s.delta for s in cur.achieved)
    assert cfg.delta == delta == 4
    assert cfg.genus(6) == 6


# -- pipeline records ---------------------------------------------------------------


GENUS4_LINE = (
    "p={p} f=5 config=R2^2 points=(1:0:0),(0:1:0) seed=1 check={check} "
    "flag_b=false genus=4 a=() strand=(1) twoLP=1 "
    "betti=1,0,0;0,1,0;0,1,0;0,0,1 verdict=connected stage=done"
)


def test_record_line_genus_four():
    rep = run_pipeline(7, 5, "R2^2", seed=1)
    assert rep.line(include_ms=False) == GENUS4_LINE.format(p=7, check=0)
    assert not rep.flagged
    assert rep.duality and rep.hilbert
    assert rep.validation["passed"]


def test_record_flagged_when_char_divides_degree():
    # the stage-one resultant degenerates for 5 | 5, so check=1 and the run
    # is excluded from table statistics even though everything else is clean
    rep = run_pipeline(5, 5, "R2^2", seed=1)
    assert rep.line(include_ms=False) == GENUS4_LINE.format(p=5, check=1)
    assert rep.flagged


def test_record_has_all_fields():
    rep = run_pipeline(7, 5, "R2^2", seed=1)
    parts = rep.line().split(" ")
    assert len(parts) == len(RECORD_FIELDS) == 15
    assert [kv.split("=")[0] for kv in parts] == list(RECORD_FIELDS)
    assert parts[-1].startswith("ms=")


def test_pipeline_reports_generation_failure():
    rep = run_pipeline(3, 4, "R3^4", seed=1)
    assert rep.stage == "generate"
    assert rep.error == "the constrained linear system is empty"
    assert rep.flagged


def test_pipeline_reports_genus_budget_failure():
    rep = run_pipeline(5, 4, "R2^4", seed=1)
    assert rep.stage == "classify"
    assert rep.flagged


def test_pipeline_rejects_malformed_config():
    with pytest.raises(ValueError):
        run_pipeline(5, 5, "Q3", seed=1)


# -- table reproduction ---------------------------------------------------------------


def test_reproduce_genus_four_quick():
    summary = reproduce_table(4, chars=(2, 3), trials=2, seed_base=0)
    assert summary.passed
    assert len(summary.reports) == 4
    outcome = summary.outcomes[0]
    assert outcome.membership_ok and outcome.generic_ok
    assert set(outcome.observed) == {()}


def test_reproduce_unknown_genus():
    with pytest.raises(ValueError):
        reproduce_table(12)
