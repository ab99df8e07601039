"""Canonical ideals and minimal free resolutions of singular plane curves
over prime fields."""

from .adjoint import (
    AdjointSystem,
    CanonicalIdeal,
    adjoint_basis,
    canonical_ideal,
    substitution_check,
    validate_canonical,
)
from .field import PrimeField
from .groebner import GroebnerBasis
from .harness import (
    CurveReport,
    GeneratedCurve,
    GenerationError,
    SingularityConfig,
    generate_curve,
    parse_config,
    place_points,
    reproduce_table,
    run_pipeline,
)
from .poly import Polynomial, Ring
from .resolution import (
    BettiTable,
    GradedFreeResolution,
    betti_table,
    diagram_text,
    duality_check,
    first_strand,
    free_resolution,
    hilbert_check,
    sequence_a,
    strand_nonzero_count,
    template_check,
)
from .singular import (
    CurveAnalysis,
    SingularPoint,
    analyze,
    classify,
    connectedness_verdict,
    factor_bound_symbol,
    geometric_genus,
    irreducible_over_k,
    is_reduced,
    nonrational_singularity_check,
    rational_singular_points,
)

__all__ = [
    "AdjointSystem",
    "BettiTable",
    "CanonicalIdeal",
    "CurveAnalysis",
    "CurveReport",
    "GeneratedCurve",
    "GenerationError",
    "GradedFreeResolution",
    "GroebnerBasis",
    "Polynomial",
    "PrimeField",
    "Ring",
    "SingularPoint",
    "SingularityConfig",
    "adjoint_basis",
    "analyze",
    "betti_table",
    "canonical_ideal",
    "classify",
    "connectedness_verdict",
    "diagram_text",
    "duality_check",
    "factor_bound_symbol",
    "first_strand",
    "free_resolution",
    "generate_curve",
    "geometric_genus",
    "hilbert_check",
    "irreducible_over_k",
    "is_reduced",
    "nonrational_singularity_check",
    "parse_config",
    "place_points",
    "rational_singular_points",
    "reproduce_table",
    "run_pipeline",
    "sequence_a",
    "strand_nonzero_count",
    "substitution_check",
    "template_check",
    "validate_canonical",
]

__version__ = "0.1.0"
