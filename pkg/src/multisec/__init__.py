"""Divisor class groups and graded canonical modules of multi-section rings.

The package computes, for a normal projective variety presented by its class
lattice and positivity cones together with Weil divisor classes D_1, ..., D_s:
the distinguished index set U, the class groups of the N_0^s- and Z^s-graded
section rings as lattice quotients, the class/freeness/graded shift of the
canonical module, prime height classes, and multigraded Hilbert tables that
numerically verify the free-shift identities.
"""

from .cones import Cone, ConeNotFullDimensional, FeasibilityQuery, feasible
from .core import (
    HEIGHT_ONE,
    HEIGHT_TWO_PLUS,
    RING_R,
    RING_T,
    CanonicalReport,
    GradedModuleClass,
    HeightReport,
    HypothesisFailed,
    MultiSectionSetup,
    canonical_report,
    check_hypothesis_R,
    check_hypothesis_T,
    class_group,
    compute_U,
    height_report,
    push_class,
)
from .geometry import (
    NoOracle,
    SectionOracle,
    VarietyPresentation,
    build_blowup_p2_point,
    build_product,
    build_projective,
    h0,
    vanishing_dim,
)
from .hilbert import (
    MARKER_OMEGA_R,
    MARKER_OMEGA_T,
    MARKER_R,
    MARKER_T,
    DegreeWindow,
    HilbertTable,
    ReportNotFree,
    ShiftVerdict,
    bruteforce_product_dim,
    bruteforce_vanishing_dim,
    default_window,
    hilbert,
    verify_free_shift,
)
from .lattice import (
    DimensionMismatch,
    IntMatrix,
    QuotientPresentation,
    SmithDecomposition,
    det,
    push_to_quotient,
    quotient,
    rank,
    snf,
    solve_membership,
)

__version__ = "0.1.0"

__all__ = [
    "Cone",
    "ConeNotFullDimensional",
    "FeasibilityQuery",
    "feasible",
    "HEIGHT_ONE",
    "HEIGHT_TWO_PLUS",
    "RING_R",
    "RING_T",
    "CanonicalReport",
    "GradedModuleClass",
    "HeightReport",
    "HypothesisFailed",
    "MultiSectionSetup",
    "canonical_report",
    "check_hypothesis_R",
    "check_hypothesis_T",
    "class_group",
    "compute_U",
    "height_report",
    "push_class",
    "NoOracle",
    "SectionOracle",
    "VarietyPresentation",
    "build_blowup_p2_point",
    "build_product",
    "build_projective",
    "h0",
    "vanishing_dim",
    "MARKER_OMEGA_R",
    "MARKER_OMEGA_T",
    "MARKER_R",
    "MARKER_T",
    "DegreeWindow",
    "HilbertTable",
    "ReportNotFree",
    "ShiftVerdict",
    "bruteforce_product_dim",
    "bruteforce_vanishing_dim",
    "default_window",
    "hilbert",
    "verify_free_shift",
    "DimensionMismatch",
    "IntMatrix",
    "QuotientPresentation",
    "SmithDecomposition",
    "det",
    "push_to_quotient",
    "quotient",
    "rank",
    "snf",
    "solve_membership",
]
