"""Exact exploration of extremal and constant scalar curvature Sasaki rays
on admissible projective bundles, along the 2-dimensional Reeb subcone
spanned by the Killing potentials c z + 1."""
from .admissible import AdmissibleSetup, BaseFactor, SetupError, make_setup, moment_poly, setup_from_json, sum_term_poly, theorem_hypotheses
from .brieskorn import enumerate_regular_positive, is_regular, positivity_and_index, weights_from_exponents
from .cone import classify_cone, discriminant_scan, ehf, find_csc_rays, hs_derivative_identity, is_extremal, obstruction_poly
from .exact_algebra import Interval, Poly
from .extremal import CSC, WEIGHTED, build_extremal_poly, csc_constant, futaki_obstruction, obstruction_raw, scal_identity_check, solve_affine, verify_ode
from .integrals import LogScalar, alpha, alpha_beta_numeric, asymptotic_lead, beta

__all__ = [
    "AdmissibleSetup", "BaseFactor", "SetupError", "make_setup", "moment_poly", "setup_from_json",
    "sum_term_poly", "theorem_hypotheses",
    "enumerate_regular_positive", "is_regular", "positivity_and_index", "weights_from_exponents",
    "classify_cone", "discriminant_scan", "ehf", "find_csc_rays", "hs_derivative_identity",
    "is_extremal", "obstruction_poly",
    "Interval", "Poly",
    "CSC", "WEIGHTED", "build_extremal_poly", "obstruction_raw", "csc_constant", "futaki_obstruction", "scal_identity_check", "solve_affine",
    "verify_ode",
    "LogScalar", "alpha", "alpha_beta_numeric", "asymptotic_lead", "beta",
]
__version__ = "0.1.0"
