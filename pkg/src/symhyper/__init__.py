"""Exact construction and verification of symmetric hypergeometric orthogonal polynomials."""
from .exact import LaurentPolynomial, X
from .families import PRESETS, FamilyKind, FamilySpec, GaugeTransform, u_closed
from .eigen import eigenpoly_descent, eigenpolys_recurrence, u_via_descent
from .moments import moments_from_expansion, orthogonality_report
from .realizations import build_realization, check_realization
from .algebra import fit_relation, verify_relation
from .classify import classify, fit_difference_equation

__all__ = [
    "LaurentPolynomial", "X", "PRESETS", "FamilyKind", "FamilySpec", "GaugeTransform", "u_closed",
    "eigenpoly_descent", "eigenpolys_recurrence", "u_via_descent", "moments_from_expansion",
    "orthogonality_report", "build_realization", "check_realization", "fit_relation",
    "verify_relation", "classify", "fit_difference_equation",
]
