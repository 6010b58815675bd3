"""Exact arithmetic engine: polynomials, rational functions, truncated series,
implicit series solving, elimination, Smith normal form."""

from .mpoly import MPoly, PoleAtOrigin, RatFunc, VariableMismatch
from .numtheory import divisors, gcd_all, moebius
from .resultant import EliminationBlowup, resultant_eliminate
from .series import NonUnitConstantTerm, TruncSeries, TruncationMismatch, all_exponents, poly_of_series, rat_expand
from .smith import determinant, integer_inverse, invariant_factors, matmul, smith_normal_form, transpose
from .solve import ResidualNonzero, SeedNotRoot, SingularJacobian, residual_of, series_solve

__all__ = [
    "MPoly", "RatFunc", "PoleAtOrigin", "VariableMismatch",
    "TruncSeries", "TruncationMismatch", "NonUnitConstantTerm", "all_exponents", "poly_of_series", "rat_expand",
    "series_solve", "residual_of", "SingularJacobian", "SeedNotRoot", "ResidualNonzero",
    "resultant_eliminate", "EliminationBlowup",
    "smith_normal_form", "invariant_factors", "determinant", "integer_inverse", "matmul", "transpose",
    "moebius", "divisors", "gcd_all",
]
