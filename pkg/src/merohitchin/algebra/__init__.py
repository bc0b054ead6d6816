"""Exact univariate/multivariate algebra over the rationals and truncated series."""

import math

from .linalg import bareiss_det, det, inverse, matmul, nullspace, rank, rref, solve, transpose
from .multipoly import MultiPoly
from .poly import (
    NEG_INF,
    ExactPoly,
    Z,
    discriminant,
    fraction_str,
    inverse_mod,
    is_squarefree,
    poly_gcd,
    poly_xgcd,
    power_sums,
    rational_roots,
    resultant,
    root_sum,
    to_fraction,
)
from .series import InsufficientPrecision, LaurentSeries, laurent_coeff, series_sqrt


def checked_complex(x) -> complex:
    """Coerce to ``complex`` and refuse NaN/Inf."""
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ArithmeticError(f"non-finite complex value {z!r}")
    return z


__all__ = [
    "NEG_INF", "ExactPoly", "Z", "MultiPoly", "LaurentSeries", "InsufficientPrecision",
    "bareiss_det", "det", "inverse", "matmul", "nullspace", "rank", "rref", "solve", "transpose",
    "discriminant", "fraction_str", "inverse_mod", "is_squarefree", "poly_gcd", "poly_xgcd",
    "power_sums", "rational_roots", "resultant", "root_sum", "to_fraction",
    "laurent_coeff", "series_sqrt", "checked_complex",
]
