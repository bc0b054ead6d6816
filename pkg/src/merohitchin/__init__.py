"""Meromorphic Hitchin systems on the projective line: exact chart computations,
the residue cubic on the leaf base, and a numerical period-matrix oracle."""

from .algebra import ExactPoly, LaurentSeries, MultiPoly
from .cubic import CameralDataA1, CubicTensor, cubic_eval, cubic_tensor, res2_at_branch, res2_by_series
from .hitchin import DivisorP1, DomainError, HiggsFieldP1, dimension_report, genericity_check, hitchin_map
from .jets import jet_equations, parse_system, truncation_check
from .lie import lie_info

__version__ = "0.1.0"

__all__ = [
    "ExactPoly", "LaurentSeries", "MultiPoly", "CameralDataA1", "CubicTensor", "cubic_eval", "cubic_tensor",
    "res2_at_branch", "res2_by_series", "DivisorP1", "DomainError", "HiggsFieldP1", "dimension_report",
    "genericity_check", "hitchin_map", "jet_equations", "parse_system", "truncation_check", "lie_info",
]
