"""Numerical oracle: roots, complete elliptic integrals, Riemann matrices and their derivatives."""

from .agm import agm, agm_elliptic_K
from .calibration import (
    CalibrationReport,
    FDResult,
    calibrate_and_compare,
    dtau_fd,
    genus1_ratio,
    normalised_tensors,
    symmetry_defect,
)
from .riemann import (
    BPath,
    CycleBasis,
    DegenerateConfiguration,
    PeriodConfig,
    RiemannMatrix,
    choose_basis,
    modular_distance,
    period_matrix,
    sl2z_reduce,
    sort_roots,
)
from .roots import RootFindingError, complex_roots

__all__ = [
    "agm", "agm_elliptic_K", "CalibrationReport", "FDResult", "calibrate_and_compare", "dtau_fd",
    "genus1_ratio", "normalised_tensors", "symmetry_defect", "BPath", "CycleBasis",
    "DegenerateConfiguration", "PeriodConfig", "RiemannMatrix", "choose_basis", "modular_distance",
    "period_matrix", "sl2z_reduce", "sort_roots", "RootFindingError", "complex_roots",
]
