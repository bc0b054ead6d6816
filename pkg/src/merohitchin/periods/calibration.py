"""Finite-difference derivatives of the Riemann matrix along leaf directions, and the
comparison of those derivatives with the residue cubic."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

import numpy as np

from ..algebra.poly import ExactPoly
from ..cubic import CameralDataA1, cubic_eval, cubic_tensor
from ..hitchin import DomainError
from .riemann import CycleBasis, DegenerateConfiguration, PeriodConfig, RiemannMatrix, fraction_of, period_matrix


@dataclass
class FDResult:
    h: float
    coarse: np.ndarray  # central difference with step h
    fine: np.ndarray  # central difference with step h/2
    richardson: np.ndarray
    error_estimate: float  # |fine - coarse| / 3, the O(h^2) model for the refined value's own error
    base: RiemannMatrix

    def to_json(self) -> dict:
        def cm(M):
            return [[{"re": float(z.real), "im": float(z.imag)} for z in row] for row in M]

        return {
            "h": self.h,
            "central": cm(self.coarse),
            "centralHalf": cm(self.fine),
            "richardson": cm(self.richardson),
            "errorEstimate": self.error_estimate,
        }


def _tau_at(data: CameralDataA1, bdot: ExactPoly, beta: Fraction, basis: CycleBasis, cfg: PeriodConfig):
    b = data.b + bdot * beta
    try:
        CameralDataA1(b, data.D)
    except DomainError as exc:
        raise DomainError(f"step too large: {exc}") from exc
    try:
        return period_matrix(b, cfg, basis=basis).tau
    except DegenerateConfiguration as exc:
        raise DomainError(f"step too large: {exc}") from exc


def dtau_fd(data: CameralDataA1, bdot: ExactPoly, h: float | Fraction = Fraction(1, 1000),
            cfg: PeriodConfig | None = None, base: RiemannMatrix | None = None) -> FDResult:
    """Central differences of tau along ``b + beta * bdot`` at steps h and h/2, plus Richardson."""
    cfg = cfg or PeriodConfig()
    base = base or period_matrix(data.b, cfg)
    g = base.genus
    if bdot.is_zero():
        Z = np.zeros((g, g), dtype=complex)
        return FDResult(float(h), Z, Z.copy(), Z.copy(), 0.0, base)
    hq = fraction_of(h)

    def central(step: Fraction) -> np.ndarray:
        tp = _tau_at(data, bdot, step, base.basis, cfg)
        tm = _tau_at(data, bdot, -step, base.basis, cfg)
        return (tp - tm) / (2 * float(step))

    coarse = central(hq)
    fine = central(hq / 2)
    rich = (4 * fine - coarse) / 3
    err = float(np.max(np.abs(fine - coarse))) / 3
    return FDResult(float(hq), coarse, fine, rich, err, base)


# calibration ---------------------------------------------------------------------------------

@dataclass
class InstanceReport:
    label: str
    genus: int
    ratio: complex | None  # genus 1: dtau / cubic in the a-normalised basis
    ratios: list = field(default_factory=list)  # genus 2: entrywise ratios
    fd_error: float = 0.0
    symmetry_error: float | None = None
    proportionality_error: float | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"label": self.label, "genus": self.genus, "fdErrorEstimate": self.fd_error}
        if self.ratio is not None:
            out["ratio"] = {"re": self.ratio.real, "im": self.ratio.imag}
        if self.symmetry_error is not None:
            out["symmetryError"] = self.symmetry_error
        if self.proportionality_error is not None:
            out["proportionalityError"] = self.proportionality_error
        out.update(self.details)
        return out


@dataclass
class CalibrationReport:
    instances: list
    constant: complex
    spread: float  # max pairwise relative difference of genus-1 ratios
    ratio_tol: float
    symmetry_tol: float
    passed: bool
    checks: dict

    def to_json(self) -> dict:
        return {
            "constant": {"re": self.constant.real, "im": self.constant.imag},
            "constantOver2PiI": _c(self.constant / (2j * np.pi)),
            "ratioSpread": self.spread,
            "ratioTol": self.ratio_tol,
            "symmetryTol": self.symmetry_tol,
            "checks": self.checks,
            "pass": self.passed,
            "instances": [r.to_json() for r in self.instances],
        }


def _c(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def genus1_ratio(data: CameralDataA1, h=Fraction(1, 1000), cfg: PeriodConfig | None = None,
                 bdot: ExactPoly | None = None, label: str = "") -> InstanceReport:
    if data.genus != 1:
        raise ValueError("genus-1 ratio needs d = 4")
    bdot = bdot if bdot is not None else data.leaf_direction(0)
    one = ExactPoly.constant(1)
    fd = dtau_fd(data, bdot, h, cfg)
    A = complex(fd.base.a_periods[0, 0])
    c = complex(cubic_eval(data, bdot, one, one, mode="exact")) / A**2
    if abs(c) == 0:
        raise DomainError("cubic vanishes on this direction; ratio undefined")
    r = complex(fd.richardson[0, 0]) / c
    r_coarse = complex(fd.coarse[0, 0]) / c
    return InstanceReport(
        label or f"b = {data.b.to_str()}",
        1,
        r,
        fd_error=fd.error_estimate / abs(c),
        details={"ratioCoarse": _c(r_coarse), "dtau": _c(complex(fd.richardson[0, 0])), "cubicNormalised": _c(c),
                 "tau": _c(complex(fd.base.tau[0, 0]))},
    )


def normalised_tensors(data: CameralDataA1, h=Fraction(1, 1000), cfg: PeriodConfig | None = None):
    """FD 3-tensor ``T[i][j][k]`` (direction i) and residue tensor, both in the a-normalised basis."""
    cfg = cfg or PeriodConfig()
    g = data.genus
    base = period_matrix(data.b, cfg)
    fds = [dtau_fd(data, data.leaf_direction(l), h, cfg, base=base) for l in range(g)]
    T = np.array([f.richardson for f in fds])  # T[l, j, k]
    Ainv = np.linalg.inv(base.a_periods)
    # direction 2 z^l delta pairs with the form z^l dz/y; normalised forms are A^-1 times these
    Tn = np.einsum("il,ljk->ijk", Ainv, T)
    C = np.array(cubic_tensor(data, mode="exact").entries, dtype=object).astype(float).astype(complex)
    Cn = np.einsum("ia,jb,kc,abc->ijk", Ainv, Ainv, Ainv, C)
    err = max(f.error_estimate for f in fds)
    return Tn, Cn, err, base


def symmetry_defect(T: np.ndarray) -> float:
    scale = float(np.max(np.abs(T)))
    g = T.shape[0]
    worst = 0.0
    for i in range(g):
        for j in range(g):
            for k in range(g):
                for p in permutations((i, j, k)):
                    worst = max(worst, abs(T[p] - T[i, j, k]))
    return worst / scale if scale else 0.0


def calibrate_and_compare(genus1: Sequence[CameralDataA1], genus2: Sequence[CameralDataA1] = (),
                          h=Fraction(1, 1000), cfg: PeriodConfig | None = None,
                          ratio_tol: float = 1e-3, symmetry_tol: float = 1e-4) -> CalibrationReport:
    """Ratio of FD period derivatives to the residue cubic; pass iff instance independent."""
    if len(genus1) < 2:
        raise ValueError("calibration needs at least two genus-1 instances")
    reps = [genus1_ratio(d, h, cfg, label=f"genus1[{i}]: b = {d.b.to_str()}") for i, d in enumerate(genus1)]
    ratios = [r.ratio for r in reps]
    K = complex(np.mean(ratios))
    spread = max(abs(a - b) / abs(K) for a in ratios for b in ratios)
    checks = {"genus1RatiosAgree": bool(spread <= ratio_tol)}
    for i, data in enumerate(genus2):
        Tn, Cn, err, base = normalised_tensors(data, h, cfg)
        sym = symmetry_defect(Tn)
        prop = float(np.max(np.abs(Tn - K * Cn)) / np.max(np.abs(Tn)))
        mask = np.abs(Cn) > 1e-8 * np.max(np.abs(Cn))
        rep = InstanceReport(
            f"genus2[{i}]: b = {data.b.to_str()}",
            2,
            None,
            ratios=[_c(x) for x in (Tn[mask] / Cn[mask]).tolist()],
            fd_error=err,
            symmetry_error=sym,
            proportionality_error=prop,
        )
        reps.append(rep)
        checks[f"genus2[{i}]Symmetric"] = bool(sym <= symmetry_tol)
        checks[f"genus2[{i}]Proportional"] = bool(prop <= ratio_tol)
    return CalibrationReport(reps, K, spread, ratio_tol, symmetry_tol, all(checks.values()), checks)
