"""Numerical period matrices of hyperelliptic curves y^2 = b(z), genus 1 and 2.

Branch points are sorted lexicographically and paired into g+1 straight cuts
[p_k, q_k].  On the plane minus the cuts the function

    y1(z) = sqrt(lc) * prod_k (z - p_k) * sqrt((z - q_k) / (z - p_k))      (principal roots)

is a single-valued branch of sqrt(b): each factor squares to (z - p_k)(z - q_k),
jumps only across its own cut, and behaves like z at infinity.

* a_k is the counter-clockwise loop around cut k.  With z = mid + h cos t the
  factor of cut k collapses to ``i h sin t`` and the loop integral becomes
  ``i * int_0^{2 pi} u / (sqrt(lc) prod_{j != k} y_j) dt``, a smooth periodic
  integrand (trapezoid rule).
* b_k lifts a path gamma_k from a branch point of cut k to a branch point of cut
  g+1 that crosses no cut: once on each sheet, so its period is ``2 int u dz / y1``.
  The b-paths end at different points of cut g+1 and do not meet, so (a, b) is a
  symplectic basis up to the sign of each b_k; those signs are fixed by requiring
  tau symmetric with positive definite imaginary part.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..algebra.poly import ExactPoly, is_squarefree
from .roots import complex_roots


class DegenerateConfiguration(ArithmeticError):
    pass


@dataclass(frozen=True)
class PeriodConfig:
    nodes: int = 32  # Gauss-Legendre nodes per panel on b-paths
    trap_nodes: int = 512  # trapezoid nodes on a-loops
    panel_ratio: float = 0.4  # panel length / distance to nearest singularity (parameter space)
    min_separation: float = 1e-3  # minimum distance between branch points
    margin: float = 0.08  # path clearance from cuts, as a fraction of the minimum separation
    min_angle: float = math.radians(15)  # departure angle from a path's own cut
    symmetry_tol: float = 1e-8
    root_tol: float = 1e-12
    real_tol: float = 1e-9  # real parts closer than this count as equal when sorting

    def to_json(self) -> dict:
        return {
            "nodes": self.nodes,
            "trapNodes": self.trap_nodes,
            "panelRatio": self.panel_ratio,
            "minSeparation": self.min_separation,
            "margin": self.margin,
            "minAngleDeg": math.degrees(self.min_angle),
            "symmetryTol": self.symmetry_tol,
            "rootTol": self.root_tol,
        }


@dataclass(frozen=True)
class BPath:
    """Polyline from ``roots[start]`` to ``roots[end]``; waypoint j is ``e + alphas[j] (e' - e)``."""

    start: int
    end: int
    alphas: tuple = ()

    def points(self, roots: Sequence[complex]) -> list[complex]:
        e, f = roots[self.start], roots[self.end]
        return [e] + [e + a * (f - e) for a in self.alphas] + [f]


@dataclass(frozen=True)
class CycleBasis:
    roots: tuple  # sorted branch points at construction time
    cuts: tuple  # ((i, j), ...) indices into roots
    paths: tuple  # BPath per b-cycle
    signs: tuple = ()  # +-1 per b-cycle, fixed by the Riemann relations

    @property
    def genus(self) -> int:
        return len(self.cuts) - 1


@dataclass
class RiemannMatrix:
    tau: np.ndarray
    a_periods: np.ndarray  # A[j, k] = int_{a_k} z^j dz / y
    b_periods: np.ndarray
    basis: CycleBasis
    roots: list
    symmetry_error: float
    meta: dict = field(default_factory=dict)

    @property
    def genus(self) -> int:
        return self.tau.shape[0]

    def to_json(self) -> dict:
        def cm(M):
            return [[{"re": float(z.real), "im": float(z.imag)} for z in row] for row in M]

        return {
            "genus": self.genus,
            "tau": cm(self.tau),
            "aPeriods": cm(self.a_periods),
            "bPeriods": cm(self.b_periods),
            "branchPoints": [{"re": float(z.real), "im": float(z.imag)} for z in self.roots],
            "cuts": [list(c) for c in self.basis.cuts],
            "bPaths": [
                {"from": p.start, "to": p.end, "waypoints": [{"re": float(w.real), "im": float(w.imag)}
                                                             for w in p.points(self.roots)[1:-1]]}
                for p in self.basis.paths
            ],
            "bSigns": list(self.basis.signs),
            "symmetryError": self.symmetry_error,
            **self.meta,
        }


# branch of sqrt(b) ------------------------------------------------------------------

class SqrtBranch:
    def __init__(self, lc: complex, roots: Sequence[complex], cuts: Sequence[tuple]):
        self.sqrt_lc = cmath.sqrt(lc)
        self.p = np.array([roots[i] for i, _ in cuts], dtype=complex)
        self.q = np.array([roots[j] for _, j in cuts], dtype=complex)

    def factor(self, k: int, z: np.ndarray) -> np.ndarray:
        zp = z - self.p[k]
        return zp * np.sqrt((z - self.q[k]) / zp)

    def __call__(self, z: np.ndarray, skip: int | None = None) -> np.ndarray:
        out = np.full(np.shape(z), self.sqrt_lc, dtype=complex)
        for k in range(len(self.p)):
            if k != skip:
                out = out * self.factor(k, z)
        return out


def _poly_vals(us: Sequence[ExactPoly], z: np.ndarray) -> np.ndarray:
    """Rows: u_j(z) for each form numerator."""
    out = []
    for u in us:
        c = [float(x) for x in reversed(u.coeffs)] or [0.0]
        out.append(np.polyval(c, z))
    return np.array(out, dtype=complex)


# geometry helpers --------------------------------------------------------------------

def _seg_point_dist(a: complex, b: complex, p: complex) -> float:
    d = b - a
    if d == 0:
        return abs(p - a)
    t = ((p - a) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * d))


def _cross(u: complex, v: complex) -> float:
    return (u.conjugate() * v).imag


def _segments_intersect(a: complex, b: complex, c: complex, d: complex) -> bool:
    d1 = _cross(b - a, c - a)
    d2 = _cross(b - a, d - a)
    d3 = _cross(d - c, a - c)
    d4 = _cross(d - c, b - c)
    return (d1 * d2 < 0) and (d3 * d4 < 0)


def _seg_seg_dist(a: complex, b: complex, c: complex, d: complex) -> float:
    if _segments_intersect(a, b, c, d):
        return 0.0
    return min(_seg_point_dist(a, b, c), _seg_point_dist(a, b, d), _seg_point_dist(c, d, a), _seg_point_dist(c, d, b))


def _angle(u: complex, v: complex) -> float:
    return abs(cmath.phase(v / u))


def sort_roots(roots: Sequence[complex], real_tol: float = 1e-9) -> list[complex]:
    """Lexicographic (real, then imaginary) with real parts within ``real_tol`` treated as equal."""
    rs = sorted(roots, key=lambda z: z.real)
    groups: list[list[complex]] = []
    for z in rs:
        if groups and abs(z.real - groups[-1][0].real) <= real_tol * max(1.0, abs(z.real)):
            groups[-1].append(z)
        else:
            groups.append([z])
    return [z for g in groups for z in sorted(g, key=lambda w: w.imag)]


def _min_separation(roots: Sequence[complex]) -> float:
    return min(abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1:])


def check_cuts(roots: Sequence[complex], cuts: Sequence[tuple], cfg: PeriodConfig):
    sep = _min_separation(roots)
    if sep < cfg.min_separation:
        raise DegenerateConfiguration(f"configuration too degenerate: branch points {sep:.3g} apart")
    margin = cfg.margin * sep
    for a, (i, j) in enumerate(cuts):
        for b, (k, l) in enumerate(cuts):
            if b <= a:
                continue
            if _seg_seg_dist(roots[i], roots[j], roots[k], roots[l]) < margin:
                raise DegenerateConfiguration("configuration too degenerate: cuts too close")
        for r, z in enumerate(roots):
            if r not in (i, j) and _seg_point_dist(roots[i], roots[j], z) < margin:
                raise DegenerateConfiguration("configuration too degenerate: branch point near a cut")


def _path_valid(pts: list[complex], start_cut: tuple, end_cut: tuple, roots, cuts, cfg: PeriodConfig,
                margin: float) -> bool:
    nleg = len(pts) - 1
    for li in range(nleg):
        a, b = pts[li], pts[li + 1]
        if abs(b - a) < 1e-12:
            return False
        for cut in cuts:
            c, d = roots[cut[0]], roots[cut[1]]
            touches_start = li == 0 and cut == start_cut
            touches_end = li == nleg - 1 and cut == end_cut
            if touches_start or touches_end:
                if touches_start:
                    e = pts[0]
                    other = d if abs(c - e) < 1e-14 else c
                    if _angle(b - a, other - e) < cfg.min_angle:
                        return False
                if touches_end:
                    e = pts[-1]
                    other = d if abs(c - e) < 1e-14 else c
                    if _angle(a - b, other - e) < cfg.min_angle:
                        return False
                # the leg may only meet the cut at the shared endpoint
                if not touches_start or not touches_end:
                    far = b if touches_start else a
                    if _seg_point_dist(c, d, far) < margin and nleg > 1:
                        return False
                continue
            if _seg_seg_dist(a, b, c, d) < margin:
                return False
    return True


def _path_length(pts: list[complex]) -> float:
    return sum(abs(pts[i + 1] - pts[i]) for i in range(len(pts) - 1))


def _paths_apart(p1: list[complex], p2: list[complex], margin: float) -> bool:
    for i in range(len(p1) - 1):
        for j in range(len(p2) - 1):
            if _seg_seg_dist(p1[i], p1[i + 1], p2[j], p2[j + 1]) < margin:
                return False
    return True


_OFFSETS = (0.15, 0.3, 0.5, 0.8, 1.2, 2.0)


def _candidate_alphas() -> list[tuple]:
    cands: list[tuple] = [()]
    for s in _OFFSETS:
        for sgn in (1, -1):
            cands.append((0.5 + sgn * 1j * s,))
            cands.append((sgn * 1j * s, 1 + sgn * 1j * s))
    return cands


def choose_basis(roots: Sequence[complex], cfg: PeriodConfig) -> CycleBasis:
    roots = tuple(sort_roots(roots, cfg.real_tol))
    n = len(roots)
    g = n // 2 - 1
    cuts = tuple((2 * k, 2 * k + 1) for k in range(g + 1))
    check_cuts(roots, cuts, cfg)
    margin = cfg.margin * _min_separation(roots)
    last = cuts[-1]
    options: list[list[tuple[float, BPath]]] = []
    for k in range(g):
        opts = []
        for s in cuts[k]:
            for e in last:
                for al in _candidate_alphas():
                    path = BPath(s, e, al)
                    pts = path.points(roots)
                    if _path_valid(pts, cuts[k], last, roots, cuts, cfg, margin):
                        opts.append((_path_length(pts), path))
        opts.sort(key=lambda t: (t[0], t[1].start, t[1].end, str(t[1].alphas)))
        if not opts:
            raise DegenerateConfiguration("configuration too degenerate: no admissible b-path")
        options.append(opts)
    if g == 1:
        return CycleBasis(roots, cuts, (options[0][0][1],))
    best = None
    for l1, p1 in options[0]:
        for l2, p2 in options[1]:
            if p1.end == p2.end:
                continue
            if best is not None and l1 + l2 >= best[0]:
                continue
            if _paths_apart(p1.points(roots), p2.points(roots), margin):
                best = (l1 + l2, p1, p2)
    if best is None:
        raise DegenerateConfiguration("configuration too degenerate: no disjoint pair of b-paths")
    return CycleBasis(roots, cuts, (best[1], best[2]))


def match_roots(new: Sequence[complex], old: Sequence[complex]) -> tuple:
    """Reorder ``new`` to follow ``old`` by nearest neighbour; must be a bijection."""
    out = []
    used = set()
    sep = _min_separation(old)
    for z in old:
        j = min(range(len(new)), key=lambda i: abs(new[i] - z))
        if j in used or abs(new[j] - z) > 0.25 * sep:
            raise DegenerateConfiguration("step too large: branch points cannot be matched")
        used.add(j)
        out.append(new[j])
    return tuple(out)


# integrals ------------------------------------------------------------------------------

def a_period(branch: SqrtBranch, k: int, us: Sequence[ExactPoly], nodes: int) -> np.ndarray:
    p, q = branch.p[k], branch.q[k]
    mid, h = 0.5 * (p + q), 0.5 * (q - p)
    t = 2 * np.pi * np.arange(nodes) / nodes
    z = mid + h * np.cos(t)
    vals = _poly_vals(us, z) / branch(z, skip=k)
    return 1j * vals.sum(axis=1) * (2 * np.pi / nodes)


def _leg_singularities(kind: str, A: complex, B: complex, roots: Sequence[complex]) -> list[complex]:
    out = []
    for r in roots:
        if kind == "lin":
            out.append((r - A) / (B - A))
        else:
            w = cmath.sqrt((r - A) / (B - A))
            out.extend([w, -w])
    return out


def _panels(sing: list[complex], ratio: float, depth: int = 40) -> list[tuple[float, float]]:
    out = []
    stack = [(0.0, 1.0, 0)]
    while stack:
        a, b, lvl = stack.pop()
        mid = 0.5 * (a + b)
        dist = min((abs(s - mid) for s in sing), default=math.inf)
        if (b - a) <= ratio * dist or lvl >= depth:
            out.append((a, b))
        else:
            stack.append((mid, b, lvl + 1))
            stack.append((a, mid, lvl + 1))
    return sorted(out)


def path_integral(branch: SqrtBranch, pts: list[complex], us: Sequence[ExactPoly], roots: Sequence[complex],
                  cfg: PeriodConfig, check_continuity: bool = True) -> np.ndarray:
    """``int u dz / y1`` along the polyline; square-root substitution at both (branch-point) ends."""
    if len(pts) == 2:
        m = 0.5 * (pts[0] + pts[1])
        pts = [pts[0], m, pts[1]]
    xg, wg = np.polynomial.legendre.leggauss(cfg.nodes)
    total = np.zeros(len(us), dtype=complex)
    nleg = len(pts) - 1
    samples = []
    for li in range(nleg):
        A, B = pts[li], pts[li + 1]
        if li == 0:
            kind, base, tip, sgn = "sq", A, B, 1.0
        elif li == nleg - 1:
            kind, base, tip, sgn = "sq", B, A, -1.0  # integrate from B towards A, then flip
        else:
            kind, base, tip, sgn = "lin", A, B, 1.0
        others = [r for r in roots if abs(r - base) > 1e-14] if kind == "sq" else list(roots)
        sing = _leg_singularities(kind, base, tip, others)
        leg_pts = []
        for s0, s1 in _panels(sing, cfg.panel_ratio):
            s = 0.5 * (s1 - s0) * xg + 0.5 * (s1 + s0)
            w = 0.5 * (s1 - s0) * wg
            if kind == "lin":
                z = base + (tip - base) * s
                dz = np.full_like(s, 1.0, dtype=complex) * (tip - base)
            else:
                z = base + (tip - base) * s * s
                dz = 2 * s * (tip - base)
            vals = _poly_vals(us, z) * (dz / branch(z))
            total += sgn * (vals * w).sum(axis=1)
            leg_pts.append(z)
        zs = np.concatenate(leg_pts)
        if sgn < 0:
            zs = zs[::-1]
        samples.append(zs)
    if check_continuity:
        zs = np.concatenate(samples)
        ys = branch(zs)
        ratio = ys[1:] / ys[:-1]
        if np.any(np.abs(np.angle(ratio)) > math.pi / 2):
            raise DegenerateConfiguration("configuration too degenerate: square-root branch jumps along a b-path")
    return total


# period matrix -----------------------------------------------------------------------------

def _is_pos_def(M: np.ndarray) -> bool:
    H = 0.5 * (M + M.T)
    return bool(np.all(np.linalg.eigvalsh(H) > 0))


def period_matrix(b: ExactPoly, cfg: PeriodConfig | None = None, basis: CycleBasis | None = None,
                  forms: Sequence[ExactPoly] | None = None) -> RiemannMatrix:
    """Riemann matrix of ``y^2 = b`` (deg b = 2g + 2, g in {1, 2}) in the form basis ``z^j dz/y``."""
    cfg = cfg or PeriodConfig()
    n = b.degree
    if n not in (4, 6):
        raise ValueError("period matrices are supported for genus 1 and 2 (deg b = 4 or 6)")
    if not is_squarefree(b):
        raise ValueError("b must be squarefree")
    g = n // 2 - 1
    forms = list(forms) if forms is not None else [ExactPoly.monomial(j) for j in range(g)]
    if len(forms) != g:
        raise ValueError("need exactly g form numerators")
    raw = complex_roots(b, tol=cfg.root_tol)
    if basis is None:
        basis = choose_basis(raw, cfg)
        roots = basis.roots
    else:
        roots = match_roots(raw, basis.roots)
        check_cuts(roots, basis.cuts, cfg)
    branch = SqrtBranch(complex(float(b.lc)), roots, basis.cuts)
    A = np.zeros((g, g), dtype=complex)
    Bm = np.zeros((g, g), dtype=complex)
    for k in range(g):
        A[:, k] = a_period(branch, k, forms, cfg.trap_nodes)
        Bm[:, k] = 2 * path_integral(branch, basis.paths[k].points(roots), forms, roots, cfg)
    if np.linalg.cond(A) > 1e12:
        raise DegenerateConfiguration("a-period matrix is numerically singular")
    Ainv = np.linalg.inv(A)
    meta: dict = {}
    if basis.signs:
        signs = basis.signs
    else:
        signs = _choose_signs(Ainv, Bm)
        basis = replace(basis, signs=signs)
    Bs = Bm * np.array(signs)[None, :]
    tau = Ainv @ Bs
    sym = float(np.max(np.abs(tau - tau.T))) / max(1.0, float(np.max(np.abs(tau))))
    if sym > cfg.symmetry_tol:
        raise DegenerateConfiguration(f"Riemann matrix not symmetric (relative error {sym:.3g})")
    if not _is_pos_def(tau.imag):
        raise DegenerateConfiguration("imaginary part of the Riemann matrix is not positive definite")
    meta["config"] = cfg.to_json()
    return RiemannMatrix(tau, A, Bs, basis, list(roots), sym, meta)


def _choose_signs(Ainv: np.ndarray, Bm: np.ndarray) -> tuple:
    g = Bm.shape[1]
    best = None
    for mask in range(2 ** g):
        signs = tuple(-1 if (mask >> k) & 1 else 1 for k in range(g))
        tau = Ainv @ (Bm * np.array(signs)[None, :])
        asym = float(np.max(np.abs(tau - tau.T)))
        ok = _is_pos_def(tau.imag)
        key = (not ok, asym)
        if best is None or key < best[0]:
            best = (key, signs)
    return best[1]


# modular reduction (for comparing genus-1 values) -------------------------------------------

def sl2z_reduce(tau: complex, max_iter: int = 200) -> complex:
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    for _ in range(max_iter):
        tau = tau - round(tau.real)
        if abs(tau) < 1 - 1e-14:
            tau = -1 / tau
        else:
            break
    return tau


def modular_distance(t1: complex, t2: complex) -> float:
    """Distance between SL2(Z)-reduced representatives, allowing for boundary identifications."""
    r1, r2 = sl2z_reduce(t1), sl2z_reduce(t2)
    cands = [r1, r1 + 1, r1 - 1, -1 / r1, -1 / r1 + 1, -1 / r1 - 1]
    return min(abs(c - r2) for c in cands)


def fraction_of(h: float | Fraction) -> Fraction:
    return h if isinstance(h, Fraction) else Fraction(str(h))
