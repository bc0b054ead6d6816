"""Chart model of Higgs fields on the projective line with values in L = K(D).

On P^1 with a divisor D of degree d supported in the affine chart, L = K(D) has
degree m = d - 2.  Sections of L^k are polynomials of degree <= k*m in the
affine coordinate z, written in the frame ``(dz/delta_D)^k`` where
``delta_D = prod (z - q_j)^{n_j}``.  A Higgs field on the trivial bundle is then a
traceless matrix of polynomials of degree <= m.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra.poly import ExactPoly, discriminant, fraction_str, is_squarefree, poly_gcd, rational_roots, to_fraction
from .lie import charpoly_invariants, lie_info


class DomainError(ValueError):
    """Input is well-formed but outside the supported domain."""


@dataclass(frozen=True)
class DivisorP1:
    points: tuple  # ((Fraction, int), ...)

    def __init__(self, points: Sequence, min_degree: int = 2):
        pts = []
        for p in points:
            q, n = p
            q = to_fraction(q)
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise DomainError("divisor multiplicities must be positive integers")
            pts.append((q, n))
        if len({q for q, _ in pts}) != len(pts):
            raise DomainError("divisor points must be pairwise distinct")
        object.__setattr__(self, "points", tuple(sorted(pts)))
        if self.degree < min_degree:
            raise DomainError(f"divisor degree {self.degree} below the required minimum {min_degree}")

    @classmethod
    def from_json(cls, data, min_degree: int = 2) -> "DivisorP1":
        return cls([(to_fraction(q), n) for q, n in data], min_degree=min_degree)

    def to_json(self) -> list:
        return [[fraction_str(q), n] for q, n in self.points]

    @property
    def degree(self) -> int:
        return sum(n for _, n in self.points)

    @property
    def m(self) -> int:
        """Degree of L = K(D)."""
        return self.degree - 2

    def delta(self) -> ExactPoly:
        out = ExactPoly([1])
        for q, n in self.points:
            out = out * ExactPoly([-q, 1]) ** n
        return out


def require_hitchin_range(D: DivisorP1):
    if D.degree < 3:
        raise DomainError("divisor degree must be at least 3 (deg L >= 1)")


@dataclass(frozen=True)
class LineBundleP1:
    k: int

    @property
    def h0(self) -> int:
        return max(self.k + 1, 0)

    @property
    def h1(self) -> int:
        return max(-self.k - 1, 0)

    def section_basis(self) -> list[ExactPoly]:
        return [ExactPoly.monomial(j) for j in range(self.h0)]


@dataclass(frozen=True)
class HiggsFieldP1:
    D: DivisorP1
    entries: tuple  # n x n tuple of ExactPoly

    def __init__(self, entries: Sequence[Sequence], D: DivisorP1):
        rows = tuple(tuple(e if isinstance(e, ExactPoly) else ExactPoly([e]) for e in row) for row in entries)
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise DomainError("Higgs field must be a square matrix")
        m = D.m
        for row in rows:
            for e in row:
                if e.degree > m:
                    raise DomainError(f"entry {e} exceeds the section degree bound m = {m}")
        tr = sum((rows[i][i] for i in range(n)), ExactPoly())
        if tr:
            raise DomainError("not traceless")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "D", D)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def m(self) -> int:
        return self.D.m

    @classmethod
    def from_json(cls, theta, D: DivisorP1) -> "HiggsFieldP1":
        return cls([[ExactPoly.from_json(e) for e in row] for row in theta], D)

    def to_json(self) -> list:
        return [[e.to_json() for e in row] for row in self.entries]

    def matrix_coeff(self, k: int) -> list[list[Fraction]]:
        """Constant matrix multiplying z^k."""
        return [[e.coeff(k) for e in row] for row in self.entries]


def random_higgs(n: int, D: DivisorP1, rng: random.Random, bound: int = 5) -> HiggsFieldP1:
    m = D.m
    ent = [[ExactPoly([rng.randint(-bound, bound) for _ in range(m + 1)]) for _ in range(n)] for _ in range(n)]
    ent[n - 1][n - 1] = -sum((ent[i][i] for i in range(n - 1)), ExactPoly())
    return HiggsFieldP1(ent, D)


# Hitchin map ------------------------------------------------------------------

def hitchin_map(theta: HiggsFieldP1) -> list[ExactPoly]:
    """Characteristic-polynomial coefficients ``b_i = p_i(theta)``, i = 2..n (type A)."""
    require_hitchin_range(theta.D)
    bs = charpoly_invariants(theta.entries)
    m = theta.m
    for i, b in enumerate(bs, start=2):
        if b.degree > i * m:
            raise AssertionError(f"b_{i} has degree {b.degree} > {i * m}; entry degree bound violated")
    return bs


@dataclass(frozen=True)
class DimensionReport:
    dimB: int
    dimB0: int
    dimHiggs: int
    fibreDim: int

    def to_json(self) -> dict:
        return {"dimB": self.dimB, "dimB0": self.dimB0, "dimHiggs": self.dimHiggs, "fibreDim": self.fibreDim}


def dimension_report(family: str, rank: int, d: int) -> DimensionReport:
    if d < 3:
        raise DomainError("divisor degree must be at least 3")
    info = lie_info(family, rank)
    m = d - 2
    dimB = sum(di * m + 1 for di in info.degrees)
    dimB0 = sum(max(di * m - d + 1, 0) for di in info.degrees)
    dimHiggs = info.dim * m
    return DimensionReport(dimB, dimB0, dimHiggs, dimHiggs - dimB)


@dataclass(frozen=True)
class CameralGenus:
    N: int
    genus: int | None

    def to_json(self) -> dict:
        return {"N": self.N, "genus": self.genus}


def cameral_genus(family: str, rank: int, d: int) -> CameralGenus:
    """Branch count N = |R| deg L; for A1 the genus of y^2 = b from Riemann-Hurwitz."""
    if d < 3:
        raise DomainError("divisor degree must be at least 3")
    info = lie_info(family, rank)
    N = info.num_roots * (d - 2)
    if (info.family, info.rank) != ("A", 1):
        return CameralGenus(N, None)
    g = N // 2 - 1
    assert g == dimension_report(family, rank, d).dimB0
    return CameralGenus(N, g)


# genericity -------------------------------------------------------------------

@dataclass(frozen=True)
class BranchReport:
    ok: bool
    reason: str | None = None
    branch_poly: ExactPoly | None = None
    rational_branch_points: tuple | None = None

    def to_json(self) -> dict:
        out: dict = {"ok": self.ok}
        if self.ok:
            out["branchCount"] = self.branch_poly.degree
            out["branchPolynomial"] = self.branch_poly.to_json()
            if self.rational_branch_points is not None:
                out["branchPoints"] = [fraction_str(c) for c in self.rational_branch_points]
        else:
            out["reason"] = self.reason
        return out


def genericity_check(b: ExactPoly, D: DivisorP1) -> BranchReport:
    """Type A1 genericity of the spectral coefficient ``b`` (target degree 2m)."""
    m = D.m
    if b.degree != 2 * m:
        return BranchReport(False, "branch at infinity")
    if not is_squarefree(b):
        return BranchReport(False, "repeated root")
    if any(b(q) == 0 for q, _ in D.points):
        return BranchReport(False, "branch point on D")
    roots = rational_roots(b)
    return BranchReport(True, None, b, tuple(roots) if len(roots) == b.degree else None)


# leaf base ----------------------------------------------------------------------

@dataclass(frozen=True)
class LeafBase:
    basepoint: tuple  # (b_2, ..., b_n)
    D: DivisorP1
    degrees: tuple
    directions: tuple = field(default=())  # ((i, ExactPoly), ...): direction in the b_{d_i} slot

    @property
    def dim(self) -> int:
        return len(self.directions)


def leaf_base(basepoint: Sequence[ExactPoly], D: DivisorP1, family: str = "A", rank: int | None = None) -> LeafBase:
    """The affine leaf ``o + B_0`` with ``B_0 = sum_i H^0(L^{d_i}(-D))`` in monomial form."""
    require_hitchin_range(D)
    rank = len(basepoint) if rank is None else rank
    info = lie_info(family, rank)
    m, d = D.m, D.degree
    if len(basepoint) != len(info.degrees):
        raise DomainError("basepoint must have one coefficient per basic invariant")
    for di, b in zip(info.degrees, basepoint):
        if b.degree > di * m:
            raise DomainError(f"basepoint coefficient exceeds degree {di * m}")
    delta = D.delta()
    dirs = []
    for i, di in enumerate(info.degrees):
        for j in range(max(di * m - d + 1, 0)):
            dirs.append((i, delta * ExactPoly.monomial(j)))
    lb = LeafBase(tuple(basepoint), D, info.degrees, tuple(dirs))
    assert lb.dim == dimension_report(family, rank, d).dimB0
    return lb


def spectral_coefficient_a1(theta: HiggsFieldP1) -> ExactPoly:
    """``b = -p_2 = -det(theta)`` so that the spectral curve reads ``y^2 = b``."""
    if theta.n != 2:
        raise DomainError("spectral coefficient defined here for 2x2 fields only")
    return -hitchin_map(theta)[0]


def branch_discriminant_check(b: ExactPoly, D: DivisorP1) -> bool:
    """Definitional cross-check: acceptance implies nonzero discriminant and gcd(b, delta_D) = 1."""
    rep = genericity_check(b, D)
    if not rep.ok:
        return True
    return discriminant(b) != 0 and poly_gcd(b, D.delta()).degree == 0
