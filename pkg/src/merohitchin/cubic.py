"""The cubic form on the leaf base of an A1 spectral cover y^2 = b(z), by quadratic residues.

For a leaf direction bdot (divisible by delta_D) and holomorphic forms u dz/y, v dz/y,
the quadratic differential ``(bdot/b) * (u v dz^2 / b)`` has a double pole at each
ramification point.  In a local coordinate w with ``w^2 = b`` its w^-2 coefficient is
``4 bdot(c) u(c) v(c) / b'(c)^2``, and

    cubic(bdot, u, v) = 1/2 * sum_c Res^2 = 2 * sum_c bdot(c) u(c) v(c) / b'(c)^2.

Leaf directions become forms through ``bdot -> bdot dz / (2 y delta_D)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra.poly import ExactPoly, root_sum
from .algebra.series import LaurentSeries, laurent_coeff, reversion
from .hitchin import DivisorP1, DomainError, genericity_check


@dataclass(frozen=True)
class CameralDataA1:
    b: ExactPoly
    D: DivisorP1

    def __post_init__(self):
        if self.D.degree < 3:
            raise DomainError("divisor degree must be at least 3")
        rep = genericity_check(self.b, self.D)
        if not rep.ok:
            raise DomainError(f"spectral coefficient is not generic: {rep.reason}")

    @property
    def m(self) -> int:
        return self.D.m

    @property
    def genus(self) -> int:
        return self.m - 1

    @property
    def delta(self) -> ExactPoly:
        return self.D.delta()

    def leaf_direction(self, i: int) -> ExactPoly:
        """Basis direction ``2 z^i delta_D`` of B_0 (paired with the form z^i dz/y)."""
        return ExactPoly.monomial(i, 2) * self.delta

    def perturbed(self, bdot: ExactPoly, beta: Fraction) -> "CameralDataA1":
        return CameralDataA1(self.b + bdot * beta, self.D)


@dataclass(frozen=True)
class HolomorphicForm:
    """``u(z) dz / y`` on ``y^2 = b``."""

    u: ExactPoly


def _check_form(data: CameralDataA1, u: ExactPoly):
    if u.degree > data.genus - 1:
        raise DomainError(f"form numerator degree {u.degree} exceeds genus - 1 = {data.genus - 1}")


def _check_direction(data: CameralDataA1, bdot: ExactPoly):
    if bdot.degree > 2 * data.m:
        raise DomainError("direction degree exceeds 2m")
    if not data.delta.divides(bdot):
        raise DomainError("direction not tangent to leaf")


def random_generic_b(D: DivisorP1, rng, bound: int = 4, tries: int = 200) -> ExactPoly:
    """Random integer spectral coefficient of degree 2m passing the genericity check."""
    n = 2 * D.m
    for _ in range(tries):
        c = [rng.randint(-bound, bound) for _ in range(n)] + [rng.choice([1, 2, 3])]
        b = ExactPoly(c)
        if genericity_check(b, D).ok:
            return b
    raise DomainError("no generic coefficient found")


def tangent_to_form(bdot: ExactPoly, data: CameralDataA1) -> HolomorphicForm:
    _check_direction(data, bdot)
    u = bdot.exact_div(data.delta * 2)
    _check_form(data, u)
    return HolomorphicForm(u)


# residues ----------------------------------------------------------------------

def _is_root(b: ExactPoly, c, tol: float = 1e-8) -> bool:
    val = b(c)
    if isinstance(c, (Fraction, int)):
        return val == 0
    scale = sum(abs(float(a)) * abs(c) ** k for k, a in enumerate(b.coeffs))
    return abs(val) <= tol * max(scale, 1.0)


def res2_at_branch(data: CameralDataA1, bdot: ExactPoly, u: ExactPoly, v: ExactPoly, c):
    """Closed-form quadratic residue ``4 bdot(c) u(c) v(c) / b'(c)^2`` at the point over c."""
    b = data.b
    if not _is_root(b, c):
        raise DomainError("c is not a branch point")
    db = b.derivative()(c)
    if db == 0:
        raise DomainError("non-simple branch point")
    return 4 * bdot(c) * u(c) * v(c) / (db * db)


def local_quadratic_differential(data: CameralDataA1, bdot: ExactPoly, u: ExactPoly, v: ExactPoly,
                                 c, order: int = 6) -> LaurentSeries:
    """Laurent series (in w, with ``w^2 = b`` exactly) of ``(bdot/b) u v dz^2/b`` divided by dw^2."""
    b = data.b
    if not _is_root(b, c):
        raise DomainError("c is not a branch point")
    if b.derivative()(c) == 0:
        raise DomainError("non-simple branch point")
    # x = z - c solves b(c + x) = s; X(s) is its reversion, z(w) = c + X(w^2)
    shifted = b.shift(c) if isinstance(c, (Fraction, int)) else None
    if shifted is not None:
        bx = LaurentSeries(0, tuple(shifted.coeff(k) for k in range(order + 1)), order, "s")
    else:
        bx = _float_shift_series(b, c, order)
        # c is a root to working precision; drop the rounding residue
        bx = LaurentSeries(1, bx.coeffs[1:], order, "s")
    X = reversion(bx)
    # substitute s = w^2
    wser = {2 * k: X.coeff(k) for k in range(1, order + 1)}
    Xw = LaurentSeries.from_terms(wser, 2 * order + 1, "w")
    zw = Xw + c
    dz = Xw.derivative()
    num = _poly_of_series(bdot * u * v, zw)
    # b(z(w)) through the Taylor series at c, whose constant term is exactly zero
    bz = Xw * 0
    for k in range(1, order + 1):
        bz = bz + (Xw ** k).scale(bx.coeff(k))
    return num * dz * dz * (bz * bz).inverse()


def _float_shift_series(b: ExactPoly, c: complex, order: int) -> LaurentSeries:
    """Taylor coefficients of b at a complex point c."""
    coeffs = [complex(float(a)) for a in b.coeffs]
    out = []
    # repeated synthetic division gives the Taylor coefficients
    work = coeffs[:]
    for _ in range(order + 1):
        if not work:
            out.append(0j)
            continue
        acc = 0j
        nxt = []
        for a in reversed(work):
            acc = acc * c + a
            nxt.append(acc)
        out.append(nxt[-1])
        nxt.pop()
        work = list(reversed(nxt))
    return LaurentSeries(0, tuple(out), order, "s")


def _poly_of_series(p: ExactPoly, s: LaurentSeries) -> LaurentSeries:
    acc = None
    for a in reversed(p.coeffs):
        acc = s * 0 + a if acc is None else acc * s + a
    if acc is None:
        return s * 0
    return acc


def res2_by_series(data: CameralDataA1, bdot: ExactPoly, u: ExactPoly, v: ExactPoly, c,
                   order: int = 6, reparam: LaurentSeries | None = None):
    """Quadratic residue read off the local Laurent expansion.

    ``reparam`` optionally substitutes ``w = phi(w')`` (valuation 1) before extraction;
    the quadratic residue is unchanged by such coordinate changes.
    """
    q = local_quadratic_differential(data, bdot, u, v, c, order)
    if reparam is not None:
        dphi = reparam.derivative()
        q = q.compose(reparam) * dphi * dphi
    return laurent_coeff(q, -2)


# the cubic ---------------------------------------------------------------------

def cubic_eval(data: CameralDataA1, bdot: ExactPoly, u: ExactPoly, v: ExactPoly, mode: str = "exact"):
    """``1/2 sum_c Res^2_c``; exact mode uses trace-form root sums, float mode numerical roots."""
    _check_direction(data, bdot)
    _check_form(data, u)
    _check_form(data, v)
    b = data.b
    db = b.derivative()
    num = bdot * u * v * 2
    if mode == "exact":
        if num.is_zero():
            return Fraction(0)
        return root_sum(num, db * db, b)
    if mode == "float":
        from .periods.roots import complex_roots

        total = 0j
        for c in complex_roots(b):
            d = db(c)
            total += num(c) / (d * d)
        return total
    raise ValueError(f"unknown mode {mode!r}")


def cubic_eval_by_roots(data: CameralDataA1, bdot: ExactPoly, u: ExactPoly, v: ExactPoly, roots: Sequence):
    """Same quantity summed explicitly over supplied branch points (closed-form residues)."""
    return sum((res2_at_branch(data, bdot, u, v, c) for c in roots), 0 * roots[0]) / 2


@dataclass(frozen=True)
class CubicTensor:
    genus: int
    entries: tuple  # nested g x g x g

    def entry(self, i: int, j: int, k: int):
        return self.entries[i][j][k]

    def is_symmetric(self) -> bool:
        g = self.genus
        for i in range(g):
            for j in range(g):
                for k in range(g):
                    e = self.entries[i][j][k]
                    for p in ((i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)):
                        if self.entries[p[0]][p[1]][p[2]] != e:
                            return False
        return True

    def to_json(self) -> dict:
        from .algebra.poly import fraction_str

        def enc(x):
            return fraction_str(x) if isinstance(x, Fraction) else [float(x.real), float(x.imag)]

        return {
            "genus": self.genus,
            "basis": "directions bdot_i = 2 z^i delta_D; forms z^j dz/y (0 <= i, j < genus)",
            "entries": [[[enc(x) for x in row] for row in plane] for plane in self.entries],
        }


def cubic_tensor(data: CameralDataA1, mode: str = "exact") -> CubicTensor:
    """``T[i][j][k] = cubic(2 z^i delta_D, z^j, z^k) = 4 sum_c delta_D(c) c^{i+j+k} / b'(c)^2``."""
    g = data.genus
    forms = [ExactPoly.monomial(j) for j in range(g)]
    dirs = [data.leaf_direction(i) for i in range(g)]
    entries = tuple(
        tuple(tuple(cubic_eval(data, dirs[i], forms[j], forms[k], mode) for k in range(g)) for j in range(g))
        for i in range(g)
    )
    return CubicTensor(g, entries)
