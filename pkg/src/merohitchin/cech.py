"""Two-chart Cech model on P^1 and the deformation complex of a Higgs pair.

Charts: U0 = {z != inf}, U1 = {z != 0}.  A line bundle O(k) is written in its
chart-0 frame, so a section over U0 is a polynomial, a section over U1 is a
Laurent polynomial with exponents <= k, and a section over U01 is any Laurent
polynomial.  The Cech differential is ``(f0, f1) -> f1 - f0``, and H^1(O(k)) is
spanned by z^j with k < j < 0.

The deformation complex of a Higgs pair on the trivial bundle is
``ad: g (x) O -> g (x) L`` with ``L = O(m)``, ``X -> [theta, X]``.  A tangent
1-hypercocycle is ``(s, t0, t1)`` with ``t1 - t0 = [theta, s]``.

Its Serre dual is ``g (x) O(-D) -> g (x) K`` (degrees -d and -2 in chart-0 frames
dz/delta_D and dz), with the same sign: ``tau1 - tau0 = [theta, sigma]``.  With
that convention the pairing

    c01 = Tr(t0 sigma) - Tr(s tau1),   <alpha, beta> = coefficient of z^-1 in c01

is insensitive to hypercoboundaries on both sides, and multiplication by delta_D
on both components is a chain map from the dual complex to the tangent one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra.linalg import nullspace, rank, rref, solve
from .algebra.poly import ExactPoly, fraction_str
from .hitchin import DivisorP1, HiggsFieldP1

Mat = tuple  # n x n tuple of tuples of Fraction


def _zero_mat(n: int) -> Mat:
    return tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))


def _is_zero_mat(A: Mat) -> bool:
    return all(x == 0 for row in A for x in row)


def _madd(A: Mat, B: Mat) -> Mat:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def _mscale(c, A: Mat) -> Mat:
    return tuple(tuple(c * a for a in row) for row in A)


def _mmul(A: Mat, B: Mat) -> Mat:
    n = len(A)
    return tuple(tuple(sum((A[i][k] * B[k][j] for k in range(n)), Fraction(0)) for j in range(n)) for i in range(n))


def _mtrace_prod(A: Mat, B: Mat) -> Fraction:
    n = len(A)
    return sum((A[i][k] * B[k][i] for i in range(n) for k in range(n)), Fraction(0))


def as_mat(rows: Sequence[Sequence]) -> Mat:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


class MatLaurent:
    """Finite Laurent polynomial with n x n rational matrix coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {}
        for k, A in (terms or {}).items():
            A = as_mat(A)
            if len(A) != n or any(len(r) != n for r in A):
                raise ValueError("coefficient matrix has the wrong size")
            if not _is_zero_mat(A):
                self.terms[int(k)] = A

    @classmethod
    def from_higgs(cls, theta: HiggsFieldP1) -> "MatLaurent":
        return cls(theta.n, {k: theta.matrix_coeff(k) for k in range(theta.m + 1)})

    @classmethod
    def monomial(cls, k: int, A) -> "MatLaurent":
        A = as_mat(A)
        return cls(len(A), {k: A})

    def is_zero(self) -> bool:
        return not self.terms

    def exponents(self) -> list[int]:
        return sorted(self.terms)

    def coeff(self, k: int) -> Mat:
        return self.terms.get(k, _zero_mat(self.n))

    def __add__(self, other: "MatLaurent") -> "MatLaurent":
        out = dict(self.terms)
        for k, A in other.terms.items():
            out[k] = _madd(out[k], A) if k in out else A
        return MatLaurent(self.n, out)

    def __neg__(self) -> "MatLaurent":
        return MatLaurent(self.n, {k: _mscale(-1, A) for k, A in self.terms.items()})

    def __sub__(self, other: "MatLaurent") -> "MatLaurent":
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, MatLaurent) and self.n == other.n and self.terms == other.terms

    def scale(self, c) -> "MatLaurent":
        return MatLaurent(self.n, {k: _mscale(c, A) for k, A in self.terms.items()})

    def __matmul__(self, other: "MatLaurent") -> "MatLaurent":
        out: dict = {}
        for i, A in self.terms.items():
            for j, B in other.terms.items():
                P = _mmul(A, B)
                out[i + j] = _madd(out[i + j], P) if i + j in out else P
        return MatLaurent(self.n, out)

    def times_poly(self, p: ExactPoly) -> "MatLaurent":
        out: dict = {}
        for i, A in self.terms.items():
            for j, c in enumerate(p.coeffs):
                if c:
                    P = _mscale(c, A)
                    out[i + j] = _madd(out[i + j], P) if i + j in out else P
        return MatLaurent(self.n, out)

    def part(self, lo: float = float("-inf"), hi: float = float("inf")) -> "MatLaurent":
        return MatLaurent(self.n, {k: A for k, A in self.terms.items() if lo <= k <= hi})

    def is_traceless(self) -> bool:
        return all(sum(A[i][i] for i in range(self.n)) == 0 for A in self.terms.values())

    def to_json(self) -> dict:
        return {str(k): [[fraction_str(x) for x in row] for row in A] for k, A in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, n: int, data: dict) -> "MatLaurent":
        return cls(n, {int(k): [[Fraction(x) for x in row] for row in A] for k, A in data.items()})


def bracket(A: MatLaurent, B: MatLaurent) -> MatLaurent:
    return (A @ B) - (B @ A)


def trace_pairing(A: MatLaurent, B: MatLaurent) -> dict:
    """Scalar Laurent polynomial ``Tr(A B)`` as ``{exponent: Fraction}``."""
    out: dict = {}
    for i, X in A.terms.items():
        for j, Y in B.terms.items():
            out[i + j] = out.get(i + j, Fraction(0)) + _mtrace_prod(X, Y)
    return {k: v for k, v in out.items() if v}


def residue_class(c01: dict) -> Fraction:
    """Image in H^1(K) = Q of an overlap 1-form c01*dz: its z^-1 coefficient."""
    return Fraction(c01.get(-1, 0))


# line bundles ---------------------------------------------------------------------

def line_cohomology(k: int) -> tuple[int, int]:
    return max(k + 1, 0), max(-k - 1, 0)


def h1_exponents(k: int) -> list[int]:
    """Exponents of the standard H^1(O(k)) basis z^j, k < j < 0."""
    return list(range(k + 1, 0))


# sl_n ----------------------------------------------------------------------------

def sl_basis(n: int) -> list[Mat]:
    basis = []
    for i in range(n):
        for j in range(n):
            if i != j:
                basis.append(tuple(tuple(Fraction(int(r == i and c == j)) for c in range(n)) for r in range(n)))
    for k in range(n - 1):
        basis.append(
            tuple(
                tuple(Fraction((r == c == k) - (r == c == k + 1)) for c in range(n))
                for r in range(n)
            )
        )
    return basis


def _flatten(A: Mat) -> list[Fraction]:
    return [x for row in A for x in row]


def _unflatten(v: Sequence[Fraction], n: int) -> Mat:
    return tuple(tuple(Fraction(v[i * n + j]) for j in range(n)) for i in range(n))


# hypercohomology ----------------------------------------------------------------

@dataclass(frozen=True)
class HyperCohomologyReport:
    h0: int
    h1: int
    h2: int
    dim_g: int
    m: int

    @property
    def euler_neg(self) -> int:
        return self.h1 - self.h0 - self.h2

    def to_json(self) -> dict:
        return {"h0": self.h0, "h1": self.h1, "h2": self.h2, "eulerNeg": self.euler_neg,
                "expectedEulerNeg": self.dim_g * self.m}


def _global_sections_vector(X: MatLaurent, deg: int) -> list[Fraction]:
    """Coordinates of a g (x) H^0(O(deg)) element: entries of z^0..z^deg, flattened."""
    v = []
    for k in range(deg + 1):
        v.extend(_flatten(X.coeff(k)))
    return v


def _ad_matrix_h0(theta: MatLaurent, m: int) -> list[list[Fraction]]:
    """Matrix of ``X -> [theta, X]`` from sl_n to gl_n (x) H^0(O(m)) (columns = basis)."""
    cols = [_global_sections_vector(bracket(theta, MatLaurent.monomial(0, B)), m) for B in sl_basis(theta.n)]
    return [list(r) for r in zip(*cols)]


def _ad_matrix_h1(theta: MatLaurent, a: int, m: int) -> list[list[Fraction]]:
    """Matrix of ``[theta, -]: H^1(g (x) O(a)) -> H^1(g (x) O(a+m))`` on z^j-bases."""
    src = h1_exponents(a)
    dst = h1_exponents(a + m)
    basis = sl_basis(theta.n)
    cols = []
    for j in src:
        for B in basis:
            img = bracket(theta, MatLaurent.monomial(j, B))
            cols.append([x for k in dst for x in _flatten(img.coeff(k))])
    if not cols:
        return []
    return [list(r) for r in zip(*cols)]


def hyper_dims(theta: HiggsFieldP1) -> HyperCohomologyReport:
    n, m = theta.n, theta.m
    if m < 0:
        raise ValueError("deg L must be non-negative")
    T = MatLaurent.from_higgs(theta)
    dim_g = n * n - 1
    A0 = _ad_matrix_h0(T, m)
    r0 = rank(A0)
    h0 = dim_g - r0
    coker0 = dim_g * line_cohomology(m)[0] - r0
    A1 = _ad_matrix_h1(T, 0, m)
    src1 = dim_g * line_cohomology(0)[1]
    dst1 = dim_g * line_cohomology(m)[1]
    r1 = rank(A1) if A1 else 0
    h1 = coker0 + (src1 - r1)
    h2 = dst1 - r1
    rep = HyperCohomologyReport(h0, h1, h2, dim_g, m)
    assert rep.euler_neg == dim_g * m, "Euler characteristic identity violated"
    return rep


# hypercocycles ------------------------------------------------------------------

class CocycleError(ValueError):
    pass


@dataclass(frozen=True)
class TangentCocycle:
    """1-hypercocycle of ``g -> g (x) O(m)``: s on U01, t0 on U0, t1 on U1."""

    s: MatLaurent
    t0: MatLaurent
    t1: MatLaurent

    def check(self, theta: MatLaurent, m: int):
        for name, X in (("s", self.s), ("t0", self.t0), ("t1", self.t1)):
            if not X.is_traceless():
                raise CocycleError(f"{name} is not traceless")
        if any(k < 0 for k in self.t0.terms):
            raise CocycleError("t0 is not regular on U0")
        if any(k > m for k in self.t1.terms):
            raise CocycleError("t1 is not regular on U1")
        if self.t1 - self.t0 != bracket(theta, self.s):
            raise CocycleError("cocycle condition t1 - t0 = [theta, s] fails")

    def __add__(self, o):
        return TangentCocycle(self.s + o.s, self.t0 + o.t0, self.t1 + o.t1)

    def scale(self, c):
        return TangentCocycle(self.s.scale(c), self.t0.scale(c), self.t1.scale(c))


@dataclass(frozen=True)
class DualCocycle:
    """1-hypercocycle of ``g (x) O(-D) -> g (x) K``: sigma on U01, tau0 on U0, tau1 on U1."""

    sigma: MatLaurent
    tau0: MatLaurent
    tau1: MatLaurent

    def check(self, theta: MatLaurent, d: int):
        for name, X in (("sigma", self.sigma), ("tau0", self.tau0), ("tau1", self.tau1)):
            if not X.is_traceless():
                raise CocycleError(f"{name} is not traceless")
        if any(k < 0 for k in self.tau0.terms):
            raise CocycleError("tau0 is not regular on U0")
        if any(k > -2 for k in self.tau1.terms):
            raise CocycleError("tau1 is not regular on U1")
        if self.tau1 - self.tau0 != bracket(theta, self.sigma):
            raise CocycleError("cocycle condition tau1 - tau0 = [theta, sigma] fails")

    def __add__(self, o):
        return DualCocycle(self.sigma + o.sigma, self.tau0 + o.tau0, self.tau1 + o.tau1)

    def scale(self, c):
        return DualCocycle(self.sigma.scale(c), self.tau0.scale(c), self.tau1.scale(c))


def zero_tangent(n: int) -> TangentCocycle:
    return TangentCocycle(MatLaurent(n), MatLaurent(n), MatLaurent(n))


def zero_dual(n: int) -> DualCocycle:
    return DualCocycle(MatLaurent(n), MatLaurent(n), MatLaurent(n))


def tangent_coboundary(theta: HiggsFieldP1, f0: MatLaurent, f1: MatLaurent) -> TangentCocycle:
    """Hypercoboundary of the 0-cochain (f0 on U0, f1 on U1 with exponents <= 0)."""
    if any(k < 0 for k in f0.terms) or any(k > 0 for k in f1.terms):
        raise CocycleError("0-cochain is not regular on its chart")
    T = MatLaurent.from_higgs(theta)
    return TangentCocycle(f1 - f0, bracket(T, f0), bracket(T, f1))


def dual_coboundary(theta: HiggsFieldP1, phi0: MatLaurent, phi1: MatLaurent) -> DualCocycle:
    d = theta.D.degree
    if any(k < 0 for k in phi0.terms) or any(k > -d for k in phi1.terms):
        raise CocycleError("0-cochain is not regular on its chart")
    T = MatLaurent.from_higgs(theta)
    return DualCocycle(phi1 - phi0, bracket(T, phi0), bracket(T, phi1))


def pairing_cocycle(alpha: TangentCocycle, beta: DualCocycle) -> dict:
    """Overlap 1-form ``c01 = Tr(t0 sigma) - Tr(s tau1)`` (coefficient of dz)."""
    a = trace_pairing(alpha.t0, beta.sigma)
    b = trace_pairing(alpha.s, beta.tau1)
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Fraction(0)) - v
    return {k: v for k, v in out.items() if v}


def duality_pair(theta: HiggsFieldP1, alpha: TangentCocycle, beta: DualCocycle, check: bool = True) -> Fraction:
    if check:
        T = MatLaurent.from_higgs(theta)
        alpha.check(T, theta.m)
        beta.check(T, theta.D.degree)
    return residue_class(pairing_cocycle(alpha, beta))


def poisson_apply(theta: HiggsFieldP1, beta: DualCocycle, check: bool = True) -> TangentCocycle:
    """Image under the inclusion O(-D) -> O: multiply every component by delta_D."""
    T = MatLaurent.from_higgs(theta)
    if check:
        beta.check(T, theta.D.degree)
    delta = theta.D.delta()
    out = TangentCocycle(beta.sigma.times_poly(delta), beta.tau0.times_poly(delta), beta.tau1.times_poly(delta))
    if check:
        out.check(T, theta.m)
    return out


# explicit bases --------------------------------------------------------------

def _image_columns(theta: HiggsFieldP1) -> list[list[Fraction]]:
    T = MatLaurent.from_higgs(theta)
    A = _ad_matrix_h0(T, theta.m)
    return [list(c) for c in zip(*A)] if A else []


def _section_from_vector(v: Sequence[Fraction], n: int, m: int) -> MatLaurent:
    return MatLaurent(n, {k: _unflatten(v[k * n * n:(k + 1) * n * n], n) for k in range(m + 1)})


def _traceless_sections(n: int, m: int) -> list[list[Fraction]]:
    out = []
    for k in range(m + 1):
        for B in sl_basis(n):
            out.append(_global_sections_vector(MatLaurent.monomial(k, B), m))
    return out


@dataclass(frozen=True)
class TangentBasis:
    cocycles: tuple
    complement: tuple  # coordinate vectors of the chosen complement
    image: tuple  # independent columns spanning [theta, g]


def tangent_basis(theta: HiggsFieldP1) -> TangentBasis:
    """Classes (0, t, t) with t running over a complement of [theta, g] in g (x) H^0(O(m))."""
    n, m = theta.n, theta.m
    img = _image_columns(theta)
    _, piv = rref([list(r) for r in zip(*img)]) if img else ([], [])
    image = [img[i] for i in piv]
    chosen = list(image)
    comp = []
    for v in _traceless_sections(n, m):
        if rank([list(r) for r in zip(*(chosen + [v]))]) > len(chosen):
            chosen.append(v)
            comp.append(v)
    zero = MatLaurent(n)
    cocycles = []
    for v in comp:
        t = _section_from_vector(v, n, m)
        cocycles.append(TangentCocycle(zero, t, t))
    return TangentBasis(tuple(cocycles), tuple(tuple(v) for v in comp), tuple(tuple(v) for v in image))


def tangent_coordinates(theta: HiggsFieldP1, basis: TangentBasis, alpha: TangentCocycle) -> list[Fraction]:
    """Coordinates of the class of ``alpha`` in ``basis``.

    Normal form: subtracting the coboundary of (f0, f1) = (s_{>0}, -s_{<=0}) kills s
    and leaves (0, t, t) with t = t0 + [theta, s_{>0}] a global section.
    """
    m = theta.m
    T = MatLaurent.from_higgs(theta)
    t = alpha.t0 + bracket(T, alpha.s.part(lo=1))
    if any(k > m or k < 0 for k in t.terms):
        raise CocycleError("normal form is not a global section; alpha is not a cocycle")
    v = _global_sections_vector(t, m)
    cols = list(basis.complement) + list(basis.image)
    M = [list(r) for r in zip(*cols)]
    x = solve(M, v)
    return x[: len(basis.complement)]


def dual_basis(theta: HiggsFieldP1) -> list[DualCocycle]:
    """sigma = sum_{j=-(d-1)}^{-1} sigma_j z^j with [theta, sigma] free of z^-1."""
    n, m, d = theta.n, theta.m, theta.D.degree
    T = MatLaurent.from_higgs(theta)
    gens = [(j, B) for j in range(-(d - 1), 0) for B in sl_basis(n)]
    # linear condition: z^-1 coefficient of [theta, sigma] vanishes
    cols = []
    for j, B in gens:
        cols.append(_flatten(bracket(T, MatLaurent.monomial(j, B)).coeff(-1)))
    rows = [list(r) for r in zip(*cols)]
    ker = nullspace(rows, len(gens))
    out = []
    for vec in ker:
        sigma = MatLaurent(n)
        for c, (j, B) in zip(vec, gens):
            if c:
                sigma = sigma + MatLaurent.monomial(j, _mscale(c, B))
        br = bracket(T, sigma)
        assert br.coeff(-1) == _zero_mat(n)
        tau1 = br.part(hi=-2)
        tau0 = -br.part(lo=0)
        out.append(DualCocycle(sigma, tau0, tau1))
    return out


def gram_matrix(theta: HiggsFieldP1, tb: TangentBasis | None = None, db: list | None = None):
    tb = tb or tangent_basis(theta)
    db = db if db is not None else dual_basis(theta)
    return [[duality_pair(theta, a, b) for b in db] for a in tb.cocycles]


def poisson_matrix(theta: HiggsFieldP1, db: list | None = None):
    """``P[i][j] = <Psi beta_i, beta_j>``; skew-symmetric."""
    db = db if db is not None else dual_basis(theta)
    images = [poisson_apply(theta, b) for b in db]
    return [[duality_pair(theta, a, b) for b in db] for a in images]


def psi_matrix(theta: HiggsFieldP1, tb: TangentBasis | None = None, db: list | None = None):
    """Columns: tangent-basis coordinates of Psi(beta_j)."""
    tb = tb or tangent_basis(theta)
    db = db if db is not None else dual_basis(theta)
    cols = [tangent_coordinates(theta, tb, poisson_apply(theta, b)) for b in db]
    return [list(r) for r in zip(*cols)] if cols else []


def random_dual_combination(basis: Sequence[DualCocycle], rng: random.Random, bound: int = 5) -> DualCocycle:
    acc = zero_dual(basis[0].sigma.n)
    for b in basis:
        acc = acc + b.scale(Fraction(rng.randint(-bound, bound)))
    return acc


def regular_everywhere(theta: HiggsFieldP1, points: Iterable[Fraction] = ()) -> bool:
    """Whether the centraliser of theta(z) has the minimal dimension n - 1 at each sample point."""
    T = MatLaurent.from_higgs(theta)
    n = theta.n
    for z in points:
        Tz = MatLaurent(n, {0: _evaluate(T, Fraction(z))})
        if rank(_ad_matrix_h0(Tz, 0)) != n * n - n:
            return False
    return True


def _evaluate(T: MatLaurent, z: Fraction) -> Mat:
    acc = _zero_mat(T.n)
    for k, A in T.terms.items():
        acc = _madd(acc, _mscale(z ** k, A))
    return acc

