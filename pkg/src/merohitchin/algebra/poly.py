"""Dense univariate polynomials over the rationals.

Coefficients are stored low-to-high (index = degree) as ``Fraction``.  The
zero polynomial has an empty coefficient list and degree ``-inf``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .linalg import bareiss_det

Rational = Fraction
Scalar = Union[int, Fraction]

#: Degree of the zero polynomial; compares below every integer degree.
NEG_INF = -math.inf


def to_fraction(value) -> Fraction:
    """Parse ``value`` (int, Fraction, or a ``"p/q"`` string) into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class ExactPoly:
    """Immutable dense polynomial with rational coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._c = tuple(cs)

    # construction -------------------------------------------------------
    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "ExactPoly":
        if k < 0:
            raise ValueError("monomial degree must be non-negative")
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c: Scalar) -> "ExactPoly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar], lc: Scalar = 1) -> "ExactPoly":
        p = cls([lc])
        for r in roots:
            p = p * cls([-to_fraction(r), 1])
        return p

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "ExactPoly":
        return cls(to_fraction(x) for x in data)

    def to_json(self) -> list[str]:
        return [fraction_str(c) for c in self._c]

    # basic properties -----------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else NEG_INF

    @property
    def lc(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self._c[k] if 0 <= k < len(self._c) else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    # arithmetic -----------------------------------------------------------
    @staticmethod
    def _lift(other) -> "ExactPoly":
        if isinstance(other, ExactPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ExactPoly([other])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = max(len(self._c), len(o._c))
        return ExactPoly(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return ExactPoly(-c for c in self._c)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self._c or not o._c:
            return ExactPoly()
        out = [Fraction(0)] * (len(self._c) + len(o._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(o._c):
                    out[i + j] += a * b
        return ExactPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = ExactPoly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dq = len(self._c) - len(o._c)
        if dq < 0:
            return ExactPoly(), self
        quo = [Fraction(0)] * (dq + 1)
        inv_lc = 1 / o.lc
        for k in range(dq, -1, -1):
            c = rem[k + len(o._c) - 1] * inv_lc
            quo[k] = c
            if c:
                for j, b in enumerate(o._c):
                    rem[k + j] -= c * b
        return ExactPoly(quo), ExactPoly(rem[: len(o._c) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "ExactPoly":
        """Quotient ``self / other``; raises ``ValueError`` on a nonzero remainder."""
        if isinstance(other, (int, Fraction)):
            return ExactPoly(c / other for c in self._c)
        q, r = divmod(self, other)
        if r:
            raise ValueError("inexact polynomial division")
        return q

    __truediv__ = exact_div

    def divides(self, other: "ExactPoly") -> bool:
        """True iff ``self`` divides ``other`` (zero divides only zero)."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def derivative(self) -> "ExactPoly":
        return ExactPoly(i * c for i, c in enumerate(self._c) if i)

    def monic(self) -> "ExactPoly":
        if not self._c:
            return self
        return ExactPoly(c / self.lc for c in self._c)

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, ExactPoly) else ExactPoly()
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def compose(self, other: "ExactPoly") -> "ExactPoly":
        return self(other)

    def shift(self, c: Scalar) -> "ExactPoly":
        """The polynomial ``p(z + c)``."""
        return self(ExactPoly([c, 1]))

    def reverse(self, n: int) -> "ExactPoly":
        """``z^n p(1/z)`` for ``n >= deg p``."""
        if self._c and n < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        return ExactPoly(list(reversed(list(self._c) + [0] * (n + 1 - len(self._c)))))

    # comparisons / display -----------------------------------------------
    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        return hash(self._c)

    def to_str(self, var: str = "z") -> str:
        if not self._c:
            return "0"
        parts = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = fraction_str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{fraction_str(a)}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"ExactPoly({self.to_str()!r})"


Z = ExactPoly([0, 1])


def poly_gcd(a: ExactPoly, b: ExactPoly) -> ExactPoly:
    """Monic greatest common divisor; ``gcd(0, 0) = 0``."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: ExactPoly, b: ExactPoly):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = ExactPoly([1]), ExactPoly()
    t0, t1 = ExactPoly(), ExactPoly([1])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0:
        inv = 1 / r0.lc
        return r0 * inv, s0 * inv, t0 * inv
    return r0, s0, t0


def inverse_mod(a: ExactPoly, m: ExactPoly) -> ExactPoly:
    g, s, _ = poly_xgcd(a % m, m)
    if g != 1:
        raise ValueError("polynomial is not invertible modulo the given modulus")
    return s % m


def is_squarefree(p: ExactPoly) -> bool:
    if p.degree < 1:
        return bool(p)
    return poly_gcd(p, p.derivative()).degree == 0


# resultants ---------------------------------------------------------------

def sylvester_matrix(f: Sequence, g: Sequence, zero) -> list[list]:
    """Sylvester matrix of coefficient sequences given low-to-high."""
    m, n = len(f) - 1, len(g) - 1
    fh, gh = list(reversed(f)), list(reversed(g))
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + fh + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gh + [zero] * (size - n - 1 - i))
    return rows


def _exact_quotient(a, b):
    if isinstance(a, ExactPoly):
        return a.exact_div(b)
    return a / b


def resultant_coeffs(f: Sequence, g: Sequence, zero, one):
    """Resultant of two polynomials given as low-to-high coefficient lists over an
    integral domain with exact division (rationals or ``ExactPoly``)."""
    if len(f) < 2 and len(g) < 2:
        return one
    if len(f) < 2:
        return f[0] ** (len(g) - 1) if len(f) == 1 else zero
    if len(g) < 2:
        return g[0] ** (len(f) - 1) if len(g) == 1 else zero
    return bareiss_det(sylvester_matrix(f, g, zero), _exact_quotient, zero, one)


def resultant(f: ExactPoly, g: ExactPoly) -> Fraction:
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    return resultant_coeffs(list(f.coeffs), list(g.coeffs), Fraction(0), Fraction(1))


def discriminant_coeffs(f: Sequence, zero, one):
    """Discriminant of ``sum f[k] x^k`` over a coefficient ring with exact division."""
    n = len(f) - 1
    if n < 1:
        raise ValueError("degree too small")
    fp = [k * f[k] for k in range(1, n + 1)]
    res = resultant_coeffs(list(f), fp, zero, one)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return _exact_quotient(sign * res, f[-1])


def discriminant(f: ExactPoly) -> Fraction:
    """``(-1)^{n(n-1)/2} res(f, f') / lc(f)``; zero iff ``f`` has a repeated root."""
    if f.degree < 1:
        raise ValueError("degree too small")
    return discriminant_coeffs(list(f.coeffs), Fraction(0), Fraction(1))


# root sums ----------------------------------------------------------------

def power_sums(p: ExactPoly, kmax: int) -> list[Fraction]:
    """Power sums ``sum_c c^k`` (k = 0..kmax) over the roots of ``p`` with multiplicity."""
    n = p.degree
    if n < 1:
        raise ValueError("degree too small")
    mp = p.monic()
    a = [mp.coeff(n - i) for i in range(n + 1)]  # a[i] = coeff of z^{n-i}
    ps = [Fraction(n)]
    for k in range(1, kmax + 1):
        s = sum((a[i] * ps[k - i] for i in range(1, min(k - 1, n) + 1)), Fraction(0))
        if k <= n:
            s += k * a[k]
        ps.append(-s)
    return ps


def root_sum(num: ExactPoly, den: ExactPoly, p: ExactPoly) -> Fraction:
    """Exact ``sum over roots c of p`` of ``num(c)/den(c)`` without root extraction.

    ``p`` must be squarefree and coprime to ``den``; the sum is the trace of
    ``num * den^{-1}`` in ``Q[z]/(p)``.
    """
    if not is_squarefree(p):
        raise ValueError("root sums require a squarefree polynomial")
    r = (num * inverse_mod(den, p)) % p
    ps = power_sums(p, max(p.degree - 1, 0))
    return sum((r.coeff(k) * ps[k] for k in range(p.degree)), Fraction(0))


def rational_roots(p: ExactPoly) -> list[Fraction]:
    """All distinct rational roots of ``p`` (each verified exactly)."""
    import numpy as np

    if p.degree < 1:
        return []
    found: set[Fraction] = set()
    q = p
    while q.coeff(0) == 0 and q:
        found.add(Fraction(0))
        q = ExactPoly(q.coeffs[1:])
    if q.degree < 1:
        return sorted(found)
    den = math.lcm(*(c.denominator for c in q.coeffs))
    ints = [int(c * den) for c in q.coeffs]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    lead = abs(ints[-1])
    approx = np.roots([float(c) for c in reversed(ints)])
    for r in approx:
        if abs(r.imag) > 1e-6 * max(1.0, abs(r)):
            continue
        cand = Fraction(float(r.real)).limit_denominator(lead)
        if q(cand) == 0:
            found.add(cand)
    return sorted(found)
