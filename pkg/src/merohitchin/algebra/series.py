"""Truncated Laurent series in one variable.

A series carries an explicit truncation order ``trunc``: coefficients are known
for exponents ``min_exp..trunc`` inclusive, everything above is ``O(w^(trunc+1))``.
Coefficients may be ``Fraction`` (exact) or ``complex`` (floating).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import ExactPoly, fraction_str


class InsufficientPrecision(ValueError):
    pass


def _is_zero(c) -> bool:
    return c == 0


def _exact_sqrt(c):
    if isinstance(c, Fraction) or isinstance(c, int):
        c = Fraction(c)
        if c < 0:
            raise ValueError("negative rational has no rational square root")
        n, d = math.isqrt(c.numerator), math.isqrt(c.denominator)
        if n * n != c.numerator or d * d != c.denominator:
            raise ValueError(f"{c} is not a rational square")
        return Fraction(n, d)
    return cmath.sqrt(complex(c))


@dataclass(frozen=True)
class LaurentSeries:
    min_exp: int
    coeffs: tuple
    trunc: int
    var: str = "w"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.trunc < self.min_exp - 1:
            raise ValueError("truncation order below minimum exponent")
        if len(self.coeffs) > self.trunc - self.min_exp + 1:
            object.__setattr__(self, "coeffs", self.coeffs[: self.trunc - self.min_exp + 1])

    # construction ---------------------------------------------------------
    @classmethod
    def from_poly(cls, p: ExactPoly, trunc: int, var: str = "w") -> "LaurentSeries":
        return cls(0, tuple(p.coeff(k) for k in range(trunc + 1)), trunc, var)

    @classmethod
    def from_terms(cls, terms: dict, trunc: int, var: str = "w") -> "LaurentSeries":
        if not terms:
            return cls(trunc + 1, (), trunc, var)
        lo = min(terms)
        zero = 0 * next(iter(terms.values()))
        return cls(lo, tuple(terms.get(k, zero) for k in range(lo, trunc + 1)), trunc, var)

    @classmethod
    def monomial(cls, k: int, c, trunc: int, var: str = "w") -> "LaurentSeries":
        return cls.from_terms({k: c}, trunc, var)

    # access -------------------------------------------------------------
    def coeff(self, k: int):
        if k > self.trunc:
            raise InsufficientPrecision(
                f"coefficient of {self.var}^{k} requested but series is only known to order {self.trunc}"
            )
        i = k - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self._zero()

    def _zero(self):
        return 0 * self.coeffs[0] if self.coeffs else Fraction(0)

    def valuation(self):
        """Exponent of the first nonzero known coefficient (None for zero to known order)."""
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return self.min_exp + i
        return None

    def normalized(self) -> "LaurentSeries":
        v = self.valuation()
        if v is None:
            return LaurentSeries(self.trunc + 1, (), self.trunc, self.var)
        return LaurentSeries(v, self.coeffs[v - self.min_exp:], self.trunc, self.var)

    def truncate(self, trunc: int) -> "LaurentSeries":
        trunc = min(trunc, self.trunc)
        return LaurentSeries(min(self.min_exp, trunc + 1), self.coeffs, trunc, self.var)

    def to_json(self) -> dict:
        def enc(c):
            if isinstance(c, Fraction):
                return fraction_str(c)
            return [float(complex(c).real), float(complex(c).imag)]

        return {"minExp": self.min_exp, "coeffs": [enc(c) for c in self.coeffs], "truncOrder": self.trunc}

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "LaurentSeries"):
        if self.var != other.var:
            raise ValueError("series in different variables")

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries(0, (other,), self.trunc, self.var)
        self._check(other)
        trunc = min(self.trunc, other.trunc)
        lo = min(self.min_exp, other.min_exp)
        if lo > trunc:
            return LaurentSeries(trunc + 1, (), trunc, self.var)
        return LaurentSeries(lo, tuple(self.coeff(k) + other.coeff(k) for k in range(lo, trunc + 1)), trunc, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.min_exp, tuple(-c for c in self.coeffs), self.trunc, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "LaurentSeries":
        return LaurentSeries(self.min_exp, tuple(c * x for x in self.coeffs), self.trunc, self.var)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        self._check(other)
        a, b = self.normalized(), other.normalized()
        # known orders: a_trunc + b_valuation and b_trunc + a_valuation
        va = a.min_exp if a.coeffs else a.trunc + 1
        vb = b.min_exp if b.coeffs else b.trunc + 1
        trunc = min(a.trunc + vb, b.trunc + va)
        lo = va + vb
        if not a.coeffs or not b.coeffs or lo > trunc:
            return LaurentSeries(trunc + 1, (), trunc, self.var)
        zero = 0 * a.coeffs[0] * b.coeffs[0]
        out = [zero] * (trunc - lo + 1)
        for i, x in enumerate(a.coeffs):
            if _is_zero(x):
                continue
            for j, y in enumerate(b.coeffs):
                k = i + j
                if k >= len(out):
                    break
                out[k] = out[k] + x * y
        return LaurentSeries(lo, tuple(out), trunc, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            rel = self.trunc - (self.valuation() or 0)
            return LaurentSeries(0, (self._one(),), rel, self.var)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def _one(self):
        return self._zero() + 1

    def inverse(self) -> "LaurentSeries":
        s = self.normalized()
        if not s.coeffs:
            raise ZeroDivisionError("series vanishes to known order")
        v = s.min_exp
        rel = s.trunc - v  # relative precision
        a0 = s.coeffs[0]
        inv0 = 1 / a0
        out = [inv0]
        for k in range(1, rel + 1):
            acc = s._zero()
            for j in range(1, k + 1):
                if j < len(s.coeffs):
                    acc = acc + s.coeffs[j] * out[k - j]
            out.append(-acc * inv0)
        return LaurentSeries(-v, tuple(out), -v + rel, self.var)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        return self.scale(1 / Fraction(other) if isinstance(other, int) else 1 / other)

    def derivative(self) -> "LaurentSeries":
        terms = {k - 1: k * self.coeff(k) for k in range(self.min_exp, self.trunc + 1) if k != 0}
        if not terms:
            return LaurentSeries(self.trunc, (), self.trunc - 1, self.var)
        lo = min(terms)
        zero = self._zero()
        return LaurentSeries(lo, tuple(terms.get(k, zero) for k in range(lo, self.trunc)), self.trunc - 1, self.var)

    def compose(self, phi: "LaurentSeries") -> "LaurentSeries":
        """Substitute ``w -> phi(w)`` where ``phi`` has valuation exactly 1."""
        phi = phi.normalized()
        if phi.min_exp != 1 or not phi.coeffs:
            raise ValueError("substituted series must have valuation 1")
        rel = phi.trunc - 1
        base = self.normalized()
        if not base.coeffs:
            return LaurentSeries(base.trunc + 1, (), base.trunc, phi.var)
        # result precision: min over known terms of (k + rel) and (trunc + 1) for the tail
        out_trunc = min(base.trunc, base.min_exp + rel)
        acc = None
        for k in range(base.min_exp, base.trunc + 1):
            c = base.coeff(k)
            if _is_zero(c):
                continue
            term = (phi ** k if k >= 0 else phi.inverse() ** (-k)).scale(c)
            acc = term if acc is None else acc + term
        if acc is None:
            return LaurentSeries(out_trunc + 1, (), out_trunc, phi.var)
        return acc.truncate(out_trunc)

    def sqrt(self) -> "LaurentSeries":
        s = self.normalized()
        if not s.coeffs:
            raise ValueError("cannot take the square root of a series vanishing to known order")
        v = s.min_exp
        if v % 2:
            raise ValueError("not a perfect square locally")
        rel = s.trunc - v
        a0 = s.coeffs[0]
        r0 = _exact_sqrt(a0)
        out = [r0]
        two_r0 = 2 * r0
        for k in range(1, rel + 1):
            acc = s.coeffs[k] if k < len(s.coeffs) else s._zero()
            for j in range(1, k):
                acc = acc - out[j] * out[k - j]
            out.append(acc / two_r0)
        return LaurentSeries(v // 2, tuple(out), v // 2 + rel, self.var)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            k = self.min_exp + i
            cs = fraction_str(c) if isinstance(c, Fraction) else repr(c)
            terms.append(f"{cs}*{self.var}^{k}")
        return (" + ".join(terms) or "0") + f" + O({self.var}^{self.trunc + 1})"


def reversion(f: LaurentSeries) -> LaurentSeries:
    """Compositional inverse ``g`` of ``f = a1*x + a2*x^2 + ...`` (a1 != 0): ``f(g(s)) = s``."""
    f = f.normalized()
    if f.min_exp != 1 or not f.coeffs:
        raise ValueError("reversion needs a series of valuation exactly 1")
    n = f.trunc
    a1 = f.coeffs[0]
    s = LaurentSeries(1, (a1 / a1,), n, f.var)
    g = s.scale(1 / a1)
    # each pass fixes one more coefficient
    for _ in range(n):
        g = g - (f.compose(g) - s).scale(1 / a1)
    return g


def series_sqrt(s: LaurentSeries) -> LaurentSeries:
    return s.sqrt()


def laurent_coeff(s: LaurentSeries, k: int):
    if k < s.min_exp and s.coeffs:
        return s._zero()
    return s.coeff(k)


def convolve_exact(a: Sequence, a_lo: int, b: Sequence, b_lo: int) -> dict:
    """Plain Laurent-polynomial product (no truncation); used as a reference."""
    out: dict = {}
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[a_lo + b_lo + i + j] = out.get(a_lo + b_lo + i + j, 0) + x * y
    return out
