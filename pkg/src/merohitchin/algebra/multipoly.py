"""Sparse multivariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .poly import fraction_str, to_fraction


class MultiPoly:
    """Immutable sparse polynomial: ``{exponent tuple: Fraction}`` over named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.vars = tuple(variables)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.vars):
                raise ValueError("exponent vector does not match variable count")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent in polynomial")
            c = to_fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        i = list(variables).index(name)
        exps = tuple(int(j == i) for j in range(len(variables)))
        return cls(variables, {exps: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def used_variables(self) -> set[str]:
        return {v for e in self.terms for v, k in zip(self.vars, e) if k}

    def _same(self, other: "MultiPoly"):
        if self.vars != other.vars:
            raise ValueError("polynomials over different variable lists")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._same(other)
            return other
        return MultiPoly.constant(self.vars, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def substitute(self, images: Sequence) -> object:
        """Evaluate with variable ``i`` replaced by ``images[i]`` (any ring elements)."""
        acc = None
        for e, c in self.sorted_terms():
            term = c
            for img, k in zip(images, e):
                if k:
                    term = term * img ** k
            acc = term if acc is None else acc + term
        return acc

    def rename(self, variables: Sequence[str]) -> "MultiPoly":
        return MultiPoly(variables, self.terms)

    def embed(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express over a superset of variables (by name)."""
        idx = [list(variables).index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for i, k in zip(idx, e):
                ne[i] = k
            out[tuple(ne)] = c
        return MultiPoly(variables, out)

    def sorted_terms(self) -> list:
        # total degree descending, then lex descending
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0])))

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{fraction_str(mag)}*{mono}"
            else:
                body = fraction_str(mag)
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MultiPoly({self.to_str()!r})"

