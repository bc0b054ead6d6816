"""Polynomial-system parser and jet-scheme equation generator.

Input grammar::

    system  := "vars" ident ("," ident)* (";" expr)* [";"]
    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("+" | "-") unary | power
    power   := atom ["^" unary]
    atom    := integer | ident | "(" expr ")"

Division is only allowed by a nonzero constant, which covers rational literals
such as ``3/4``.  Exponents must evaluate to non-negative integer constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra.multipoly import MultiPoly


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),;]))")


@dataclass
class _Tok:
    kind: str  # num, id, op, eof
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    # precompute line starts for line/column reporting
    starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(p):
        line = max(i for i, s in enumerate(starts) if s <= p)
        return line + 1, p - starts[line] + 1

    # strip comments
    text = re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if rest.strip() == "":
                line, col = where(len(text))
                toks.append(_Tok("eof", "", line, col))
                return toks
            bad = pos + len(rest) - len(rest.lstrip())
            line, col = where(bad)
            raise ParseError(f"unexpected character {text[bad]!r}", line, col)
        kind = m.lastgroup
        start = m.start(kind)
        line, col = where(start)
        toks.append(_Tok(kind, m.group(kind), line, col))
        pos = m.end()


@dataclass(frozen=True)
class AffineVariety:
    variables: tuple
    generators: tuple  # MultiPoly over ``variables``

    @property
    def zero_generators(self) -> list[int]:
        return [i for i, g in enumerate(self.generators) if g.is_zero()]

    def add_generator(self, g: MultiPoly) -> "AffineVariety":
        return AffineVariety(self.variables, self.generators + (g.embed(self.variables),))


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars: tuple = ()

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.kind != "op" or t.text != text:
            raise self.error(f"expected {text!r}", t)
        return self.take()

    @staticmethod
    def error(msg: str, t: _Tok) -> ParseError:
        if t.kind == "eof":
            return ParseError(f"syntax error: {msg} but reached end of input", t.line, t.col)
        return ParseError(f"syntax error: {msg}, found {t.text!r}", t.line, t.col)

    def system(self) -> AffineVariety:
        t = self.take()
        if t.kind != "id" or t.text != "vars":
            raise self.error("expected 'vars' declaration", t)
        names = [self.ident()]
        while self.peek().kind == "op" and self.peek().text == ",":
            self.take()
            names.append(self.ident())
        if len(set(names)) != len(names):
            raise ParseError("duplicate variable declaration", t.line, t.col)
        self.vars = tuple(names)
        gens = []
        while self.peek().kind != "eof":
            self.expect(";")
            if self.peek().kind == "eof":
                break
            gens.append(self.expr())
        return AffineVariety(self.vars, tuple(gens))

    def ident(self) -> str:
        t = self.take()
        if t.kind != "id":
            raise self.error("expected identifier", t)
        return t.text

    def expr(self) -> MultiPoly:
        acc = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> MultiPoly:
        acc = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            t = self.take()
            rhs = self.unary()
            if t.text == "*":
                acc = acc * rhs
            else:
                c = self._constant(rhs, t, "division only by a nonzero constant")
                if c == 0:
                    raise ParseError("division by zero", t.line, t.col)
                acc = acc * (1 / c)
        return acc

    def unary(self) -> MultiPoly:
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            v = self.unary()
            return -v if t.text == "-" else v
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            t = self.take()
            e = self._constant(self.unary(), t, "exponent must be a constant")
            if e.denominator != 1 or e < 0:
                raise ParseError("exponent must be a non-negative integer", t.line, t.col)
            return base ** int(e)
        return base

    def atom(self) -> MultiPoly:
        t = self.take()
        if t.kind == "num":
            return MultiPoly.constant(self.vars, int(t.text))
        if t.kind == "id":
            if t.text not in self.vars:
                raise ParseError(f"undeclared identifier {t.text!r}", t.line, t.col)
            return MultiPoly.var(self.vars, t.text)
        if t.kind == "op" and t.text == "(":
            v = self.expr()
            self.expect(")")
            return v
        raise self.error("expected a number, identifier or '('", t)

    def _constant(self, p: MultiPoly, t: _Tok, msg: str) -> Fraction:
        if any(any(e) for e in p.terms):
            raise ParseError(msg, t.line, t.col)
        return p.terms.get((0,) * len(self.vars), Fraction(0))


def parse_system(text: str) -> AffineVariety:
    return _Parser(text).system()


# jets ---------------------------------------------------------------------------

def jet_variable(name: str, k: int) -> str:
    return f"{name}_{k}"


@dataclass(frozen=True)
class JetScheme:
    variety: AffineVariety
    order: int
    variables: tuple
    equations: dict  # {(l, k): MultiPoly}, zero equations omitted

    def equation(self, l: int, k: int) -> MultiPoly:
        return self.equations.get((l, k), MultiPoly(self.variables))

    def ordered(self) -> list:
        return sorted(self.equations.items())

    def to_json(self) -> dict:
        eqs = self.ordered()
        return {
            "order": self.order,
            "variables": list(self.variables),
            "equations": [g.to_str() for _, g in eqs],
            "labels": [{"generator": l, "order": k} for (l, k), _ in eqs],
            "zeroGenerators": self.variety.zero_generators,
        }


def _series_mul(a: list, b: list, n: int, zero: MultiPoly) -> list:
    out = [zero] * (n + 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j in range(n + 1 - i):
            if not b[j].is_zero():
                out[i + j] = out[i + j] + x * b[j]
    return out


def jet_equations(V: AffineVariety, n: int) -> JetScheme:
    """Coefficients of t^k (k <= n) of ``f_l(sum_k y_{i,k} t^k)`` modulo ``t^{n+1}``."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError("jet order must be a non-negative integer")
    jvars = tuple(jet_variable(x, k) for x in V.variables for k in range(n + 1))
    zero = MultiPoly(jvars)
    arcs = [[MultiPoly.var(jvars, jet_variable(x, k)) for k in range(n + 1)] for x in V.variables]
    one = [MultiPoly.constant(jvars, 1)] + [zero] * n
    eqs = {}
    for l, f in enumerate(V.generators):
        total = [zero] * (n + 1)
        for exps, c in f.sorted_terms():
            term = one
            for arc, e in zip(arcs, exps):
                for _ in range(e):
                    term = _series_mul(term, arc, n, zero)
            total = [s + c * t for s, t in zip(total, term)]
        for k, g in enumerate(total):
            if not g.is_zero():
                eqs[(l, k)] = g
    return JetScheme(V, n, jvars, eqs)


def truncation_check(Jn: JetScheme, Jprev: JetScheme) -> bool:
    """Whether the order-(n-1) equations are exactly the low coefficients of the order-n ones."""
    if Jn.variety != Jprev.variety or Jn.order != Jprev.order + 1:
        raise ValueError("mismatched jet schemes: need the same variety at consecutive orders")
    nl = len(Jn.variety.generators)
    for l in range(nl):
        for k in range(Jn.order):
            if Jn.equation(l, k) != Jprev.equation(l, k).embed(Jn.variables):
                return False
    return True


def corrupt(J: JetScheme, key: Sequence[int] | None = None) -> JetScheme:
    """Copy of ``J`` with one low-order equation perturbed (negative control)."""
    keys = [k for k in sorted(J.equations) if k[1] < J.order] if key is None else [tuple(key)]
    eqs = dict(J.equations)
    if keys:
        eqs[keys[0]] = eqs[keys[0]] + 1
    else:
        eqs[(0, 0)] = MultiPoly.constant(J.variables, 1)
    return JetScheme(J.variety, J.order, J.variables, eqs)


def random_system(rng, nvars: int = 2, max_degree: int = 3, ngens: int = 2, bound: int = 3) -> AffineVariety:
    names = tuple("xyzuvw"[:nvars])
    gens = []
    for _ in range(ngens):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            exps = [0] * nvars
            for _ in range(rng.randint(0, max_degree)):
                exps[rng.randrange(nvars)] += 1
            terms[tuple(exps)] = rng.choice([c for c in range(-bound, bound + 1) if c])
        gens.append(MultiPoly(names, terms))
    return AffineVariety(names, tuple(gens))
