"""Simple Lie-type data tables and characteristic-polynomial invariants (type A)."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

from .algebra.poly import ExactPoly, discriminant_coeffs


@dataclass(frozen=True)
class SimpleTypeInfo:
    family: str
    rank: int
    dim: int
    degrees: tuple
    num_roots: int
    weyl_order: int

    def to_json(self) -> dict:
        d = asdict(self)
        return {
            "family": d["family"],
            "rank": d["rank"],
            "dim": d["dim"],
            "degrees": list(d["degrees"]),
            "numRoots": d["num_roots"],
            "weylOrder": d["weyl_order"],
        }


_EXCEPTIONAL = {
    ("E", 6): (78, (2, 5, 6, 8, 9, 12), 72, 51840),
    ("E", 7): (133, (2, 6, 8, 10, 12, 14, 18), 126, 2903040),
    ("E", 8): (248, (2, 8, 12, 14, 18, 20, 24, 30), 240, 696729600),
    ("F", 4): (52, (2, 6, 8, 12), 48, 1152),
    ("G", 2): (14, (2, 6), 12, 12),
}

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


def lie_info(family: str, rank: int) -> SimpleTypeInfo:
    """Table entry for the simple type ``family_rank``.

    B1, C1 and D1, D2 are excluded (they are A1 or not simple); D3 = A3 and
    B2 = C2 are accepted with their own labels.
    """
    family = str(family).upper()
    if isinstance(rank, bool) or not isinstance(rank, int):
        raise ValueError("rank must be an integer")
    l = rank
    if family in _MIN_RANK:
        if l < _MIN_RANK[family]:
            raise ValueError(f"invalid simple type {family}{l}: rank must be >= {_MIN_RANK[family]}")
        if family == "A":
            info = (l * (l + 2), tuple(range(2, l + 2)), l * (l + 1), math.factorial(l + 1))
        elif family in "BC":
            info = (l * (2 * l + 1), tuple(range(2, 2 * l + 1, 2)), 2 * l * l, 2 ** l * math.factorial(l))
        else:
            degs = tuple(sorted(list(range(2, 2 * l - 1, 2)) + [l]))
            info = (l * (2 * l - 1), degs, 2 * l * (l - 1), 2 ** (l - 1) * math.factorial(l))
    elif (family, l) in _EXCEPTIONAL:
        info = _EXCEPTIONAL[(family, l)]
    else:
        raise ValueError(f"invalid simple type {family}{l}")
    dim, degs, nroots, weyl = info
    out = SimpleTypeInfo(family, l, dim, degs, nroots, weyl)
    # table self-consistency
    assert sum(2 * d - 1 for d in degs) == dim
    assert nroots == dim - l
    assert math.prod(degs) == weyl
    return out


# traceless matrices -----------------------------------------------------------

def _as_poly_matrix(M: Sequence[Sequence]) -> list[list[ExactPoly]]:
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    return [[e if isinstance(e, ExactPoly) else ExactPoly([e]) for e in row] for row in M]


def trace(M) -> ExactPoly:
    P = _as_poly_matrix(M)
    return sum((P[i][i] for i in range(len(P))), ExactPoly())


def _check_traceless(P):
    if trace(P):
        raise ValueError("not traceless")


def charpoly_coeffs(M) -> list[ExactPoly]:
    """Coefficients ``[c_0=1, c_1, ..., c_n]`` of ``det(lambda - M) = sum c_k lambda^{n-k}``.

    Faddeev-LeVerrier over Q[z]; the divisions by k are by rationals so stay exact.
    """
    P = _as_poly_matrix(M)
    n = len(P)
    cs = [ExactPoly([1])]
    Mk = [[ExactPoly() for _ in range(n)] for _ in range(n)]  # M_0 = 0
    for k in range(1, n + 1):
        # M_k = M (M_{k-1} + c_{k-1} I)
        prev = [[Mk[i][j] + (cs[-1] if i == j else ExactPoly()) for j in range(n)] for i in range(n)]
        Mk = [
            [sum((P[i][t] * prev[t][j] for t in range(n)), ExactPoly()) for j in range(n)]
            for i in range(n)
        ]
        tr = sum((Mk[i][i] for i in range(n)), ExactPoly())
        cs.append(tr * Fraction(-1, k))
    return cs


def charpoly_invariants(M) -> list[ExactPoly]:
    """``[p_2, ..., p_n]`` with ``det(lambda - M) = lambda^n + p_2 lambda^{n-2} + ... + p_n``."""
    P = _as_poly_matrix(M)
    _check_traceless(P)
    return charpoly_coeffs(P)[2:]


def charpoly_discriminant(M) -> ExactPoly:
    """Discriminant in lambda of ``det(lambda - M)``, as a polynomial in z.

    Normalised as ``(-1)^{n(n-1)/2} res(f, f')`` for the monic f, so that it equals
    ``prod_{i<j} (a_i - a_j)^2`` on diagonal matrices; for n = 2 it is ``-4 p_2``.
    """
    P = _as_poly_matrix(M)
    _check_traceless(P)
    n = len(P)
    if n < 2:
        return ExactPoly()
    cs = charpoly_coeffs(P)
    f = list(reversed(cs))  # low-to-high in lambda
    return discriminant_coeffs(f, ExactPoly(), ExactPoly([1]))


def conjugate(M, g: Sequence[Sequence[Fraction]], g_inv: Sequence[Sequence[Fraction]]):
    """``g M g^{-1}`` for a constant rational ``g``."""
    P = _as_poly_matrix(M)
    n = len(P)
    GM = [[sum((P[t][j] * g[i][t] for t in range(n)), ExactPoly()) for j in range(n)] for i in range(n)]
    return [[sum((GM[i][t] * g_inv[t][j] for t in range(n)), ExactPoly()) for j in range(n)] for i in range(n)]
