"""Exact linear algebra over the rationals (and fraction-free determinants over
integral domains with exact division)."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

Matrix = list[list[Fraction]]


def bareiss_det(M: Sequence[Sequence], div: Callable, zero, one):
    """Fraction-free Gaussian elimination determinant (Bareiss).

    ``div(a, b)`` must be exact division in the coefficient ring.
    """
    n = len(M)
    if n == 0:
        return one
    A = [list(row) for row in M]
    sign = 1
    prev = one
    for k in range(n - 1):
        if not A[k][k]:
            piv = next((i for i in range(k + 1, n) if A[i][k]), None)
            if piv is None:
                return zero
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = div(row_i[j] * akk - aik * row_k[j], prev)
        prev = akk
    det = A[n - 1][n - 1]
    return det if sign > 0 else -det


def det(M: Sequence[Sequence[Fraction]]) -> Fraction:
    return bareiss_det(M, lambda a, b: a / b, Fraction(0), Fraction(1))


def rref(M: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns."""
    A = [[Fraction(x) for x in row] for row in M]
    if not A:
        return A, []
    rows, cols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(M)[1])


def nullspace(M: Sequence[Sequence[Fraction]], ncols: int | None = None) -> Matrix:
    """Basis (list of column vectors) of ``{x : M x = 0}``."""
    if not M:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, piv = rref(M)
    n = len(M[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in enumerate(piv):
            v[p] = -R[r][f]
        basis.append(v)
    return basis


def solve(M: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """One solution of ``M x = b``; raises ``ValueError`` if inconsistent."""
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(M, b)]
    R, piv = rref(aug)
    n = len(M[0])
    if n in piv:
        raise ValueError("inconsistent linear system")
    x = [Fraction(0)] * n
    for r, p in enumerate(piv):
        x[p] = R[r][n]
    return x


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    return [[sum((a * b for a, b in zip(row, col)), 0 * row[0]) for col in zip(*B)] for row in A]


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*A)]


def inverse(A: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(A)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]
