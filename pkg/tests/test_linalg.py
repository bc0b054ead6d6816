from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from merohitchin.algebra.linalg import det, inverse, matmul, nullspace, rank, rref, solve, transpose

from strategies import small_fracs


def square(n):
    return st.lists(st.lists(small_fracs, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(square))
def test_det_matches_sympy(M):
    expected = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in M]).det()
    assert sympy.Rational(str(det(M))) == expected


@given(st.integers(1, 4).flatmap(square))
def test_inverse_when_invertible(M):
    if det(M) == 0:
        with pytest.raises(Exception):
            inverse(M)
        return
    n = len(M)
    I = [[F(int(i == j)) for j in range(n)] for i in range(n)]
    assert matmul(M, inverse(M)) == I


@given(st.lists(st.lists(small_fracs, min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_nullity(M):
    N = nullspace(M, 4)
    assert rank(M) + len(N) == 4
    for v in N:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)


def test_rref_pivots():
    R, piv = rref([[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(1)]])
    assert piv == [0, 1]


def test_solve_and_inconsistency():
    M = [[F(1), F(1)], [F(1), F(-1)]]
    assert solve(M, [F(3), F(1)]) == [2, 1]
    with pytest.raises(ValueError, match="inconsistent"):
        solve([[F(1), F(1)], [F(2), F(2)]], [F(1), F(3)])


def test_transpose():
    assert transpose([[1, 2, 3]]) == [[1], [2], [3]]
