import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from merohitchin.algebra.poly import ExactPoly
from merohitchin.algebra.series import LaurentSeries
from merohitchin.cubic import (
    CameralDataA1,
    cubic_eval,
    cubic_eval_by_roots,
    cubic_tensor,
    random_generic_b,
    res2_at_branch,
    res2_by_series,
    tangent_to_form,
)
from merohitchin.hitchin import DivisorP1, DomainError
from merohitchin.periods.roots import complex_roots

D4 = DivisorP1([(0, 4)])
D5 = DivisorP1([(0, 5)])
REF = CameralDataA1(ExactPoly([4, 0, -5, 0, 1]), D4)
ONE = ExactPoly.constant(1)
Z = ExactPoly.monomial


def test_tangent_to_form_examples():
    assert tangent_to_form(Z(4), REF).u == ExactPoly([F(1, 2)])
    data5 = CameralDataA1(ExactPoly([1, 2, -3, 0, 1, 0, 1]), D5)
    assert tangent_to_form(Z(6), data5).u == ExactPoly([0, F(1, 2)])
    with pytest.raises(DomainError, match="not tangent to leaf"):
        tangent_to_form(Z(3), REF)


def test_branch_residues_and_reference_value():
    assert res2_at_branch(REF, Z(4), ONE, ONE, F(1)) == F(1, 9)
    assert res2_at_branch(REF, Z(4), ONE, ONE, F(2)) == F(4, 9)
    assert cubic_eval(REF, Z(4), ONE, ONE) == F(5, 9)
    assert cubic_tensor(REF).entries == (((F(10, 9),),),)
    with pytest.raises(DomainError, match="not a branch point"):
        res2_at_branch(REF, Z(4), ONE, ONE, F(3))


def test_symmetric_quartic_gives_zero():
    data = CameralDataA1(ExactPoly([-1, 0, 0, 0, 1]), D4)
    assert cubic_eval(data, Z(4), ONE, ONE) == 0


@pytest.mark.parametrize("c", [F(-2), F(-1), F(1), F(2)])
def test_series_route_matches_closed_form_exactly(c):
    closed = res2_at_branch(REF, Z(4), ONE, ONE, c)
    assert res2_by_series(REF, Z(4), ONE, ONE, c) == closed
    phi = LaurentSeries(1, (F(1), F(1)), 12)
    assert res2_by_series(REF, Z(4), ONE, ONE, c, reparam=phi) == closed
    psi = LaurentSeries(1, (F(3), F(0), F(-2)), 12)
    assert res2_by_series(REF, Z(4), ONE, ONE, c, reparam=psi) == closed


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.sampled_from([5, 6]))
def test_float_routes_agree(seed, d):
    rng = random.Random(seed)
    D = DivisorP1([(0, d)])
    data = CameralDataA1(random_generic_b(D, rng), D)
    g = data.genus
    bdot, u, v = data.leaf_direction(rng.randrange(g)), Z(rng.randrange(g)), Z(rng.randrange(g))
    exact = complex(cubic_eval(data, bdot, u, v))
    fl = cubic_eval(data, bdot, u, v, mode="float")
    by_roots = cubic_eval_by_roots(data, bdot, u, v, complex_roots(data.b))
    scale = max(abs(exact), 1.0)
    assert abs(fl - exact) <= 1e-10 * scale
    assert abs(by_roots - exact) <= 1e-10 * scale


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.integers(-3, 3), st.integers(-3, 3))
def test_linearity_in_direction_and_forms(seed, s, t):
    rng = random.Random(seed)
    data = CameralDataA1(random_generic_b(D5, rng), D5)
    e0, e1 = data.leaf_direction(0), data.leaf_direction(1)
    u0, u1 = Z(0), Z(1)
    lhs = cubic_eval(data, e0 * s + e1 * t, u0 * s + u1, u1)
    rhs = (s * s * cubic_eval(data, e0, u0, u1) + s * cubic_eval(data, e0, u1, u1)
           + t * s * cubic_eval(data, e1, u0, u1) + t * cubic_eval(data, e1, u1, u1))
    assert lhs == rhs


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_scaling_b_scales_cubic_by_inverse_square(seed, lam):
    rng = random.Random(seed)
    data = CameralDataA1(random_generic_b(D5, rng), D5)
    scaled = CameralDataA1(data.b * lam, D5)
    for i in range(2):
        v = cubic_eval(data, data.leaf_direction(i), ONE, Z(1))
        assert cubic_eval(scaled, scaled.leaf_direction(i), ONE, Z(1)) == v / lam**2


@settings(max_examples=10)
@given(st.integers(0, 10**6), st.sampled_from([5, 6]))
def test_tensor_symmetric(seed, d):
    D = DivisorP1([(0, d)])
    data = CameralDataA1(random_generic_b(D, random.Random(seed)), D)
    T = cubic_tensor(data)
    assert T.is_symmetric()
    assert cubic_tensor(data, mode="float").genus == data.genus


def test_error_messages():
    with pytest.raises(DomainError, match="not generic: repeated root"):
        CameralDataA1(ExactPoly([1, 0, -2, 0, 1]), D4)
    data = CameralDataA1(ExactPoly([1, 2, -3, 0, 1, 0, 1]), D5)
    with pytest.raises(DomainError, match="exceeds genus"):
        cubic_eval(data, Z(5), Z(2), ONE)
    with pytest.raises(DomainError, match="direction degree exceeds"):
        cubic_eval(data, Z(7), ONE, ONE)
    with pytest.raises(ValueError, match="unknown mode"):
        cubic_eval(data, Z(5), ONE, ONE, mode="fast")
