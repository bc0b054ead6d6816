from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from merohitchin.algebra.poly import ExactPoly
from merohitchin.algebra.series import (
    InsufficientPrecision,
    LaurentSeries,
    convolve_exact,
    laurent_coeff,
    reversion,
    series_sqrt,
)

from strategies import small_fracs


def S(lo, coeffs, trunc):
    return LaurentSeries(lo, tuple(F(c) for c in coeffs), trunc)


def test_sqrt_examples():
    assert series_sqrt(S(0, [1, 2, 1], 6)).coeffs[:3] == (1, 1, 0)
    assert series_sqrt(S(0, [1], 4)).coeffs[0] == 1
    r = series_sqrt(S(2, [4], 6))
    assert r.min_exp == 1 and r.coeffs[0] == 2
    with pytest.raises(ValueError, match="not a perfect square locally"):
        series_sqrt(S(1, [1, 1], 5))


def test_laurent_coeff_examples():
    s = S(-2, [1, 0, 3, 1], 1)
    assert laurent_coeff(s, -2) == 1
    assert laurent_coeff(s, -1) == 0
    assert laurent_coeff(s, 0) == 3
    with pytest.raises(InsufficientPrecision, match="only known to order"):
        laurent_coeff(s, 2)


def test_sqrt_composition_matches_direct_substitution():
    # sqrt(1 + w) composed with w -> w + w^2, constant and low coefficients
    r = series_sqrt(S(0, [1, 1], 6))
    phi = S(1, [1, 1], 6)
    comp = r.compose(phi)
    direct = series_sqrt(S(0, [1, 1, 1], 6))
    for k in range(0, 6):
        assert laurent_coeff(comp, k) == laurent_coeff(direct, k)


def test_inverse_and_division():
    s = S(-1, [2, 1], 6)
    one = s * s.inverse()
    assert laurent_coeff(one, 0) == 1
    assert all(laurent_coeff(one, k) == 0 for k in range(1, one.trunc + 1))


def test_reversion_round_trip():
    f = S(1, [2, 3, -1, 5], 8)
    g = reversion(f)
    fg = f.compose(g)
    assert laurent_coeff(fg, 1) == 1
    assert all(laurent_coeff(fg, k) == 0 for k in range(2, fg.trunc + 1))
    with pytest.raises(ValueError):
        reversion(S(0, [1, 1], 4))


def test_precision_tracking_in_products():
    a = S(-2, [1, 1], 3)
    b = S(1, [1], 2)
    p = a * b
    assert p.trunc == min(3 + 1, 2 - 2)
    with pytest.raises(InsufficientPrecision):
        p.coeff(p.trunc + 1)


def test_json_form():
    assert S(-1, [F(1, 2), 0], 2).to_json() == {"minExp": -1, "coeffs": ["1/2", "0"], "truncOrder": 2}


def test_pow_zero_and_powers():
    s = S(0, [1, 1], 5)
    assert (s ** 0).coeff(0) == 1
    cube = s ** 3
    assert [cube.coeff(k) for k in range(4)] == [1, 3, 3, 1]


def test_from_poly_and_derivative():
    s = LaurentSeries.from_poly(ExactPoly([1, 2, 3]), 4)
    d = s.derivative()
    assert [d.coeff(k) for k in range(3)] == [2, 6, 0]




@given(st.lists(small_fracs, min_size=1, max_size=6), st.integers(-2, 2),
       st.lists(small_fracs, min_size=1, max_size=6), st.integers(-2, 2))
def test_product_agrees_with_exact_convolution(a, alo, b, blo):
    ta, tb = alo + len(a) - 1, blo + len(b) - 1
    p = LaurentSeries(alo, tuple(a), ta) * LaurentSeries(blo, tuple(b), tb)
    ref = convolve_exact(a, alo, b, blo)
    for k in range(alo + blo, p.trunc + 1):
        assert p.coeff(k) == ref.get(k, 0)


@given(st.lists(small_fracs, min_size=1, max_size=6).filter(lambda c: c[0] != 0), st.integers(0, 2))
def test_sqrt_squares_back(coeffs, half):
    # square a unit series first so an exact rational square root exists
    r = LaurentSeries(half, tuple(coeffs), half + 6)
    s = r * r
    q = series_sqrt(s)
    back = q * q
    for k in range(s.min_exp, min(back.trunc, s.trunc) + 1):
        assert back.coeff(k) == s.coeff(k)


def test_float_coefficients():
    s = LaurentSeries(0, (1 + 0j, 0.5j), 4)
    q = (s * s).sqrt()
    assert abs(q.coeff(1) - 0.5j) < 1e-15
