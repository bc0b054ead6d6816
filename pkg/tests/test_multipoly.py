from fractions import Fraction as F

import pytest

from merohitchin.algebra.multipoly import MultiPoly

V = ("x", "y")


def test_zero_coefficients_dropped_and_equality():
    p = MultiPoly(V, {(1, 0): 1, (0, 1): 0})
    assert p.terms == {(1, 0): F(1)}
    assert p == MultiPoly.var(V, "x")
    assert MultiPoly(V).is_zero()


def test_arithmetic_and_canonical_string():
    x, y = MultiPoly.var(V, "x"), MultiPoly.var(V, "y")
    p = (x + y) ** 2 - x * x - 2 * x * y - y * y
    assert p.is_zero()
    assert (x**2 - y**3).to_str() == "-y^3 + x^2"
    assert (x * F(1, 2)).to_str() == "1/2*x"


def test_exponent_mismatch_rejected():
    with pytest.raises(ValueError):
        MultiPoly(V, {(1,): 1})


def test_embed_and_substitute():
    x = MultiPoly.var(("x",), "x")
    e = x.embed(V)
    assert e == MultiPoly.var(V, "x")
    assert e.total_degree() == 1
    assert e.used_variables() == {"x"}
