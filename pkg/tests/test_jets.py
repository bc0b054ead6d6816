import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from merohitchin.algebra.multipoly import MultiPoly
from merohitchin.jets import (
    ParseError,
    corrupt,
    jet_equations,
    parse_system,
    random_system,
    truncation_check,
)

CUSP = "vars x, y; x^2 - y^3"


def test_cusp_jets():
    J = jet_equations(parse_system(CUSP), 1)
    assert [g.to_str() for _, g in J.ordered()] == ["-y_0^3 + x_0^2", "-3*y_0^2*y_1 + 2*x_0*x_1"]
    assert J.variables == ("x_0", "x_1", "y_0", "y_1")


def test_order_zero_is_renaming():
    V = parse_system("vars x, y; x*y - 1; x^3 + 2/3*y")
    J = jet_equations(V, 0)
    assert [g.to_str() for _, g in J.ordered()] == ["x_0*y_0 - 1", "x_0^3 + 2/3*y_0"]


def test_zero_generator_reported_and_omitted():
    V = parse_system("vars x, y; (x+y)^2 - x^2 - 2*x*y - y^2; x")
    assert V.zero_generators == [0]
    J = jet_equations(V, 2)
    assert J.to_json()["zeroGenerators"] == [0]
    assert all(l == 1 for (l, _k) in J.equations)


def test_comments_and_trailing_semicolon():
    V = parse_system("# cusp\nvars x,y;\n x^2 - y^3; # done\n")
    assert len(V.generators) == 1


@pytest.mark.parametrize("text,line,col", [
    ("vars x; x +", 1, 12),
    ("vars x;\n x $ 2", 2, 4),
    ("vars x; y", 1, 9),
    ("vars x; x^y", 1, 11),
    ("vars x; x/x", 1, 10),
    ("x; x", 1, 1),
])
def test_parse_errors_report_position(text, line, col):
    with pytest.raises(ParseError) as ei:
        parse_system(text)
    assert (ei.value.line, ei.value.col) == (line, col)


def test_negative_order_rejected():
    with pytest.raises(ValueError):
        jet_equations(parse_system(CUSP), -1)


@settings(max_examples=30)
@given(st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 3))
def test_truncation_and_negative_control(seed, nvars, n):
    V = random_system(random.Random(seed), nvars=nvars)
    Jn, Jp = jet_equations(V, n), jet_equations(V, n - 1)
    assert truncation_check(Jn, Jp)
    assert len(Jn.variables) == nvars * (n + 1)
    assert not truncation_check(corrupt(Jn), Jp)


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_functorial_in_the_ideal(seed):
    # adding a sum of generators adds the sum of their jet equations
    V = random_system(random.Random(seed), nvars=2, ngens=2)
    f, g = V.generators
    W = V.add_generator(f + g)
    J = jet_equations(W, 2)
    for k in range(3):
        assert J.equation(2, k) == J.equation(0, k) + J.equation(1, k)


def test_constant_arc_on_the_variety_solves_every_equation():
    V = parse_system(CUSP)
    J = jet_equations(V, 2)
    point = {"x_0": 1, "y_0": 1}
    images = [point.get(v, 0) for v in J.variables]
    for eq in J.equations.values():
        assert eq.substitute(images) == 0
