import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from merohitchin.algebra.poly import ExactPoly, discriminant
from merohitchin.hitchin import (
    DivisorP1,
    DomainError,
    HiggsFieldP1,
    LineBundleP1,
    branch_discriminant_check,
    cameral_genus,
    dimension_report,
    genericity_check,
    hitchin_map,
    leaf_base,
    random_higgs,
    spectral_coefficient_a1,
)


@pytest.mark.parametrize("fam,rank,d,dims", [
    ("A", 1, 4, (5, 1, 6)),
    ("A", 1, 5, (7, 2, 9)),
    ("A", 2, 4, (12, 4, 16)),
])
def test_dimension_examples(fam, rank, d, dims):
    rep = dimension_report(fam, rank, d)
    assert (rep.dimB, rep.dimB0, rep.dimHiggs) == dims
    assert rep.fibreDim == rep.dimHiggs - rep.dimB


@given(st.sampled_from([("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 3), ("D", 4), ("G", 2)]), st.integers(3, 8))
def test_leaf_codimension_is_rank_times_degree(t, d):
    rep = dimension_report(t[0], t[1], d)
    from merohitchin.lie import lie_info
    degs = lie_info(*t).degrees
    if all(di * (d - 2) >= d - 1 for di in degs):
        assert rep.dimB - rep.dimB0 == t[1] * d
    assert 0 <= rep.dimB0 <= rep.dimB


def test_dimension_requires_degree_three():
    with pytest.raises(DomainError):
        dimension_report("A", 1, 2)


@pytest.mark.parametrize("fam,rank,d,N,g", [("A", 1, 4, 4, 1), ("A", 1, 5, 6, 2), ("A", 2, 4, 12, None)])
def test_cameral_genus(fam, rank, d, N, g):
    c = cameral_genus(fam, rank, d)
    assert (c.N, c.genus) == (N, g)


def test_divisor_validation():
    with pytest.raises(DomainError, match="distinct"):
        DivisorP1([(0, 1), (0, 2)])
    with pytest.raises(DomainError, match="positive"):
        DivisorP1([(0, 0), (1, 3)])
    with pytest.raises(DomainError, match="minimum"):
        DivisorP1([(0, 1)])
    D = DivisorP1.from_json([["1/2", 2], [-1, 1]])
    assert D.degree == 3 and D.m == 1
    assert D.delta() == ExactPoly([F(-1, 2), 1]) ** 2 * ExactPoly([1, 1])
    assert D.to_json() == [["-1", 1], ["1/2", 2]]


def test_line_bundle_cohomology():
    assert (LineBundleP1(3).h0, LineBundleP1(3).h1) == (4, 0)
    assert (LineBundleP1(-1).h0, LineBundleP1(-1).h1) == (0, 0)
    assert (LineBundleP1(-4).h0, LineBundleP1(-4).h1) == (0, 3)


def test_higgs_field_validation():
    D = DivisorP1([(0, 4)])
    with pytest.raises(DomainError, match="degree bound"):
        HiggsFieldP1([[0, ExactPoly([0, 0, 0, 1])], [1, 0]], D)
    with pytest.raises(DomainError, match="traceless"):
        HiggsFieldP1([[1, 0], [0, 1]], D)


def test_spectral_coefficient_example():
    D = DivisorP1([(0, 4)])
    theta = HiggsFieldP1([[0, ExactPoly([-1, 0, 1])], [ExactPoly([-4, 0, 1]), 0]], D)
    b = spectral_coefficient_a1(theta)
    assert b == ExactPoly([4, 0, -5, 0, 1])
    rep = genericity_check(b, D)
    assert rep.ok and rep.rational_branch_points == (-2, -1, 1, 2)


@pytest.mark.parametrize("coeffs,D,reason", [
    ([1, 0, 1], [(0, 4)], "branch at infinity"),
    ([1, 0, -2, 0, 1], [(0, 4)], "repeated root"),
    ([0, -1, 0, 0, 1], [(0, 4)], "branch point on D"),
    ([-1, 0, 0, 0, 1], [(1, 2), (5, 2)], "branch point on D"),
])
def test_genericity_reasons(coeffs, D, reason):
    rep = genericity_check(ExactPoly(coeffs), DivisorP1(D))
    assert not rep.ok and rep.reason == reason


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]), st.integers(3, 5))
def test_hitchin_degree_bounds_and_invariance(seed, n, d):
    rng = random.Random(seed)
    D = DivisorP1([(0, d - 1), (1, 1)])
    theta = random_higgs(n, D, rng)
    bs = hitchin_map(theta)
    for i, b in enumerate(bs, start=2):
        assert b.degree <= i * D.m
    # conjugation by a unipotent constant matrix keeps the invariants
    g = [[F(int(i == j) + (i + 1 == j) * 2) for j in range(n)] for i in range(n)]
    gi = [[F(int(i == j)) * 1 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            gi[i][j] = F((-2) ** (j - i)) if j >= i else F(0)
    from merohitchin.lie import conjugate
    theta2 = HiggsFieldP1(conjugate(theta.entries, g, gi), D)
    assert hitchin_map(theta2) == bs


@settings(max_examples=40)
@given(st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_genericity_matches_discriminant_definition(cs):
    D = DivisorP1([(0, 2), (3, 2)])
    b = ExactPoly(cs)
    rep = genericity_check(b, D)
    assert branch_discriminant_check(b, D)
    if b.degree == 4:
        assert rep.ok == (discriminant(b) != 0 and b(0) != 0 and b(3) != 0)


def test_leaf_base_directions():
    D = DivisorP1([(0, 5)])
    lb = leaf_base([ExactPoly([1, 2, -3, 0, 1, 0, 1])], D)
    assert lb.dim == 2
    assert [p for _, p in lb.directions] == [ExactPoly.monomial(5), ExactPoly.monomial(6)]
    with pytest.raises(DomainError):
        leaf_base([ExactPoly.monomial(7)], D)
    lb2 = leaf_base([ExactPoly(), ExactPoly()], DivisorP1([(0, 4)]), "A", 2)
    assert lb2.dim == dimension_report("A", 2, 4).dimB0
