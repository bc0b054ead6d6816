import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from merohitchin.algebra.linalg import det, rank
from merohitchin.algebra.poly import ExactPoly
from merohitchin.cech import (
    CocycleError,
    DualCocycle,
    MatLaurent,
    TangentCocycle,
    dual_basis,
    dual_coboundary,
    duality_pair,
    gram_matrix,
    hyper_dims,
    line_cohomology,
    poisson_matrix,
    psi_matrix,
    random_dual_combination,
    residue_class,
    sl_basis,
    tangent_basis,
    tangent_coboundary,
)
from merohitchin.hitchin import DivisorP1, HiggsFieldP1, dimension_report, random_higgs


def zero_field(D):
    return HiggsFieldP1([[0, 0], [0, 0]], DivisorP1(D))


def test_line_cohomology():
    assert line_cohomology(2) == (3, 0)
    assert line_cohomology(-1) == (0, 0)
    assert line_cohomology(-3) == (0, 2)


def test_residue_normalisation():
    # dz/z on the overlap represents 1
    assert residue_class({-1: F(1)}) == 1
    assert residue_class({-2: F(5), 0: F(3)}) == 0


@pytest.mark.parametrize("theta,D,dims", [
    ([[0, 0], [0, 0]], [(0, 4)], (3, 9, 0)),
    ([[0, 0], [0, 0]], [(0, 3)], (3, 6, 0)),
    ([[ExactPoly([0, 1]), 0], [0, ExactPoly([0, -1])]], [(0, 1), (1, 1), (2, 1)], (1, 4, 0)),
    ([[1, 0], [0, -1]], [(0, 1), (1, 1)], (1, 1, 0)),
])
def test_hypercohomology_examples(theta, D, dims):
    rep = hyper_dims(HiggsFieldP1(theta, DivisorP1(D)))
    assert (rep.h0, rep.h1, rep.h2) == dims


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.integers(3, 5))
def test_generic_field_has_expected_tangent_dimension(seed, d):
    theta = random_higgs(2, DivisorP1([(0, d)]), random.Random(seed))
    rep = hyper_dims(theta)
    assert rep.euler_neg == 3 * (d - 2)
    if rep.h0 == 0:
        assert rep.h1 == 3 * (d - 2)


def _theta(seed, d=4):
    return random_higgs(2, DivisorP1([(0, d - 2), (1, 1), (-1, 1)]), random.Random(seed))


@settings(max_examples=10)
@given(st.integers(0, 10**6))
def test_pairing_ignores_coboundaries(seed):
    theta = _theta(seed)
    rng = random.Random(seed + 1)
    tb, db = tangent_basis(theta), dual_basis(theta)
    n = 2
    f0 = MatLaurent(n, {k: B for k, B in zip((0, 1, 2), rng.sample(sl_basis(n), 3))})
    f1 = MatLaurent(n, {k: B for k, B in zip((0, -1, -3), rng.sample(sl_basis(n), 3))})
    cob = tangent_coboundary(theta, f0, f1)
    beta = random_dual_combination(db, rng)
    assert duality_pair(theta, cob, beta) == 0
    alpha = tb.cocycles[0]
    assert duality_pair(theta, alpha + cob, beta) == duality_pair(theta, alpha, beta)
    d = theta.D.degree
    phi0 = MatLaurent(n, {1: sl_basis(n)[0]})
    phi1 = MatLaurent(n, {-d: sl_basis(n)[2], -d - 1: sl_basis(n)[1]})
    dcob = dual_coboundary(theta, phi0, phi1)
    assert duality_pair(theta, alpha, dcob) == 0


@pytest.mark.parametrize("d,expected_rank", [(4, 2), (5, 4)])
def test_poisson_rank_matches_leaf(d, expected_rank):
    theta = random_higgs(2, DivisorP1([(0, d)]), random.Random(7))
    assert rank(psi_matrix(theta)) == expected_rank == 2 * dimension_report("A", 1, d).dimB0


@settings(max_examples=8)
@given(st.integers(0, 10**6))
def test_gram_nonsingular_and_poisson_skew(seed):
    theta = _theta(seed)
    if hyper_dims(theta).h0:
        return
    G = gram_matrix(theta)
    assert det(G) != 0
    P = poisson_matrix(theta)
    assert all(P[i][j] == -P[j][i] for i in range(len(P)) for j in range(len(P)))


def test_cocycle_errors():
    theta = zero_field([(0, 4)])
    n = 2
    E = sl_basis(n)[0]
    bad_trace = MatLaurent(n, {0: ((F(1), F(0)), (F(0), F(0)))})
    with pytest.raises(CocycleError, match="not traceless"):
        duality_pair(theta, TangentCocycle(bad_trace, MatLaurent(n), MatLaurent(n)), dual_basis(theta)[0])
    with pytest.raises(CocycleError, match="t0 is not regular"):
        duality_pair(theta, TangentCocycle(MatLaurent(n), MatLaurent(n, {-1: E}), MatLaurent(n)),
                     dual_basis(theta)[0])
    with pytest.raises(CocycleError, match="cocycle condition"):
        duality_pair(theta, TangentCocycle(MatLaurent(n), MatLaurent(n, {1: E}), MatLaurent(n)),
                     dual_basis(theta)[0])
    good = tangent_basis(theta).cocycles[0]
    with pytest.raises(CocycleError, match="tau1 is not regular"):
        duality_pair(theta, good, DualCocycle(MatLaurent(n), MatLaurent(n), MatLaurent(n, {-1: E})))


def test_mat_laurent_json_round_trip():
    X = MatLaurent(2, {-2: sl_basis(2)[0], 3: sl_basis(2)[2]})
    assert MatLaurent.from_json(2, X.to_json()) == X
