import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import ellipk

from merohitchin.algebra.poly import ExactPoly
from merohitchin.periods.riemann import (
    DegenerateConfiguration,
    PeriodConfig,
    modular_distance,
    period_matrix,
    sl2z_reduce,
)


def from_roots(rs):
    p = ExactPoly([1])
    for r in rs:
        p = p * ExactPoly([-F(r), 1])
    return p


def interval_vectors(rs, g):
    """2 * int over [r_i, r_{i+1}] of z^j dz / sqrt|b|, via z = mid + h cos t (real roots, lc 1)."""
    out = []
    for i in range(len(rs) - 1):
        lo, hi = rs[i], rs[i + 1]
        mid, h = (lo + hi) / 2, (hi - lo) / 2

        def f(t, j):
            z = mid + h * math.cos(t)
            rest = math.prod(abs(z - r) for k, r in enumerate(rs) if k not in (i, i + 1))
            return z**j / math.sqrt(rest)

        out.append(np.array([2 * quad(f, 0, math.pi, args=(j,), epsabs=1e-13, epsrel=1e-13, limit=200)[0]
                             for j in range(g)]))
    return out


def lattice_coordinates(vec, gens):
    """Real coordinates of a complex g-vector in the basis ``gens`` of the period lattice."""
    M = np.array([np.concatenate([v.real, v.imag]) for v in gens]).T
    return np.linalg.solve(M, np.concatenate([vec.real, vec.imag]))


@pytest.mark.parametrize("rs", [[-2, -1, 1, 2], [-3, 0, F(1, 2), 5], [-3, -2, -1, 1, 2, 4], [-4, -1, 0, 1, 3, 7]])
def test_periods_lie_in_the_interval_lattice(rs):
    """Every computed a- and b-period is an integer combination of real-interval periods."""
    g = len(rs) // 2 - 1
    R = period_matrix(from_roots(rs))
    J = interval_vectors([float(r) for r in rs], g)
    # with lc > 0, sqrt(b) is imaginary on even gaps and real on odd ones
    gens = [(1j if i % 2 == 0 else 1) * J[i] for i in range(2 * g)]
    for M in (R.a_periods, R.b_periods):
        for k in range(g):
            c = lattice_coordinates(M[:, k], gens)
            assert np.max(np.abs(c - np.round(c))) < 1e-9


def test_legendre_image_gives_iKprime_over_K():
    # roots {-1, -1/2, 0, 1/2} have the cross-ratio of the Legendre curve with k = 1/2
    R = period_matrix(from_roots([-1, F(-1, 2), 0, F(1, 2)]))
    k = 0.5
    expected = 1j * ellipk(1 - k * k) / ellipk(k * k)
    assert modular_distance(complex(R.tau[0, 0]), expected) < 1e-8


def test_product_quartic_gives_twice_the_ratio():
    # (1 - z^2)(1 - z^2/4): its lattice is generated by 2K and iK', so tau ~ 2iK/K'
    R = period_matrix(ExactPoly([1, 0, -1]) * ExactPoly([1, 0, F(-1, 4)]))
    k = 0.5
    expected = 2j * ellipk(k * k) / ellipk(1 - k * k)
    assert modular_distance(complex(R.tau[0, 0]), expected) < 1e-8


def test_square_lattice():
    R = period_matrix(ExactPoly([-1, 0, 0, 0, 1]))
    assert modular_distance(complex(R.tau[0, 0]), 1j) < 1e-10


SEXTICS = [ExactPoly([1, 2, -3, 0, 1, 0, 1]), from_roots([-3, -2, -1, 1, 2, 4]), ExactPoly([-1, 0, 0, 0, 0, 0, 1]),
           ExactPoly([2, -1, 0, 3, 1, -2, 1])]


@pytest.mark.parametrize("b", SEXTICS, ids=lambda b: b.to_str())
def test_riemann_bilinear_relations(b):
    R = period_matrix(b)
    tau = R.tau
    assert np.max(np.abs(tau - tau.T)) <= 1e-10 * max(1, np.max(np.abs(tau)))
    assert np.all(np.linalg.eigvalsh(tau.imag) > 0)


@pytest.mark.parametrize("b", SEXTICS[:2] + [from_roots([-2, -1, 1, 3])], ids=lambda b: b.to_str())
def test_node_doubling_converged(b):
    base = period_matrix(b)
    fine = period_matrix(b, PeriodConfig(nodes=64, trap_nodes=1024), basis=base.basis)
    assert np.max(np.abs(base.tau - fine.tau)) <= 1e-10


@settings(max_examples=10)
@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_tau_independent_of_form_basis(c):
    M = [[F(c[0]), F(c[1])], [F(c[2]), F(c[3])]]
    if M[0][0] * M[1][1] - M[0][1] * M[1][0] == 0:
        return
    b = SEXTICS[0]
    base = period_matrix(b)
    forms = [ExactPoly([M[0][0], M[0][1]]), ExactPoly([M[1][0], M[1][1]])]
    other = period_matrix(b, forms=forms, basis=base.basis)
    assert np.max(np.abs(other.tau - base.tau)) <= 1e-9


def test_scaling_b_keeps_tau():
    b = SEXTICS[0]
    t1 = period_matrix(b).tau
    t2 = period_matrix(b * 5).tau
    assert np.max(np.abs(t1 - t2)) <= 1e-10


def test_rejections():
    with pytest.raises(ValueError, match="genus 1 and 2"):
        period_matrix(ExactPoly([1, 0, 0, 0, 0, 0, 0, 0, 1]))
    with pytest.raises(ValueError, match="squarefree"):
        period_matrix(ExactPoly([1, 0, -2, 0, 1]))
    with pytest.raises(DegenerateConfiguration, match="too degenerate"):
        period_matrix(from_roots([-1, 1, 1 + F(1, 10**5), 2]))


def test_json_shape():
    j = period_matrix(SEXTICS[0]).to_json()
    assert j["genus"] == 2 and len(j["tau"]) == 2 and len(j["bPaths"]) == 2
    assert set(j["tau"][0][0]) == {"re", "im"}


@given(st.floats(-3, 3), st.floats(0.05, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_sl2z_reduction_is_invariant(x, y, a, b, c):
    tau = complex(x, y)
    # any matrix [[a, b], [c, d]] with ad - bc = 1 built from generators
    t2 = tau + a
    t2 = -1 / t2 + b
    t2 = -1 / t2 + c
    if t2.imag < 1e-6:
        return
    assert modular_distance(tau, t2) < 1e-7 * max(1.0, abs(sl2z_reduce(tau)))
    r = sl2z_reduce(tau)
    assert abs(r.real) <= 0.5 + 1e-12 and abs(r) >= 1 - 1e-12
