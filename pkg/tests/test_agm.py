import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import ellipk

from merohitchin.periods.agm import agm, agm_elliptic_K


def test_fixed_values():
    assert agm(1.0, 1.0) == 1.0
    assert agm_elliptic_K(0.0) == pytest.approx(math.pi / 2, abs=1e-15)
    assert agm(1.0, math.sqrt(2) / 2) == pytest.approx(0.8472130847939790866, abs=1e-15)


@given(st.floats(0.0, 0.999))
def test_matches_scipy(k):
    assert abs(agm_elliptic_K(k) - ellipk(k * k)) <= 1e-10 * ellipk(k * k)


@given(st.floats(0.0, 0.95))
def test_matches_quadrature(k):
    # K(k) = int_0^{pi/2} dphi / sqrt(1 - k^2 sin^2 phi)
    val, _ = quad(lambda p: 1 / math.sqrt(1 - (k * math.sin(p)) ** 2), 0, math.pi / 2, epsabs=1e-13)
    assert abs(agm_elliptic_K(k) - val) <= 1e-10


@pytest.mark.parametrize("k", [1.0, 1.5, -0.1])
def test_modulus_out_of_range(k):
    with pytest.raises(ValueError):
        agm_elliptic_K(k)


def test_negative_arguments():
    with pytest.raises(ValueError):
        agm(-1.0, 2.0)
