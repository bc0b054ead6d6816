import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from merohitchin.algebra.poly import ExactPoly
from merohitchin.periods.roots import complex_roots


def test_known_roots():
    r = complex_roots(ExactPoly([4, 0, -5, 0, 1]))
    assert np.allclose(r, [-2, -1, 1, 2], atol=1e-13)
    r = complex_roots(ExactPoly([1, 0, 1]))
    assert np.allclose(sorted(r, key=lambda z: z.imag), [-1j, 1j], atol=1e-14)
    assert complex_roots(ExactPoly([3, 6])) == [-0.5]


def test_rejects_bad_input():
    with pytest.raises(ValueError, match="squarefree"):
        complex_roots(ExactPoly([1, -2, 1]))
    with pytest.raises(ValueError, match="degree"):
        complex_roots(ExactPoly([5]))


@settings(max_examples=60)
@given(st.lists(st.integers(-20, 20), min_size=3, max_size=9).filter(lambda c: c[-1] != 0))
def test_agrees_with_companion_eigenvalues(cs):
    p = ExactPoly(cs)
    from merohitchin.algebra.poly import is_squarefree
    if not is_squarefree(p):
        return
    ours = complex_roots(p)
    ref = np.roots([float(c) for c in reversed(p.coeffs)])
    assert len(ours) == p.degree
    scale = max(1.0, max(abs(z) for z in ref))
    for z in ref:
        assert min(abs(z - w) for w in ours) <= 1e-8 * scale
    coeffs = [complex(float(c)) for c in p.coeffs]
    for w in ours:
        val = sum(c * w**k for k, c in enumerate(coeffs))
        size = sum(abs(c) * abs(w) ** k for k, c in enumerate(coeffs))
        assert abs(val) <= 1e-11 * size


def test_deterministic():
    p = ExactPoly([1, 2, -3, 0, 1, 0, 1])
    assert complex_roots(p) == complex_roots(p)
