from fractions import Fraction

from hypothesis import strategies as st

from merohitchin.algebra.poly import ExactPoly

small_fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def polys(max_degree=4):
    return st.lists(small_fracs, min_size=0, max_size=max_degree + 1).map(ExactPoly)


def nonzero_polys(max_degree=4):
    return polys(max_degree).filter(lambda p: not p.is_zero())
