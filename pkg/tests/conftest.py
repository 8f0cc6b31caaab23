from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import settings

from octoclifford.octonion import Octonion

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
rational_octonions = st.tuples(*[rationals] * 8).map(Octonion)
float_vectors = st.lists(st.floats(-4, 4, allow_nan=False, allow_subnormal=False), min_size=8, max_size=8)


def unit(i):
    return Octonion.unit(i)


__all__ = ["Fraction", "rationals", "rational_octonions", "float_vectors", "unit"]
