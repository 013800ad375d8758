from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import settings

from triplepoint.poly import Polynomial

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

VARS3 = ("x", "y", "z")

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=1, max_value=4),
)


@st.composite
def polynomials(draw, vars=VARS3, max_terms=5, max_deg=4, coeffs=small_fractions):
    n = len(vars)
    mons = draw(st.lists(
        st.lists(st.integers(min_value=0, max_value=max_deg), min_size=n, max_size=n)
        .filter(lambda m: sum(m) <= max_deg).map(tuple),
        max_size=max_terms,
    ))
    return Polynomial(vars, {m: draw(coeffs) for m in mons})
