from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import VARS3, polynomials, small_fractions
from triplepoint.poly import (
    ContextError,
    DegreesWeights,
    Polynomial,
    WeightSystem,
    find_weights,
    is_quasi_homogeneous,
    lowest_weighted_form,
    variables,
    weighted_valuation,
)
from triplepoint.parser import parse_polynomial

x, y, z = variables(VARS3)


def P(s, vars=VARS3):
    return parse_polynomial(s, vars)


class TestArithmetic:
    def test_zero_and_cancellation(self):
        assert P("0").is_zero()
        assert P("x*y - x*y").is_zero()

    def test_quadruple_point_expansion(self):
        p = P("(y+x-z^2)*z")
        assert p == x * z + y * z - z ** 3
        assert len(p) == 3

    def test_scalars(self):
        assert (x + 1) * Fraction(1, 2) == P("x/2 + 1/2")
        assert 2 - x == P("2 - x")
        assert (x * 3) / 3 == x

    def test_division_by_polynomial_rejected(self):
        with pytest.raises(Exception):
            x / y

    def test_context_mismatch(self):
        other = Polynomial.variable(("a",), "a")
        with pytest.raises(ContextError):
            x + other

    def test_degree_order(self):
        p = P("x^2*y + z + 3")
        assert p.degree() == 3
        assert p.order() == 0
        assert P("x*z + z^3").order() == 2

    def test_evaluate_and_translate(self):
        p = P("y*z^3 + y^2*z + 2*y*z + z", ("y", "z"))
        assert p.evaluate({"y": -1, "z": 0}) == 0
        q = p.translate({"y": -1, "z": 0})
        assert q.evaluate({"y": 0, "z": 0}) == 0
        assert q.order() == 3

    def test_str(self):
        assert str(P("3/2*x*z - z^3")) == "-z^3 + 3/2*x*z"
        assert str(P("0")) == "0"


@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial.zero(VARS3)
    assert a * 1 == a


@given(polynomials(), polynomials(), st.sampled_from(VARS3))
def test_leibniz(a, b, v):
    assert (a * b).diff(v) == a.diff(v) * b + a * b.diff(v)


class TestDerivative:
    def test_examples(self):
        assert P("x*z+y*z+z^3").diff("z") == P("x + y + 3*z^2")
        assert P("x*y").diff("x") == y
        assert Polynomial.constant(VARS3, 5).diff("x").is_zero()

    def test_unknown_variable(self):
        with pytest.raises(ContextError):
            x.diff("w")


weights = st.lists(st.integers(min_value=1, max_value=5), min_size=3, max_size=3).map(
    lambda a: WeightSystem(tuple(a)))


class TestValuation:
    def test_examples(self):
        a = (2, 2, 1)
        assert weighted_valuation(P("x*z+y*z+z^3"), a) == 3
        assert weighted_valuation(P("x*y"), a) == 4
        assert weighted_valuation(Polynomial.zero(VARS3), a) == float("inf")

    def test_lowest_form(self):
        assert lowest_weighted_form(P("z + x + x^2"), (1, 1, 1)) == P("x + z")

    def test_nonpositive_weights_rejected(self):
        with pytest.raises(ValueError):
            WeightSystem((1, 0, 2))

    @given(polynomials(), polynomials(), weights)
    def test_product_additive(self, a, b, w):
        assert weighted_valuation(a * b, w) == weighted_valuation(a, w) + weighted_valuation(b, w)

    @given(polynomials(), polynomials(), weights)
    def test_sum_ultrametric(self, a, b, w):
        assert weighted_valuation(a + b, w) >= min(weighted_valuation(a, w), weighted_valuation(b, w))


class TestQuasiHomogeneous:
    def test_examples(self):
        assert is_quasi_homogeneous(P("x*z+y*z+z^3"), 3, (2, 2, 1))
        assert is_quasi_homogeneous(P("x^2+y^3", ("x", "y")), 6, (3, 2))
        assert not is_quasi_homogeneous(P("x+y^2", ("x", "y")), 1, (1, 1))

    def test_find_weights_paper_germ(self):
        dw = find_weights([P("x*z+y*z+z^3"), P("x*y")])
        assert dw.d == (3, 4)
        assert dw.a.a == (2, 2, 1)

    def test_find_weights_cusp(self):
        # y first: a = (3/2, 1) after normalizing the smallest weight to 1
        dw = find_weights([P("y^2 - x^3", ("y", "x"))])
        assert dw.a.a == (Fraction(3, 2), 1)
        assert dw.d == (3,)
        assert dw.scaled(2) == DegreesWeights((6,), (3, 2))

    def test_find_weights_absent(self):
        assert find_weights([P("x + y + x^2", ("x", "y"))]) is None

    def test_find_weights_underdetermined(self):
        # x*y alone has a one-parameter family of weights; any answer must be valid
        dw = find_weights([P("x*y", ("x", "y"))])
        assert dw is not None
        assert is_quasi_homogeneous(P("x*y", ("x", "y")), dw.d[0], dw.a)
        assert min(dw.a.a) == 1

    @given(st.lists(st.integers(1, 4), min_size=3, max_size=3), st.integers(1, 4),
           st.integers(0, 3), st.randoms(use_true_random=False))
    def test_find_weights_recovers_valid_system(self, a, scale, extra, rnd):
        # build a quasi-homogeneous polynomial for weights a and check the result is valid
        d = scale * a[0] * a[1] * a[2]
        mons = [tuple(d // a[i] if i == j else 0 for i in range(3)) for j in range(3)]
        for _ in range(extra):
            i, j = rnd.sample(range(3), 2)
            k = rnd.randint(1, d // a[i] - 1) if d // a[i] > 1 else 0
            rest = d - k * a[i]
            if k and rest % a[j] == 0:
                m = [0, 0, 0]
                m[i], m[j] = k, rest // a[j]
                mons.append(tuple(m))
        p = Polynomial(VARS3, {m: 1 for m in mons})
        dw = find_weights([p])
        assert dw is not None
        assert is_quasi_homogeneous(p, dw.d[0], dw.a)
