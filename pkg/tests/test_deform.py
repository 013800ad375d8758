from fractions import Fraction

import pytest

from triplepoint.deform import (
    MapGerm,
    NonIsolatedError,
    NormalizeVerdict,
    NotQuasiHomogeneousError,
    ShapeError,
    Verdict,
    check_icis,
    grading_table,
    merle_equivalence,
    module_valuation,
    normalize_quadruple,
    paper_germ,
    t1_compute,
    t1_grading,
    t1_presentation,
)
from triplepoint.jets import stabilized_dimension
from triplepoint.parser import parse_polynomial
from triplepoint.poly import DegreesWeights, Polynomial

XYZ = ("x", "y", "z")


def P(s, vars=XYZ):
    return parse_polynomial(s, vars)


def zero():
    return Polynomial.zero(XYZ)


class TestGerm:
    def test_shape_checks(self):
        with pytest.raises(ValueError):
            MapGerm.parse(["x + 1"], XYZ)
        with pytest.raises(ValueError):
            MapGerm.parse(["x", "y", "z", "x*y"], XYZ)

    def test_presentation(self):
        gens = t1_presentation(paper_germ())
        assert len(gens) == 4 + 3
        cols = [tuple(g) for g in gens[4:]]
        assert cols[0] == (P("z"), P("y"))
        assert cols[1] == (P("z"), P("x"))
        assert cols[2] == (P("x + y + 3*z^2"), zero())


class TestT1:
    def test_paper_germ(self):
        r = t1_compute(paper_germ())
        assert r.tau == 7
        assert r.labels() == ["e1", "x*e1", "y*e1", "z*e1", "e2", "z*e2", "z^2*e2"]

    @pytest.mark.parametrize("k", range(1, 9))
    def test_a_k(self, k):
        f = MapGerm.parse([f"y^2 - x^{k + 1}"], ("x", "y"))
        r = t1_compute(f)
        assert r.tau == k
        assert [t[1] for t in r.basis.basis] == [(i, 0) for i in range(k)]
        gens = [tuple(g) for g in t1_presentation(f)]
        assert stabilized_dimension(gens, 1)[0] == k

    def test_node_and_smooth(self):
        assert t1_compute(MapGerm.parse(["x*y"], ("x", "y"))).labels() == ["e1"]
        assert t1_compute(MapGerm.parse(["x", "y"], ("x", "y"))).tau == 0

    def test_non_isolated(self):
        r = t1_compute(MapGerm.parse(["x^2"], ("x", "y")))
        assert not r.finite

    def test_icis(self):
        rep = check_icis(paper_germ())
        assert rep.is_complete and rep.isolated and rep.dimension == 1
        assert check_icis(MapGerm.parse(["x*y"], ("x", "y"))).isolated
        assert not check_icis(MapGerm.parse(["x^2"], ("x", "y"))).isolated


class TestGrading:
    def test_quadruple_grading(self):
        g = t1_grading(paper_germ())
        table = dict(grading_table(g, XYZ))
        assert table == {
            -4: ["e2"], -3: ["e1", "z*e2"], -2: ["z*e1", "z^2*e2"], -1: ["x*e1", "y*e1"],
        }
        assert g.alpha == -1
        assert g.threshold == 0

    def test_cusp_given_weights(self):
        f = MapGerm.parse(["y^2 - x^3"], ("y", "x"))
        g = t1_grading(f, DegreesWeights((6,), (3, 2)))
        assert dict(grading_table(g, f.vars)) == {-6: ["e1"], -4: ["x*e1"]}

    def test_smooth_has_empty_grading(self):
        g = t1_grading(MapGerm.parse(["x", "y"], ("x", "y")))
        assert g.grading == {} and g.alpha is None

    def test_wrong_weights(self):
        with pytest.raises(NotQuasiHomogeneousError):
            t1_grading(paper_germ(), DegreesWeights((3, 4), (1, 1, 1)))

    def test_not_quasi_homogeneous(self):
        with pytest.raises(NotQuasiHomogeneousError):
            t1_grading(MapGerm.parse(["x + y + x^2"], ("x", "y")))

    def test_non_isolated(self):
        with pytest.raises(NonIsolatedError):
            t1_grading(MapGerm.parse(["x^2"], ("x", "y")))


class TestMerle:
    def test_high_order_perturbation(self):
        r = merle_equivalence(paper_germ(), (P("x^2 + 2*y^2 + x*y*z"), zero()))
        assert r.verdict is Verdict.EQUIVALENT
        assert r.valuation == 1 and r.threshold == 0

    def test_low_order(self):
        r = merle_equivalence(paper_germ(), (P("z"), zero()))
        assert r.valuation == -2
        assert r.verdict is Verdict.INCONCLUSIVE

    def test_zero(self):
        r = merle_equivalence(paper_germ(), (zero(), zero()))
        assert r.valuation == float("inf") and r.verdict is Verdict.EQUIVALENT

    def test_component_count(self):
        with pytest.raises(ValueError):
            merle_equivalence(paper_germ(), (zero(),))

    def test_module_valuation(self):
        dw = DegreesWeights((3, 4), (2, 2, 1))
        assert module_valuation((P("x^2"), P("z^5")), dw) == 1
        assert module_valuation((zero(), P("z")), dw) == -3


class TestNormalize:
    @pytest.mark.parametrize("p, verdict", [
        ("x*z + y*z + z^3 + x^2", NormalizeVerdict.MODEL_EQUIVALENT),
        ("x*z + y*z + z^3", NormalizeVerdict.MODEL_EQUIVALENT),
        ("x*z + y*z + z^3 + 5*x^2 - y^2 + x*y*z", NormalizeVerdict.MODEL_EQUIVALENT),
        ("x*z + y*z + z^3 + z^2", NormalizeVerdict.INCONCLUSIVE),
    ])
    def test_verdicts(self, p, verdict):
        assert normalize_quadruple(P(p))[0] is verdict

    def test_z_squared_valuation(self):
        assert normalize_quadruple(P("x*z + y*z + z^3 + z^2"))[1].valuation == -1

    @pytest.mark.parametrize("p", ["x*z + z^3 + x^2", "2*x*z + y*z + z^3", "x*z + y*z + z^3 + 1"])
    def test_shape(self, p):
        with pytest.raises(ShapeError):
            normalize_quadruple(P(p))
