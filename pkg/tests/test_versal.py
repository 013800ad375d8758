from fractions import Fraction

import pytest

from triplepoint.deform import MapGerm, paper_germ
from triplepoint.parser import parse_polynomial
from triplepoint.versal import (
    FamilyShapeError,
    NotOnCurveError,
    SignMode,
    SingKind,
    classify_plane_singularity,
    eliminate_to_plane,
    high_multiplicity_points,
    meets_only_at_origin,
    squarefree_degree,
    tangent_cone,
    tangent_space_at_origin,
    triple_point_stratum,
    versal_family,
)
from triplepoint.poly import Polynomial

YZ = ("y", "z")


def P(s, vars):
    return parse_polynomial(s, vars)


@pytest.fixture(scope="module")
def family():
    return versal_family(paper_germ())


class TestFamily:
    def test_parameters(self, family):
        assert family.parameters == ("a1", "a2", "a3", "a4", "b1", "b2", "b3")

    def test_minus_cube_family(self):
        # the -z^3 variant of the germ gives the same seven deformation monomials
        fam = versal_family(MapGerm.parse(["x*z + y*z - z^3", "x*y"], ("x", "y", "z")))
        v = fam.ring_vars
        assert fam.equations[0] == P("x*z + y*z - z^3 + a1 + a2*x + a3*y + a4*z", v)
        assert fam.equations[1] == P("x*y + b1 + b2*z + b3*z^2", v)

    def test_paper_germ_equations(self, family):
        v = family.ring_vars
        assert family.equations[0] == P("x*z + y*z + z^3 + a1 + a2*x + a3*y + a4*z", v)

    def test_node(self):
        fam = versal_family(MapGerm.parse(["x*y"], ("x", "y")))
        assert fam.parameters == ("t1",)
        assert fam.equations[0] == P("x*y + t1", ("x", "y", "t1"))

    def test_smooth(self):
        fam = versal_family(MapGerm.parse(["x", "y"], ("x", "y")))
        assert fam.parameters == ()

    def test_fiber(self, family):
        vals = dict.fromkeys(family.parameters, 0)
        assert family.fiber(vals) == paper_germ().f


class TestPlane:
    def test_symbolic(self, family):
        F = eliminate_to_plane(family, SignMode.PAPER)
        expected = P("y*z^3 + y^2*z + a1*y + a3*y^2 + a4*y*z + a2*b1 + b1*z", F.vars)
        assert F == expected

    def test_consistent_sign(self, family):
        F = eliminate_to_plane(family, SignMode.CONSISTENT)
        assert F == P("y*z^3 + y^2*z + a1*y + a3*y^2 + a4*y*z - a2*b1 - b1*z", F.vars)

    def test_substitutions(self, family):
        F = eliminate_to_plane(family)
        zero = dict.fromkeys(family.parameters, 0)
        assert F.substitute({k: v for k, v in zero.items() if k in F.vars}).embed(YZ) == P("y*z^3 + y^2*z", YZ)
        one = dict(zero, b1=1)
        assert F.substitute({k: v for k, v in one.items() if k in F.vars}).embed(YZ) == P("z^3*y + z*y^2 + z", YZ)

    def test_shape_error(self):
        fam = versal_family(MapGerm.parse(["x*y"], ("x", "y")))
        with pytest.raises(FamilyShapeError):
            eliminate_to_plane(fam)


class TestStratum:
    def test_default_sign(self, family):
        st = triple_point_stratum(family, SignMode.PAPER)
        assert st.describe() == "a1=a2=a3=b2=b3=0, a4^2 = 4*b1"
        assert [str(p) for p in st.nonvanishing] == ["b1"]

    def test_consistent_sign(self, family):
        assert triple_point_stratum(family, "consistent").describe() == "a1=a2=a3=b2=b3=0, a4^2 = -4*b1"

    def test_witness(self, family):
        st = triple_point_stratum(family)
        pt = dict.fromkeys(family.parameters, 0)
        pt.update(a4=2, b1=1)
        assert st.contains(pt)
        assert st.witness_at(pt) == {"y": -1, "z": 0}
        assert not st.contains(dict(pt, b1=2))

    def test_smooth_tangent_to_gamma(self, family):
        st = triple_point_stratum(family)
        tangents = tangent_space_at_origin(st)
        assert len(tangents) == 1
        a4 = st.params.index("a4")
        assert all(c == 0 for i, c in enumerate(tangents[0]) if i != a4)
        assert meets_only_at_origin(st, ["b1", "b2", "b3"])

    def test_shape(self):
        with pytest.raises(FamilyShapeError):
            triple_point_stratum(versal_family(MapGerm.parse(["x*y"], ("x", "y"))))


class TestClassify:
    @pytest.mark.parametrize("f, kind, k", [
        ("y^2 - x^3", SingKind.A, 2),
        ("y^2 - x^4", SingKind.A, 3),
        ("y^2 - x^2", SingKind.A, 1),
        ("y^3 - x^3", SingKind.ORDINARY_TRIPLE, None),
        ("y^3 - x^4", SingKind.OTHER, None),
        ("y - x^2", SingKind.SMOOTH, None),
    ])
    def test_kinds(self, f, kind, k):
        c = classify_plane_singularity(P(f, ("x", "y")), {"x": 0, "y": 0})
        assert c.tag is kind
        if k is not None:
            assert c.k == k and str(c) == f"A({k})"

    def test_stratum_fiber(self):
        F = P("y*z^3 + y^2*z + 2*y*z + z", YZ)
        c = classify_plane_singularity(F, {"y": -1, "z": 0})
        assert c.tag is SingKind.ORDINARY_TRIPLE
        cone = tangent_cone(F, {"y": -1, "z": 0})
        assert cone.form == P("y^2*z - z^3", YZ)

    def test_not_on_curve(self):
        with pytest.raises(NotOnCurveError):
            classify_plane_singularity(P("x^2 + y^2 + 1", ("x", "y")), {"x": 0, "y": 0})

    def test_tangent_cone_lines(self):
        assert tangent_cone(P("y^2", ("x", "y")), {"x": 0, "y": 0}).distinct_lines == 1
        assert tangent_cone(P("y^2 - x^2", ("x", "y")), {"x": 0, "y": 0}).distinct_lines == 2
        # z((y+1)^2 + z^2) at (-1, 0): three distinct lines over C
        F = P("z*((y+1)^2 + z^2)", YZ)
        cone = tangent_cone(F, {"y": -1, "z": 0})
        assert (cone.multiplicity, cone.distinct_lines) == (3, 3)

    def test_squarefree_degree(self):
        assert squarefree_degree([1, 2, 1]) == 1
        assert squarefree_degree([1, 0, 1]) == 2
        assert squarefree_degree([0, 0, 0, 1]) == 1

    def test_high_multiplicity_points(self):
        F = P("y*z^3 + y^2*z + 2*y*z + z", YZ)
        assert high_multiplicity_points(F) == [(-1, 0)]
        G = P("y*z^3 + y^2*z + 2*y*z + 2*z", YZ)
        assert high_multiplicity_points(G) == []
