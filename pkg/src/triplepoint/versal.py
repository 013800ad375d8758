"""Versal families, the triple-point stratum of the quadruple point, and
classification of plane curve singularities at rational points."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .deform import MapGerm, T1Result, t1_compute
from .localstd import INFINITE, LocalOrder, quotient_dimension
from .poly import ContextError, Polynomial


class FamilyShapeError(ValueError):
    pass


class NotOnCurveError(ValueError):
    pass


class SignMode(str, enum.Enum):
    """How x is eliminated from G = xy + b1 = 0."""

    PAPER = "paper"            # x = +b1/y
    CONSISTENT = "consistent"  # x = -b1/y, the actual solution of G = 0


PAPER_BASIS = {
    (0, (0, 0, 0)): "a1", (0, (1, 0, 0)): "a2", (0, (0, 1, 0)): "a3", (0, (0, 0, 1)): "a4",
    (1, (0, 0, 0)): "b1", (1, (0, 0, 1)): "b2", (1, (0, 0, 2)): "b3",
}
PAPER_PARAMS = ("a1", "a2", "a3", "a4", "b1", "b2", "b3")


@dataclass(frozen=True)
class VersalFamily:
    germ: MapGerm
    parameters: Tuple[str, ...]
    equations: Tuple[Polynomial, ...]  # over germ.vars + parameters

    @property
    def ring_vars(self) -> Tuple[str, ...]:
        return self.germ.vars + self.parameters

    def fiber(self, values: Mapping[str, object]) -> Tuple[Polynomial, ...]:
        """Equations of the fiber over a full parameter point, over germ.vars."""
        missing = set(self.parameters) - set(values)
        if missing:
            raise ValueError(f"missing parameter values: {sorted(missing)}")
        return tuple(e.substitute({k: values[k] for k in self.parameters}).embed(self.germ.vars)
                     for e in self.equations)

    def restrict(self, values: Mapping[str, object]) -> "VersalFamily":
        """Fix some parameters; they disappear from the parameter list."""
        for k in values:
            if k not in self.parameters:
                raise ContextError(f"{k!r} is not a parameter")
        rest = tuple(p for p in self.parameters if p not in values)
        vars = self.germ.vars + rest
        eqs = tuple(e.substitute(dict(values)).embed(vars) for e in self.equations)
        return VersalFamily(self.germ, rest, eqs)


def versal_family(f: MapGerm, r: Optional[T1Result] = None) -> VersalFamily:
    """f_i + sum of t_b * (monomial of b) over the T^1 basis elements b in component i."""
    r = r or t1_compute(f)
    if not r.finite:
        raise ValueError("versal family needs finite tau")
    basis = list(r.basis.basis)
    if f.vars == ("x", "y", "z") and f.p == 2 and set(basis) == set(PAPER_BASIS):
        names = [PAPER_BASIS[b] for b in basis]
        order = sorted(range(len(basis)), key=lambda i: PAPER_PARAMS.index(names[i]))
        basis = [basis[i] for i in order]
        names = [names[i] for i in order]
    else:
        names = []
        k = 1
        for _ in basis:
            while f"t{k}" in f.vars:
                k += 1
            names.append(f"t{k}")
            k += 1
    vars = f.vars + tuple(names)
    eqs = []
    for i, fi in enumerate(f.f):
        e = fi.embed(vars)
        for (comp, mon), name in zip(basis, names):
            if comp == i:
                e = e + Polynomial.monomial(vars, mon + (0,) * len(names)) * Polynomial.variable(vars, name)
        eqs.append(e)
    return VersalFamily(f, tuple(names), tuple(eqs))


# -- elimination to the plane -----------------------------------------

def eliminate_to_plane(fam: VersalFamily, sign: SignMode | str = SignMode.PAPER) -> Polynomial:
    """Plane equation F(y, z) of the fiber, valid on y != 0.

    ``fam`` must have the quadruple-point shape with b2 = b3 = 0 already imposed
    (missing b2/b3 parameters are accepted; present ones are set to 0).
    x is eliminated from G = xy + b1 via x = s*b1/y and y is cleared.
    """
    sign = SignMode(sign)
    drop = {k: 0 for k in ("b2", "b3") if k in fam.parameters}
    if drop:
        fam = fam.restrict(drop)
    if fam.germ.vars != ("x", "y", "z") or len(fam.equations) != 2 or "b1" not in fam.parameters:
        raise FamilyShapeError("family is not in the quadruple-point shape")
    vars = fam.ring_vars
    x, y = (Polynomial.variable(vars, v) for v in ("x", "y"))
    b1 = Polynomial.variable(vars, "b1")
    F, G = fam.equations
    if G != x * y + b1:
        raise FamilyShapeError(f"second equation must be x*y + b1, got {G}")
    if F.degree_in("x") > 1:
        raise FamilyShapeError("first equation must be at most linear in x")
    F1 = F.diff("x")
    F0 = F - F1 * x
    s = 1 if sign is SignMode.PAPER else -1
    plane = y * F0 + b1 * F1 * s
    out_vars = ("y", "z") + fam.parameters
    return plane.embed(out_vars)


# -- the triple-point stratum ------------------------------------------

@dataclass(frozen=True)
class StratumDescription:
    vanishing: Tuple[Polynomial, ...]
    nonvanishing: Tuple[Polynomial, ...]
    witness: Optional[Dict[str, Polynomial]] = None
    sign: SignMode = SignMode.PAPER
    params: Tuple[str, ...] = ()

    def contains(self, point: Mapping[str, object]) -> bool:
        return (all(p.evaluate(point) == 0 for p in self.vanishing)
                and all(p.evaluate(point) != 0 for p in self.nonvanishing))

    def witness_at(self, point: Mapping[str, object]) -> Dict[str, Fraction]:
        return {k: v.evaluate(point) for k, v in (self.witness or {}).items()}

    def describe(self) -> str:
        singles = [str(p) for p in self.vanishing if len(p) == 1 and p.degree() == 1]
        others = [_relation(p) for p in self.vanishing if not (len(p) == 1 and p.degree() == 1)]
        parts = []
        if singles:
            parts.append("=".join(singles) + "=0")
        parts.extend(others)
        return ", ".join(parts)


def _relation(p: Polynomial) -> str:
    # leading term on the left, everything else moved to the right
    (m, c), *_ = p.items()
    lead = Polynomial(p.vars, {m: c})
    return f"{lead} = {lead - p}"


class StratumSolveError(RuntimeError):
    pass


def _multiplicity_conditions(F: Polynomial, u: str, v: str) -> List[Polynomial]:
    Fu, Fv = F.diff(u), F.diff(v)
    return [F, Fu, Fv, Fu.diff(u), Fu.diff(v), Fv.diff(v)]


def triple_point_stratum(fam: VersalFamily, sign: SignMode | str = SignMode.PAPER) -> StratumDescription:
    """Parameters (with b1 != 0, b2 = b3 = 0) whose fiber has a point of multiplicity >= 3.

    Eliminates the point coordinates from F = F_y = F_z = F_yy = F_yz = F_zz = 0
    using y != 0 (the plane model's domain) and b1 != 0:

    * a monomial condition with all but one factor known nonzero forces that
      factor to vanish;
    * a condition linear in a point coordinate with constant coefficient
      solves for it;

    and returns whatever parameter equations remain.
    """
    sign = SignMode(sign)
    if set(fam.parameters) != set(PAPER_PARAMS) or fam.germ.vars != ("x", "y", "z"):
        raise FamilyShapeError("the stratum solver handles the quadruple-point family only")
    F = eliminate_to_plane(fam, sign)
    conds = _multiplicity_conditions(F, "y", "z")
    ring = F.vars
    point = {"y": None, "z": None}
    nonzero = {"y", "b1"}
    zero_params: List[str] = []

    def substitute(name, value):
        nonlocal conds
        conds = [c.substitute({name: value}) for c in conds]
        for k, w in point.items():
            if isinstance(w, Polynomial):
                point[k] = w.substitute({name: value})

    changed = True
    while changed:
        changed = False
        conds = [c for c in conds if not c.is_zero()]
        for c in conds:
            if c.is_constant():
                raise StratumSolveError("inconsistent conditions: stratum is empty")
            if len(c) == 1:
                (m, _), = c.terms().items()
                left = [ring[i] for i, e in enumerate(m) if e and ring[i] not in nonzero]
                if not left:
                    raise StratumSolveError(f"condition {c} cannot vanish")
                if len(left) > 1:
                    continue
                name = left[0]
                if name in point:
                    point[name] = Polynomial.zero(ring)
                else:
                    zero_params.append(name)
                substitute(name, 0)
                changed = True
                break
        if changed:
            continue
        for c in conds:
            for name in ("y", "z"):
                if point[name] is not None or c.degree_in(name) != 1:
                    continue
                coef = c.diff(name)
                if not coef.is_constant():
                    continue
                rest = c - coef * Polynomial.variable(ring, name)
                if rest.degree_in("y") > 0 or rest.degree_in("z") > 0:
                    continue
                value = -rest / coef.constant_term()
                point[name] = value
                substitute(name, value)
                changed = True
                break
            if changed:
                break
    if any(w is None for w in point.values()):
        raise StratumSolveError("could not eliminate the point coordinates")
    remaining = []
    for c in conds:
        if c.degree_in("y") > 0 or c.degree_in("z") > 0:
            raise StratumSolveError(f"condition {c} still involves the point")
        c = c.content_normalized()
        if c not in remaining:
            remaining.append(c)
    pvars = PAPER_PARAMS
    singles = sorted(set(zero_params) | {"b2", "b3"}, key=pvars.index)
    vanishing = [Polynomial.variable(pvars, s) for s in singles]
    vanishing += [c.embed(pvars) for c in remaining]
    witness = {k: w.embed(pvars) for k, w in point.items()}
    return StratumDescription(
        tuple(vanishing), (Polynomial.variable(pvars, "b1"),), witness, sign, pvars
    )


def tangent_space_at_origin(stratum: StratumDescription) -> List[Tuple[Fraction, ...]]:
    """Kernel of the Jacobian of the vanishing constraints at parameter 0."""
    from .poly import _nullspace

    pv = stratum.params
    zero = {p: 0 for p in pv}
    rows = [[c.diff(p).evaluate(zero) for p in pv] for c in stratum.vanishing]
    return [tuple(v) for v in _nullspace(rows, len(pv))]


def meets_only_at_origin(stratum: StratumDescription, linear_zeros: Sequence[str]) -> bool:
    """Whether the Zariski closure of the stratum meets {linear_zeros = 0} only at 0.

    Works by substituting and repeatedly clearing single-variable or
    pure-power constraints; returns False if that does not pin every
    parameter to 0.
    """
    pv = stratum.params
    conds = [c.substitute({v: 0 for v in linear_zeros}) for c in stratum.vanishing]
    fixed = set(linear_zeros)
    changed = True
    while changed:
        changed = False
        for c in conds:
            if c.is_zero():
                continue
            if len(c) == 1:
                (m, _), = c.terms().items()
                used = [pv[i] for i, e in enumerate(m) if e]
                if len(used) == 1 and used[0] not in fixed:
                    fixed.add(used[0])
                    conds = [d.substitute({used[0]: 0}) for d in conds]
                    changed = True
                    break
    return fixed >= set(pv) and all(c.is_zero() for c in conds)


# -- univariate helpers for binary forms ------------------------------

def _trim(a: List[Fraction]) -> List[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a = list(a)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        s = len(a) - len(b)
        for i, v in enumerate(b):
            a[s + i] -= c * v
        _trim(a)
    return a


def _poly_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_rem(a, b)
    return [c / a[-1] for c in a] if a else a


def _poly_quo(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        s = len(a) - len(b)
        q[s] = c
        for i, v in enumerate(b):
            a[s + i] -= c * v
        _trim(a)
    return q


def squarefree_degree(coeffs: List[Fraction]) -> int:
    """Number of distinct complex roots of a univariate polynomial (low-to-high coefficients)."""
    a = _trim([Fraction(c) for c in coeffs])
    if len(a) <= 1:
        return 0
    da = [i * c for i, c in enumerate(a)][1:]
    g = _poly_gcd(a, da)
    return len(_poly_quo(a, g)) - 1


def has_rational_root(coeffs: List[Fraction]) -> bool:
    a = _trim([Fraction(c) for c in coeffs])
    if len(a) <= 1:
        return False
    if a[0] == 0:
        return True
    if len(a) == 2:
        return True
    if len(a) == 3:
        c, b, a2 = a
        disc = b * b - 4 * a2 * c
        return disc >= 0 and _is_rational_square(disc)
    raise NotImplementedError("rational root test implemented up to degree 2")


def _is_rational_square(q: Fraction) -> bool:
    from math import isqrt

    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


@dataclass(frozen=True)
class TangentCone:
    form: Polynomial        # homogeneous, in the translated coordinates
    multiplicity: int
    distinct_lines: int


def tangent_cone(F: Polynomial, pt: Mapping[str, object]) -> TangentCone:
    """Lowest homogeneous part of F at pt, with its number of distinct lines over the closure."""
    if F.nvars != 2:
        raise ContextError("tangent cones are computed for plane curves (2 variables)")
    G = F.translate({v: Fraction(pt[v]) for v in F.vars})
    if G.is_zero():
        raise ValueError("the zero polynomial has no tangent cone")
    m = int(G.order())
    form = G.homogeneous_part(m)
    # dehomogenize with the second variable = 1: form(u, 1) = sum c_i u^i
    coeffs = [Fraction(0)] * (m + 1)
    for (i, j), c in form.terms().items():
        coeffs[i] = c
    inner = _trim(list(coeffs))
    deg_u = len(inner) - 1
    v_mult = m - deg_u  # power of the second variable dividing the form
    distinct = squarefree_degree(inner) + (1 if v_mult > 0 else 0)
    return TangentCone(form, m, distinct)


class SingKind(str, enum.Enum):
    SMOOTH = "Smooth"
    A = "A"
    ORDINARY_TRIPLE = "OrdinaryTriple"
    OTHER = "Other"


@dataclass(frozen=True)
class SingularityClass:
    tag: SingKind
    multiplicity: int
    distinct_tangents: int
    milnor: Optional[int] = None
    k: Optional[int] = None

    def __str__(self):
        if self.tag is SingKind.A:
            return f"A({self.k})"
        return self.tag.value


class NonIsolatedPointError(ValueError):
    pass


def milnor_number(F: Polynomial, pt: Mapping[str, object]) -> float:
    G = F.translate({v: Fraction(pt[v]) for v in F.vars})
    grads = [G.diff(v) for v in G.vars]
    grads = [g for g in grads if not g.is_zero()]
    if not grads:
        return INFINITE
    return quotient_dimension(1, grads, LocalOrder()).dimension


def classify_plane_singularity(F: Polynomial, pt: Mapping[str, object]) -> SingularityClass:
    if F.nvars != 2:
        raise ContextError("plane classification needs exactly 2 variables")
    if F.evaluate(pt) != 0:
        raise NotOnCurveError(f"point {dict(pt)} is not on the curve")
    cone = tangent_cone(F, pt)
    m = cone.multiplicity
    if m == 1:
        return SingularityClass(SingKind.SMOOTH, 1, 1)
    if m == 2:
        mu = milnor_number(F, pt)
        if mu == INFINITE:
            raise NonIsolatedPointError("non-isolated singularity: Milnor number is infinite")
        return SingularityClass(SingKind.A, 2, cone.distinct_lines, int(mu), int(mu))
    mu = milnor_number(F, pt)
    mu = None if mu == INFINITE else int(mu)
    if m == 3 and cone.distinct_lines == 3:
        return SingularityClass(SingKind.ORDINARY_TRIPLE, 3, 3, mu)
    return SingularityClass(SingKind.OTHER, m, cone.distinct_lines, mu)


def high_multiplicity_points(F: Polynomial, min_mult: int = 3) -> List[Tuple[object, object]]:
    """Points of a plane curve (fixed parameters) of multiplicity >= ``min_mult``.

    Uses resultants to eliminate one coordinate, then solves exactly.  Returns
    complex points as sympy numbers; empty list certifies there are none.
    """
    import sympy

    if F.nvars != 2:
        raise ContextError("plane curve expected")
    u, v = sympy.symbols(F.vars)
    conds = [F]
    frontier = [F]
    for _ in range(min_mult - 1):
        frontier = [h.diff(w) for h in frontier for w in F.vars]
        conds.extend(frontier)
    exprs = [sympy.Poly(_to_sympy(c, (u, v)), u, v) for c in conds if not c.is_zero()]
    if any(e.is_ground for e in exprs if e.as_expr() != 0):
        return []
    res = None
    base = exprs[0]
    for e in exprs[1:]:
        r = sympy.resultant(base.as_expr(), e.as_expr(), v)
        r = sympy.Poly(r, u)
        res = r if res is None else sympy.gcd(res, r)
    if res is None or (res.is_ground and res.as_expr() != 0):
        return []
    # candidates exist: solve the full system exactly
    sols = sympy.solve([e.as_expr() for e in exprs], [u, v], dict=True)
    return [(s[u], s[v]) for s in sols if u in s and v in s]


def _to_sympy(p: Polynomial, syms):
    import sympy

    expr = 0
    for m, c in p.terms().items():
        t = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, m):
            t *= s ** e
        expr += t
    return expr
