"""T^1 of complete-intersection germs, its weight grading, and Merle's criterion."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .localstd import (
    INFINITE,
    LocalOrder,
    ModuleElement,
    QuotientBasis,
    Term,
    local_dimension,
    quotient_dimension,
    term_label,
)
from .parser import parse_polynomial
from .poly import (
    ContextError,
    DegreesWeights,
    Polynomial,
    find_weights,
    is_quasi_homogeneous,
    weighted_valuation,
)


class NotQuasiHomogeneousError(ValueError):
    pass


class NonIsolatedError(ValueError):
    pass


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class MapGerm:
    f: Tuple[Polynomial, ...]

    def __post_init__(self):
        f = tuple(self.f)
        if not f:
            raise ValueError("a germ needs at least one component")
        vars = f[0].vars
        if any(g.vars != vars for g in f):
            raise ContextError("components live over different contexts")
        if len(f) > len(vars):
            raise ValueError(f"p = {len(f)} components exceed n = {len(vars)} variables")
        if any(g.constant_term() for g in f):
            raise ValueError("every component must vanish at the origin")
        object.__setattr__(self, "f", f)

    @classmethod
    def parse(cls, exprs: Sequence[str], vars: Sequence[str]) -> "MapGerm":
        return cls(tuple(parse_polynomial(e, vars) for e in exprs))

    @property
    def vars(self) -> Tuple[str, ...]:
        return self.f[0].vars

    @property
    def p(self) -> int:
        return len(self.f)

    @property
    def n(self) -> int:
        return len(self.vars)

    def weights(self) -> Optional[DegreesWeights]:
        if any(g.is_zero() for g in self.f):
            return None
        return find_weights(self.f)

    def default_order(self) -> LocalOrder:
        dw = self.weights()
        if dw is None:
            return LocalOrder()
        return LocalOrder.from_degrees_weights(dw)


PAPER_GERM = ("x*z+y*z+z^3", "x*y")


def paper_germ() -> MapGerm:
    """The non-planar quadruple point (xz + yz + z^3, xy) in (x, y, z)."""
    return MapGerm.parse(PAPER_GERM, ("x", "y", "z"))


@dataclass(frozen=True)
class T1Result:
    tau: float  # int or INFINITE
    basis: QuotientBasis
    grading: Optional[Dict[Fraction, Tuple[Term, ...]]] = None
    alpha: Optional[Fraction] = None
    degrees_weights: Optional[DegreesWeights] = None

    @property
    def finite(self) -> bool:
        return self.tau != INFINITE

    @property
    def threshold(self) -> Optional[Fraction]:
        """Effective Merle threshold max(0, alpha)."""
        if self.grading is None:
            return None
        return max(Fraction(0), self.alpha) if self.alpha is not None else Fraction(0)

    def labels(self) -> List[str]:
        return self.basis.labels()


def t1_presentation(f: MapGerm) -> List[ModuleElement]:
    """Generators of the submodule I*O^p + <Jacobian columns> of O^p."""
    zero = Polynomial.zero(f.vars)
    gens = []
    for fi in f.f:
        for k in range(f.p):
            gens.append(ModuleElement([fi if j == k else zero for j in range(f.p)]))
    for v in f.vars:
        gens.append(ModuleElement([fi.diff(v) for fi in f.f]))
    return gens


def t1_compute(f: MapGerm, order: Optional[LocalOrder] = None) -> T1Result:
    """tau = dim T^1(f) and a monomial basis.

    The default order is the weighted local order of ``f`` when ``f`` is
    quasi-homogeneous (component shifts = degrees), else the plain one.
    """
    order = order or f.default_order()
    gens = [g for g in t1_presentation(f) if not g.is_zero()]
    qb = quotient_dimension(f.p, gens, order, vars=f.vars)
    return T1Result(qb.dimension, qb)


@dataclass(frozen=True)
class ICISReport:
    is_complete: bool
    isolated: bool
    dimension: int
    tau: float


def check_icis(f: MapGerm) -> ICISReport:
    dim = local_dimension(list(f.f), f.default_order() if f.p == 1 else LocalOrder())
    r = t1_compute(f)
    return ICISReport(is_complete=(dim == f.n - f.p), isolated=r.finite, dimension=dim, tau=r.tau)


def t1_grading(f: MapGerm, dw: Optional[DegreesWeights] = None, r: Optional[T1Result] = None) -> T1Result:
    """Attach the weight grading nu = <a, alpha> - d_i to each basis element."""
    if dw is None:
        dw = f.weights()
        if dw is None:
            raise NotQuasiHomogeneousError("germ admits no positive system of degrees and weights")
    if len(dw.d) != f.p or len(dw.a) != f.n:
        raise ValueError("degrees/weights do not match the germ's shape")
    for fi, d in zip(f.f, dw.d):
        if not is_quasi_homogeneous(fi, d, dw.a):
            raise NotQuasiHomogeneousError(f"{fi} is not quasi-homogeneous of degree {d} for {dw.a.a}")
    if r is None:
        r = t1_compute(f)
    if not r.finite:
        raise NonIsolatedError("T^1 is infinite-dimensional; grading undefined")
    groups: Dict[Fraction, List[Term]] = {}
    for comp, mon in r.basis.basis:
        nu = dw.a.degree(mon) - dw.d[comp]
        groups.setdefault(nu, []).append((comp, mon))
    grading = {nu: tuple(groups[nu]) for nu in sorted(groups)}
    alpha = max(grading) if grading else None
    return T1Result(r.tau, r.basis, grading, alpha, dw)


def module_valuation(g: Sequence[Polynomial], dw: DegreesWeights):
    """nu_{d,a}(g) = min_i (nu_a(g_i) - d_i); ``inf`` for g = 0."""
    return min((weighted_valuation(gi, dw.a) - d for gi, d in zip(g, dw.d)), default=math.inf)


class Verdict(enum.Enum):
    EQUIVALENT = "Equivalent"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class MerleResult:
    verdict: Verdict
    valuation: object  # Fraction or inf
    alpha: Optional[Fraction]
    threshold: Fraction
    degrees_weights: DegreesWeights


def merle_equivalence(f: MapGerm, g: Sequence[Polynomial], dw: Optional[DegreesWeights] = None,
                      graded: Optional[T1Result] = None) -> MerleResult:
    """Sufficient test that f + g is analytically equivalent to f.

    Never returns "inequivalent": the criterion only certifies equivalence.
    """
    g = tuple(g)
    if len(g) != f.p:
        raise ValueError(f"perturbation has {len(g)} components, germ has {f.p}")
    if any(gi.vars != f.vars for gi in g):
        raise ContextError("perturbation lives over a different context")
    if graded is None or graded.grading is None:
        graded = t1_grading(f, dw)
    dw = graded.degrees_weights
    nu = module_valuation(g, dw)
    thr = graded.threshold
    verdict = Verdict.EQUIVALENT if nu > thr else Verdict.INCONCLUSIVE
    return MerleResult(verdict, nu, graded.alpha, thr, dw)


class NormalizeVerdict(enum.Enum):
    MODEL_EQUIVALENT = "ModelEquivalent"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


def normalize_quadruple(p: Polynomial) -> Tuple[NormalizeVerdict, MerleResult]:
    """Compare (p, xy) with the model (xz + yz + z^3, xy).

    ``p`` must already be in the normalized shape xz + yz + z^3 + (rest) with
    no constant term; the change of coordinates is the caller's job.
    """
    if p.vars != ("x", "y", "z"):
        raise ShapeError(f"expected a polynomial in (x, y, z), got context {p.vars}")
    if p.constant_term():
        raise ShapeError("p must vanish at the origin")
    for mon, name in (((1, 0, 1), "x*z"), ((0, 1, 1), "y*z"), ((0, 0, 3), "z^3")):
        if p.coefficient(mon) != 1:
            raise ShapeError(f"coefficient of {name} must be 1, got {p.coefficient(mon)}")
    f = paper_germ()
    res = merle_equivalence(f, (p - f.f[0], Polynomial.zero(f.vars)))
    v = NormalizeVerdict.MODEL_EQUIVALENT if res.verdict is Verdict.EQUIVALENT else NormalizeVerdict.INCONCLUSIVE
    return v, res


def grading_table(r: T1Result, vars: Sequence[str]) -> List[Tuple[Fraction, List[str]]]:
    if r.grading is None:
        return []
    return [(nu, [term_label(t, vars) for t in terms]) for nu, terms in r.grading.items()]
