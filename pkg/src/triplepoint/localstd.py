"""Standard bases over the local ring at the origin.

Computations happen in ``Q[x]_(x)^p``: free modules over the polynomial ring
localized at the maximal ideal.  Module elements are vectors of
:class:`~triplepoint.poly.Polynomial`; internally they are flattened to dicts
keyed by ``(component, exponents)``.

Orders are local degree orders: a term with *smaller* (weighted, shifted)
degree is *larger*.  Reduction uses Mora's normal form, which picks the
reducer of least ecart and may add intermediate remainders to the reducer
set; this is what makes reduction terminate although the order is not a
well-order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import ContextError, Monomial, Polynomial

Term = Tuple[int, Monomial]  # (component, exponents)
_Elem = Dict[Term, Fraction]

INFINITE = math.inf


@dataclass(frozen=True)
class LocalOrder:
    """Local degree order on module terms ``x^alpha e_i``.

    deg(x^alpha e_i) = <weights, alpha> - shifts[i].  Lower degree is
    larger.  Ties: if ``position_first``, higher component index is larger;
    then exponents are compared lexicographically with the *last* variable
    most significant; then (if not ``position_first``) by component.
    """

    weights: Optional[Tuple[Fraction, ...]] = None
    shifts: Optional[Tuple[Fraction, ...]] = None
    position_first: bool = True

    def __post_init__(self):
        if self.weights is not None:
            w = tuple(Fraction(x) for x in self.weights)
            if any(x <= 0 for x in w):
                raise ValueError("local order weights must be positive")
            object.__setattr__(self, "weights", w)
        if self.shifts is not None:
            object.__setattr__(self, "shifts", tuple(Fraction(x) for x in self.shifts))

    @classmethod
    def from_degrees_weights(cls, dw) -> "LocalOrder":
        return cls(weights=dw.a.a, shifts=dw.d)

    def degree(self, term: Term):
        comp, mon = term
        if self.weights is None:
            d = sum(mon)
        else:
            d = sum((w * e for w, e in zip(self.weights, mon)), Fraction(0))
        if self.shifts is not None:
            d -= self.shifts[comp]
        return d

    def key(self, term: Term):
        """Sort key: larger key == larger in the order."""
        comp, mon = term
        lex = tuple(reversed(mon))
        if self.position_first:
            return (-self.degree(term), comp, lex)
        return (-self.degree(term), lex, comp)


DEFAULT_ORDER = LocalOrder()


class ModuleElement:
    """Vector of polynomials (an element of ``O^p``)."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[Polynomial]):
        comps = tuple(components)
        if not comps:
            raise ValueError("a module element needs at least one component")
        vars = comps[0].vars
        if any(c.vars != vars for c in comps):
            raise ContextError("components live over different contexts")
        self.components = comps

    @classmethod
    def unit(cls, vars: Sequence[str], rank: int, i: int) -> "ModuleElement":
        return cls([Polynomial.constant(vars, int(j == i)) for j in range(rank)])

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def vars(self):
        return self.components[0].vars

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        return ModuleElement([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return ModuleElement([a - b for a, b in zip(self.components, other.components)])

    def scale(self, p) -> "ModuleElement":
        return ModuleElement([p * c for c in self.components])

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def as_element(g, rank: int = 1) -> ModuleElement:
    if isinstance(g, ModuleElement):
        return g
    if isinstance(g, Polynomial):
        return ModuleElement([g])
    return ModuleElement(list(g))


# -- flat representation ----------------------------------------------

def _flatten(e: ModuleElement) -> _Elem:
    out = {}
    for i, c in enumerate(e.components):
        for m, v in c.terms().items():
            out[(i, m)] = v
    return out


def _unflatten(d: _Elem, vars, rank) -> ModuleElement:
    comps = [dict() for _ in range(rank)]
    for (i, m), v in d.items():
        comps[i][m] = v
    return ModuleElement([Polynomial(vars, c) for c in comps])


class _Ctx:
    """Caches leading data for flat elements under one order."""

    def __init__(self, order: LocalOrder):
        self.order = order

    def lead(self, f: _Elem) -> Term:
        return max(f, key=self.order.key)

    def ecart(self, f: _Elem, lt: Term) -> Fraction:
        deg = self.order.degree
        return max(deg(t) for t in f) - deg(lt)


def _divides(a: Term, b: Term) -> bool:
    return a[0] == b[0] and all(x <= y for x, y in zip(a[1], b[1]))


def _sub_multiple(h: _Elem, g: _Elem, shift: Monomial, c: Fraction) -> _Elem:
    """h - c * x^shift * g"""
    out = dict(h)
    for (i, m), v in g.items():
        t = (i, tuple(a + b for a, b in zip(m, shift)))
        s = out.get(t, 0) - c * v
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


def _monic(f: _Elem, lt: Term) -> _Elem:
    c = f[lt]
    if c == 1:
        return f
    inv = 1 / c
    return {t: v * inv for t, v in f.items()}


@dataclass
class _Entry:
    poly: _Elem
    lead: Term
    ecart: Fraction
    index: int


def _mora_nf(f: _Elem, reducers: List[_Entry], ctx: _Ctx) -> _Elem:
    h = f
    T = list(reducers)
    extra = len(T)
    while h:
        lt_h = ctx.lead(h)
        cands = [g for g in T if _divides(g.lead, lt_h)]
        if not cands:
            break
        g = min(cands, key=lambda e: (e.ecart, e.index))
        e_h = ctx.ecart(h, lt_h)
        if g.ecart > e_h:
            T.append(_Entry(h, lt_h, e_h, extra))
            extra += 1
        shift = tuple(b - a for a, b in zip(g.lead[1], lt_h[1]))
        h = _sub_multiple(h, g.poly, shift, h[lt_h] / g.poly[g.lead])
    return h


def _entry(f: _Elem, ctx: _Ctx, index: int) -> _Entry:
    lt = ctx.lead(f)
    f = _monic(f, lt)
    return _Entry(f, lt, ctx.ecart(f, lt), index)


def _check_family(elems: Sequence[ModuleElement]):
    if not elems:
        return None, None
    vars, rank = elems[0].vars, elems[0].rank
    for e in elems:
        if e.rank != rank:
            raise ValueError(f"rank mismatch: {e.rank} vs {rank}")
        if e.vars != vars:
            raise ContextError("elements live over different contexts")
    return vars, rank


def mora_normal_form(e, basis: Sequence, order: LocalOrder = DEFAULT_ORDER) -> ModuleElement:
    """Weak normal form of ``e`` with respect to ``basis`` (Mora)."""
    e = as_element(e)
    basis = [as_element(b) for b in basis]
    _check_family([e] + basis)
    ctx = _Ctx(order)
    reducers = [_entry(_flatten(b), ctx, i) for i, b in enumerate(basis) if not b.is_zero()]
    h = _mora_nf(_flatten(e), reducers, ctx)
    return _unflatten(h, e.vars, e.rank)


@dataclass
class StandardBasis:
    generators: List[ModuleElement]
    order: LocalOrder
    leads: List[Term] = field(default_factory=list)
    vars: Tuple[str, ...] = ()
    rank: int = 1

    def staircase(self) -> List[Term]:
        """Minimal generators of the leading-term module."""
        out = []
        for t in sorted(set(self.leads), key=lambda t: (t[0], sum(t[1]), t[1])):
            if not any(_divides(s, t) for s in out):
                out.append(t)
        return out

    def normal_form(self, e) -> ModuleElement:
        return mora_normal_form(e, self.generators, self.order)

    def contains(self, e) -> bool:
        return self.normal_form(e).is_zero()


def standard_basis(gens: Sequence, order: LocalOrder = DEFAULT_ORDER) -> StandardBasis:
    """Standard basis of the submodule of ``O^p`` generated by ``gens``."""
    gens = [as_element(g) for g in gens]
    vars, rank = _check_family(gens)
    if vars is None:
        raise ValueError("need at least one generator")
    ctx = _Ctx(order)
    basis: List[_Entry] = []
    for g in gens:
        f = _flatten(g)
        if f:
            basis.append(_entry(f, ctx, len(basis)))
    pairs = [(i, j) for i, j in combinations(range(len(basis)), 2)
             if basis[i].lead[0] == basis[j].lead[0]]

    def lcm_deg(pair):
        a, b = basis[pair[0]].lead, basis[pair[1]].lead
        lcm = (a[0], tuple(max(x, y) for x, y in zip(a[1], b[1])))
        return (order.degree(lcm), pair)

    while pairs:
        pairs.sort(key=lcm_deg)
        i, j = pairs.pop(0)
        a, b = basis[i], basis[j]
        lcm = tuple(max(x, y) for x, y in zip(a.lead[1], b.lead[1]))
        sa = tuple(z - x for x, z in zip(a.lead[1], lcm))
        sb = tuple(z - x for x, z in zip(b.lead[1], lcm))
        s = _sub_multiple({}, a.poly, sa, Fraction(-1))
        s = _sub_multiple(s, b.poly, sb, Fraction(1))
        h = _mora_nf(s, basis, ctx)
        if h:
            new = _entry(h, ctx, len(basis))
            k = len(basis)
            basis.append(new)
            pairs.extend((m, k) for m in range(k) if basis[m].lead[0] == new.lead[0])
    # drop redundant elements (leading term divisible by another's)
    keep = []
    for e in basis:
        if any(_divides(o.lead, e.lead) and (o.lead != e.lead or o.index < e.index)
               for o in basis if o is not e):
            continue
        keep.append(e)
    return StandardBasis(
        generators=[_unflatten(e.poly, vars, rank) for e in keep],
        order=order,
        leads=[e.lead for e in keep],
        vars=vars,
        rank=rank,
    )


@dataclass(frozen=True)
class QuotientBasis:
    dimension: float  # int, or INFINITE
    basis: Tuple[Term, ...]
    vars: Tuple[str, ...] = ()

    @property
    def finite(self) -> bool:
        return self.dimension != INFINITE

    def labels(self) -> List[str]:
        return [term_label(t, self.vars, multi=True) for t in self.basis]


def term_label(term: Term, vars: Sequence[str], multi: bool = True) -> str:
    comp, mon = term
    m = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(vars, mon) if e)
    if not multi:
        return m or "1"
    return f"{m}*e{comp + 1}" if m else f"e{comp + 1}"


def _basis_key(t: Term):
    return (t[0], sum(t[1]), tuple(-e for e in t[1]))


def staircase_complement(stairs: Sequence[Term], nvars: int, rank: int):
    """Monomials outside the staircase, or ``None`` if there are infinitely many."""
    out = []
    for comp in range(rank):
        gens = [t[1] for t in stairs if t[0] == comp]
        if any(not any(m) for m in gens):
            continue
        for j in range(nvars):
            if not any(m[j] and all(e == 0 for k, e in enumerate(m) if k != j) for m in gens):
                return None
        seen = set()
        frontier = [(0,) * nvars]
        while frontier:
            m = frontier.pop()
            if m in seen or any(all(a <= b for a, b in zip(g, m)) for g in gens):
                continue
            seen.add(m)
            for j in range(nvars):
                frontier.append(tuple(e + (k == j) for k, e in enumerate(m)))
        out.extend((comp, m) for m in seen)
    return sorted(out, key=_basis_key)


def quotient_dimension(rank: int, gens: Sequence, order: LocalOrder = DEFAULT_ORDER,
                       vars: Sequence[str] | None = None) -> QuotientBasis:
    """Dimension and monomial basis of ``O^rank / <gens>``."""
    gens = [as_element(g) for g in gens if not as_element(g).is_zero()]
    if not gens:
        if vars is None:
            raise ValueError("need the variable context when there are no generators")
        if vars:
            return QuotientBasis(INFINITE, (), tuple(vars))
        return QuotientBasis(rank, tuple((i, ()) for i in range(rank)), ())
    if gens[0].rank != rank:
        raise ValueError(f"rank mismatch: generators have rank {gens[0].rank}, expected {rank}")
    sb = standard_basis(gens, order)
    comp = staircase_complement(sb.staircase(), len(sb.vars), rank)
    if comp is None:
        return QuotientBasis(INFINITE, (), sb.vars)
    return QuotientBasis(len(comp), tuple(comp), sb.vars)


def ideal_membership(p: Polynomial, gens: Sequence[Polynomial], order: LocalOrder = DEFAULT_ORDER) -> bool:
    if p.is_zero():
        return True
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return False
    return standard_basis(gens, order).contains(p)


def local_dimension(gens: Sequence[Polynomial], order: LocalOrder = DEFAULT_ORDER) -> int:
    """Krull dimension of ``O / <gens>`` (via the leading ideal); -1 if it is the unit ideal."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    n = gens[0].nvars
    stairs = [t[1] for t in standard_basis(gens, order).staircase()]
    if any(not any(m) for m in stairs):
        return -1
    best = 0
    for size in range(n, 0, -1):
        for S in combinations(range(n), size):
            # S is independent if no leading monomial is supported inside S
            if not any(all(m[j] == 0 for j in range(n) if j not in S) for m in stairs):
                return size
    return best
