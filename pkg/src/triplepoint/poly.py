"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` carries its own ordered variable context.  Exponent
tuples (``Monomial``) are indexed by position in that context.  All values
are immutable; arithmetic returns new objects.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


class ContextError(ValueError):
    """Operands live over different variable lists, or a name is unknown."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact scalar: {c!r}")


class Polynomial:
    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Monomial, Scalar] | None = None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ContextError(f"duplicate variable names in {vars}")
        clean: Dict[Monomial, Fraction] = {}
        for mon, c in (terms or {}).items():
            mon = tuple(mon)
            if len(mon) != len(vars) or any(e < 0 for e in mon):
                raise ValueError(f"bad exponent vector {mon} for variables {vars}")
            c = _as_fraction(c)
            if c:
                clean[mon] = clean.get(mon, Fraction(0)) + c
                if not clean[mon]:
                    del clean[mon]
        self._vars = vars
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, vars: Sequence[str]) -> "Polynomial":
        return cls(vars)

    @classmethod
    def constant(cls, vars: Sequence[str], c: Scalar) -> "Polynomial":
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, vars: Sequence[str], name: str) -> "Polynomial":
        vars = tuple(vars)
        if name not in vars:
            raise ContextError(f"unknown variable {name!r}")
        i = vars.index(name)
        return cls(vars, {tuple(int(j == i) for j in range(len(vars))): 1})

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Monomial, c: Scalar = 1) -> "Polynomial":
        return cls(vars, {tuple(exps): c})

    @classmethod
    def _raw(cls, vars: Tuple[str, ...], terms: Dict[Monomial, Fraction]) -> "Polynomial":
        # trusted path: terms already clean
        p = object.__new__(cls)
        p._vars = vars
        p._terms = terms
        p._hash = None
        return p

    # -- accessors ----------------------------------------------------
    @property
    def vars(self) -> Tuple[str, ...]:
        return self._vars

    @property
    def nvars(self) -> int:
        return len(self._vars)

    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        """Terms in canonical (printing) order."""
        for mon in sorted(self._terms, key=self._print_key, reverse=True):
            yield mon, self._terms[mon]

    def monomials(self) -> list:
        return [m for m, _ in self.items()]

    def coefficient(self, mon: Monomial) -> Fraction:
        return self._terms.get(tuple(mon), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def order(self) -> float:
        """Lowest total degree of a term (the multiplicity at the origin)."""
        return min((sum(m) for m in self._terms), default=math.inf)

    def degree_in(self, name: str) -> int:
        i = self._index(name)
        return max((m[i] for m in self._terms), default=-1)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self._vars, {m: c for m, c in self._terms.items() if sum(m) == d})

    def free_variables(self) -> Tuple[str, ...]:
        used = [any(m[i] for m in self._terms) for i in range(self.nvars)]
        return tuple(v for v, u in zip(self._vars, used) if u)

    def _index(self, name: str) -> int:
        try:
            return self._vars.index(name)
        except ValueError:
            raise ContextError(f"unknown variable {name!r}; context is {self._vars}") from None

    def _print_key(self, mon: Monomial):
        # descending total degree, then lex with variables taken in name order
        perm = sorted(range(self.nvars), key=lambda i: self._vars[i])
        return (sum(mon), tuple(mon[i] for i in perm))

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._vars != self._vars:
                raise ContextError(f"variable contexts differ: {self._vars} vs {other._vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self._vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self._vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self._vars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.zero(self._vars)
            return Polynomial._raw(self._vars, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw(self._vars, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            return self * (Fraction(1) / other)
        if isinstance(other, Polynomial) and other.is_constant() and other:
            return self / other.constant_term()
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self._vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, exps: Monomial, c: Scalar = 1) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self._vars)
        return Polynomial._raw(
            self._vars,
            {tuple(a + b for a, b in zip(m, exps)): v * c for m, v in self._terms.items()},
        )

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._terms == ({} if not other else {(0,) * self.nvars: Fraction(other)})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._vars == other._vars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution ------------------------------------
    def diff(self, name: str) -> "Polynomial":
        i = self._index(name)
        out = {}
        for m, c in self._terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return Polynomial._raw(self._vars, out)

    def substitute(self, mapping: Mapping[str, Union["Polynomial", Scalar]]) -> "Polynomial":
        """Replace variables by polynomials (over this context) or scalars."""
        images = []
        for i, v in enumerate(self._vars):
            if v in mapping:
                img = mapping[v]
                images.append(img if isinstance(img, Polynomial) else _as_fraction(img))
            else:
                images.append(None)
        for name in mapping:
            self._index(name)
        powers: Dict[Tuple[int, int], object] = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                img = images[i]
                powers[key] = img ** e
            return powers[key]

        result = Polynomial.zero(self._vars)
        for m, c in self._terms.items():
            keep = tuple(0 if images[i] is not None else e for i, e in enumerate(m))
            term = Polynomial._raw(self._vars, {keep: c})
            for i, e in enumerate(m):
                if e and images[i] is not None:
                    term = term * power(i, e)
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Evaluate at a point that assigns every variable of the context."""
        vals = [_as_fraction(point[v]) for v in self._vars]
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for x, e in zip(vals, m):
                if e:
                    t *= x ** e
            total += t
        return total

    def translate(self, point: Mapping[str, Scalar]) -> "Polynomial":
        """Move ``point`` to the origin: substitute v -> v + point[v]."""
        return self.substitute(
            {v: Polynomial.variable(self._vars, v) + _as_fraction(c) for v, c in point.items()}
        )

    def embed(self, vars: Sequence[str]) -> "Polynomial":
        """Re-express over a context containing every used variable."""
        vars = tuple(vars)
        idx = []
        for v in self.free_variables():
            if v not in vars:
                raise ContextError(f"variable {v!r} missing from target context {vars}")
        pos = {v: i for i, v in enumerate(self._vars)}
        for v in vars:
            idx.append(pos.get(v))
        out = {}
        for m, c in self._terms.items():
            out[tuple(m[j] if j is not None else 0 for j in idx)] = c
        return Polynomial._raw(vars, out)

    def content_normalized(self) -> "Polynomial":
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if self.is_zero():
            return self
        items = list(self.items())
        den = math.lcm(*(c.denominator for _, c in items))
        num = math.gcd(*(int(c * den) for _, c in items))
        scale = Fraction(den, num)
        if items[0][1] < 0:
            scale = -scale
        return self * scale

    # -- printing -----------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, (m, c) in enumerate(self.items()):
            mon = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self._vars, m) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mon:
                body = str(a)
            elif a == 1:
                body = mon
            else:
                body = f"{a}*{mon}"
            if k == 0:
                parts.append(("-" if sign == "-" else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, vars={self._vars})"


def variables(names: Sequence[str]) -> Tuple[Polynomial, ...]:
    """Generator polynomials for a context, e.g. ``x, y, z = variables("xyz")``."""
    names = tuple(names)
    return tuple(Polynomial.variable(names, v) for v in names)


def partial_derivative(p: Polynomial, var: str) -> Polynomial:
    return p.diff(var)


# -- weights ----------------------------------------------------------

@dataclass(frozen=True)
class WeightSystem:
    a: Tuple[Fraction, ...]

    def __post_init__(self):
        a = tuple(_as_fraction(x) for x in self.a)
        if any(x <= 0 for x in a):
            raise ValueError(f"weights must be positive, got {a}")
        object.__setattr__(self, "a", a)

    def __len__(self):
        return len(self.a)

    def degree(self, mon: Monomial) -> Fraction:
        return sum((w * e for w, e in zip(self.a, mon)), Fraction(0))

    def scaled(self, lam) -> "WeightSystem":
        return WeightSystem(tuple(x * lam for x in self.a))


@dataclass(frozen=True)
class DegreesWeights:
    d: Tuple[Fraction, ...]
    a: WeightSystem

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(_as_fraction(x) for x in self.d))
        if not isinstance(self.a, WeightSystem):
            object.__setattr__(self, "a", WeightSystem(self.a))

    def scaled(self, lam) -> "DegreesWeights":
        lam = _as_fraction(lam)
        return DegreesWeights(tuple(x * lam for x in self.d), self.a.scaled(lam))


def _weights(a) -> WeightSystem:
    return a if isinstance(a, WeightSystem) else WeightSystem(tuple(a))


def weighted_valuation(p: Polynomial, a) -> Fraction | float:
    """Minimum weighted degree over the terms of ``p``; ``inf`` for zero."""
    a = _weights(a)
    if len(a) != p.nvars:
        raise ContextError("weight count does not match variable count")
    return min((a.degree(m) for m in p.terms()), default=math.inf)


def lowest_weighted_form(p: Polynomial, a) -> Polynomial:
    a = _weights(a)
    v = weighted_valuation(p, a)
    return Polynomial(p.vars, {m: c for m, c in p.terms().items() if a.degree(m) == v})


def is_quasi_homogeneous(p: Polynomial, d, a) -> bool:
    a = _weights(a)
    d = _as_fraction(d)
    return all(a.degree(m) == d for m in p.terms())


def _nullspace(rows: list, ncols: int) -> list:
    """Basis of the right nullspace of a rational matrix (exact)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def find_weights(fs: Sequence[Polynomial]) -> DegreesWeights | None:
    """Positive degrees and weights making every ``f_i`` quasi-homogeneous.

    Normalized so the smallest weight is 1.  When several weight systems
    exist, the one minimizing the weight sum (subject to all weights >= 1)
    is returned.  ``None`` when no positive system exists.
    """
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one polynomial")
    vars = fs[0].vars
    for f in fs:
        if f.vars != vars:
            raise ContextError("all components must share a context")
        if f.is_zero():
            raise ValueError("components must be nonzero")
    n, p = len(vars), len(fs)
    # unknowns: a_1..a_n, d_1..d_p;  <a, alpha> - d_i = 0 for every term
    rows = []
    for i, f in enumerate(fs):
        for m in f.terms():
            row = [Fraction(e) for e in m] + [Fraction(0)] * p
            row[n + i] = Fraction(-1)
            rows.append(row)
    null = _nullspace(rows, n + p)
    if not null:
        return None
    if len(null) == 1:
        v = null[0]
        if v[0] < 0:
            v = [-x for x in v]
        sol = v
    else:
        sol = _lp_weights(null, n, p)
        if sol is None:
            return None
    if any(x <= 0 for x in sol):
        return None
    lo = min(sol[:n])
    sol = [x / lo for x in sol]
    return DegreesWeights(tuple(sol[n:]), WeightSystem(tuple(sol[:n])))


def _lp_weights(null: list, n: int, p: int):
    # minimize sum(a) over the nullspace cone with a_j >= 1, then recover
    # the exact vertex from its active set
    import numpy as np
    from scipy.optimize import linprog

    k = len(null)
    B = np.array([[float(x) for x in v] for v in null]).T  # (n+p) x k
    c = B[:n].sum(axis=0)
    A_ub = -B  # B @ lam >= 1 on weights, >= 1 on degrees too (f_i(0)=0 forces d_i >= min weight)
    b_ub = -np.ones(n + p)
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * k, method="highs")
    if res.status != 0:
        return None
    approx = B @ res.x
    active = [i for i in range(n + p) if abs(approx[i] - 1.0) < 1e-7]
    # exact solve: B_active lam = 1 (least-norm not needed; choose independent rows)
    rows = [[null[j][i] for j in range(k)] + [Fraction(1)] for i in active]
    lam = _solve_consistent(rows, k)
    if lam is None:
        return None
    sol = [sum((lam[j] * null[j][i] for j in range(k)), Fraction(0)) for i in range(n + p)]
    if any(x < 1 for x in sol):
        return None
    return sol


def _solve_consistent(aug: list, k: int):
    m = [list(r) for r in aug]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(all(x == 0 for x in row[:k]) and row[k] for row in m):
        return None
    if len(pivots) < k:
        return None
    lam = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        lam[c] = m[i][k]
    return lam


def coerce_all(polys: Iterable[Polynomial]) -> Tuple[str, ...]:
    """Shared context of a family of polynomials, or raise."""
    polys = list(polys)
    if not polys:
        raise ValueError("empty family")
    vars = polys[0].vars
    for q in polys[1:]:
        if q.vars != vars:
            raise ContextError("polynomials live over different contexts")
    return vars
