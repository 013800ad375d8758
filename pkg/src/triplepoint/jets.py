"""Truncated linear algebra in jet spaces: an oracle for local quotients.

For a submodule ``M`` of ``O^p`` the jet quotient ``O^p / (M + m^B O^p)`` is
finite-dimensional and computable by row reduction: ``M`` mod ``m^B`` is
spanned by ``x^beta * g`` truncated below degree ``B``.  If the dimension
does not change from ``B`` to ``B + 1`` then ``m^B O^p`` lies in
``M + m^(B+1) O^p`` and, by Nakayama, in ``M``; so the stabilized value is
the true local quotient dimension.

Shares nothing with :mod:`triplepoint.localstd` beyond the polynomial type.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Sequence, Tuple

from .poly import Polynomial

DEFAULT_BOUND = 30


def _monomials_below(n: int, B: int) -> List[Tuple[int, ...]]:
    out = []
    for d in range(B):
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for j in combo:
                e[j] += 1
            out.append(tuple(e))
    return out


def _as_vectors(gens) -> List[Tuple[Polynomial, ...]]:
    out = []
    for g in gens:
        if isinstance(g, Polynomial):
            out.append((g,))
        else:
            out.append(tuple(g))
    return out


class _Echelon:
    """Incremental sparse row echelon form over Q."""

    def __init__(self):
        self.rows: Dict[object, Dict[object, Fraction]] = {}

    def add(self, row: Dict[object, Fraction]) -> bool:
        row = dict(row)
        while row:
            piv = min(row, key=_col_key)
            if piv not in self.rows:
                inv = 1 / row[piv]
                self.rows[piv] = {k: v * inv for k, v in row.items()}
                return True
            base = self.rows[piv]
            c = row[piv]
            for k, v in base.items():
                s = row.get(k, 0) - c * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
        return False

    def reduces_to_zero(self, row: Dict[object, Fraction]) -> bool:
        row = dict(row)
        while row:
            piv = min(row, key=_col_key)
            if piv not in self.rows:
                return False
            base = self.rows[piv]
            c = row[piv]
            for k, v in base.items():
                s = row.get(k, 0) - c * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def _col_key(col):
    comp, mon = col
    return (sum(mon), comp, mon)


def _jet_image(vecs, n: int, B: int) -> _Echelon:
    ech = _Echelon()
    shifts = _monomials_below(n, B)
    for vec in vecs:
        order = min((sum(m) for c in vec for m in c.terms()), default=math.inf)
        for s in shifts:
            if sum(s) + order >= B:
                continue
            row = {}
            for comp, c in enumerate(vec):
                for m, v in c.terms().items():
                    mm = tuple(a + b for a, b in zip(m, s))
                    if sum(mm) < B:
                        row[(comp, mm)] = v
            if row:
                ech.add(row)
    return ech


def jet_quotient_dimension(gens, B: int, rank: int | None = None) -> int:
    """dim of O^p / (M + m^B O^p)."""
    vecs = _as_vectors(gens)
    rank = rank if rank is not None else len(vecs[0])
    n = vecs[0][0].nvars
    total = rank * len(_monomials_below(n, B))
    return total - _jet_image(vecs, n, B).rank


def stabilized_dimension(gens, rank: int | None = None, bound: int = DEFAULT_BOUND):
    """(dimension, B) once the jet quotient stabilizes, else (inf, bound)."""
    prev = None
    for B in range(1, bound + 1):
        d = jet_quotient_dimension(gens, B, rank)
        if prev is not None and d == prev:
            return d, B - 1
        prev = d
    return math.inf, bound


def jet_growth(gens, bound: int, rank: int | None = None) -> List[int]:
    """Jet quotient dimensions for B = 1..bound (to exhibit unbounded growth)."""
    return [jet_quotient_dimension(gens, B, rank) for B in range(1, bound + 1)]


def jet_membership(p, gens, bound: int = DEFAULT_BOUND) -> bool:
    """Local membership of ``p`` in ``<gens>`` for a finite-colength submodule."""
    dim, B = stabilized_dimension(gens, bound=bound)
    if dim == math.inf:
        raise ValueError("membership oracle needs a finite-colength submodule")
    vec = _as_vectors([p])[0]
    vecs = _as_vectors(gens)
    n = vecs[0][0].nvars
    ech = _jet_image(vecs, n, B)
    row = {}
    for comp, c in enumerate(vec):
        for m, v in c.terms().items():
            if sum(m) < B:
                row[(comp, m)] = v
    return ech.reduces_to_zero(row)
