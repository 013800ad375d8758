"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*          # "/" needs a constant divisor
    unary   := ("+" | "-") unary | power
    power   := atom (("^" | "**") INTEGER)?
    atom    := NUMBER | NAME | "(" expr ")"
    NUMBER  := digits ("/" digits)?                 # 3, 3/4 (as a literal)
    NAME    := letter (letter | digit | "_")*

The result is always the expanded canonical form over the given variables.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Sequence, Tuple

from .poly import Polynomial

GRAMMAR = __doc__.split("Grammar::", 1)[1].split("The result", 1)[0].rstrip()

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))"
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class UnknownVariableError(ParseError):
    pass


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, vars: Sequence[str]):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = tuple(vars)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[1] in ("*", "/"):
            op, pos = self.take()[1:]
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError("division by a non-constant or zero", pos)
                p = p / q.constant_term()
        return p

    def unary(self):
        if self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            p = self.unary()
            return -p if op == "-" else p
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer literal", pos)
            base = base ** int(val)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            # a/b directly between two integer literals is a rational literal
            if (
                self.peek()[1] == "/"
                and self.toks[self.i + 1][0] == "num"
                and self.toks[self.i + 2][1] not in ("^", "**")
            ):
                self.take()
                _, den, dpos = self.take()
                if int(den) == 0:
                    raise ParseError("zero denominator", dpos)
                return Polynomial.constant(self.vars, Fraction(int(val), int(den)))
            return Polynomial.constant(self.vars, int(val))
        if kind == "name":
            if val not in self.vars:
                raise UnknownVariableError(f"unknown variable {val!r}", pos)
            return Polynomial.variable(self.vars, val)
        if val == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_polynomial(text: str, vars: Sequence[str]) -> Polynomial:
    vars = tuple(vars)
    if not vars:
        raise ValueError("need at least one variable")
    if len(set(vars)) != len(vars):
        raise ValueError(f"duplicate variable names in {vars}")
    return _Parser(text, vars).parse()


def parse_vars(spec: str) -> Tuple[str, ...]:
    """``"x,y,z"`` -> ``("x", "y", "z")``."""
    return tuple(v.strip() for v in spec.split(",") if v.strip())
