from fractions import Fraction

import pytest
from hypothesis import given

from conftest import VARS3, polynomials
from triplepoint.parser import GRAMMAR, ParseError, UnknownVariableError, parse_polynomial, parse_vars
from triplepoint.poly import Polynomial


@pytest.mark.parametrize("text, expected", [
    ("x^2", {(2, 0, 0): 1}),
    ("x**2", {(2, 0, 0): 1}),
    ("-x", {(1, 0, 0): -1}),
    ("--x", {(1, 0, 0): 1}),
    ("3/4*y", {(0, 1, 0): Fraction(3, 4)}),
    ("(x+y)^2 - 2*x*y", {(2, 0, 0): 1, (0, 2, 0): 1}),
    ("x*y/2", {(1, 1, 0): Fraction(1, 2)}),
    ("  z ^ 3 ", {(0, 0, 3): 1}),
])
def test_parses(text, expected):
    assert parse_polynomial(text, VARS3) == Polynomial(VARS3, expected)


@pytest.mark.parametrize("text", ["x+", "x^y", "(x", "x)", "3x y", "x^-1", "x/y", "x/0", "", "x $ y"])
def test_rejects(text):
    with pytest.raises(ParseError):
        parse_polynomial(text, VARS3)


def test_error_position():
    with pytest.raises(ParseError) as exc:
        parse_polynomial("x + * y", VARS3)
    assert exc.value.pos == 4


def test_unknown_variable():
    with pytest.raises(UnknownVariableError):
        parse_polynomial("x + w", VARS3)


def test_grammar_text():
    assert "expr" in GRAMMAR and "atom" in GRAMMAR


def test_parse_vars():
    assert parse_vars("x, y,z") == ("x", "y", "z")


@given(polynomials())
def test_round_trip(p):
    assert parse_polynomial(str(p), VARS3) == p
