import random
from fractions import Fraction

import pytest

from kovacic_aim.errors import (
    ExprSyntaxError,
    NonIntegerExponent,
    NonLaurentDivision,
    ParseError,
    UndeclaredSymbol,
)
from kovacic_aim.laurent import LaurentPolynomial
from kovacic_aim.params import ParamElement, ParamSpace
from kovacic_aim.parser import ExprSource, format_laurent, parse, parse_param, tokenize

SPACE = ParamSpace.parse_declaration("alpha,beta,r:inv")
alpha = SPACE.symbol("alpha")
beta = SPACE.symbol("beta")
r = SPACE.symbol("r")


@pytest.mark.parametrize("text, terms", [
    ("x^2 + 5 + 2*x^-2", {2: 1, 0: 5, -2: 2}),
    ("x^2 + 5 + 2/x^2", {2: 1, 0: 5, -2: 2}),
    ("(x + 1/x)^2", {2: 1, 0: 2, -2: 1}),
    ("x + 5/(16*x^2)", {1: 1, -2: Fraction(5, 16)}),
    ("-x^(-3) + 3/4", {-3: -1, 0: Fraction(3, 4)}),
    ("--x", {1: 1}),
    ("2*3^2", {0: 18}),
    ("x^0", {0: 1}),
    ("x - x", {}),
])
def test_parse_concrete(text, terms):
    assert parse(text) == LaurentPolynomial(terms)


def test_parse_parameters():
    p = parse("(x + beta/2)^2 + (alpha^2 - 1)/(4*x^2)", SPACE)
    assert p.coeff(2) == 1
    assert p.coeff(1) == beta
    assert p.coeff(0) == beta * beta / 4
    assert p.coeff(-2) == (alpha * alpha - 1) / 4
    assert parse("x/r", SPACE) == LaurentPolynomial({1: r.inverse()})
    assert parse(ExprSource("alpha*x", SPACE)) == LaurentPolynomial({1: alpha})


def test_parse_param():
    assert parse_param("alpha^2 - 1", SPACE) == alpha * alpha - 1
    assert parse_param("3", SPACE) == ParamElement.constant(3)
    with pytest.raises(ExprSyntaxError):
        parse_param("alpha*x", SPACE)


@pytest.mark.parametrize("text, error, position", [
    ("x +", ExprSyntaxError, 3),
    ("x + * 2", ExprSyntaxError, 4),
    ("(x + 1", ExprSyntaxError, 6),
    ("x ^ y", NonIntegerExponent, 4),
    ("x^2.5", NonIntegerExponent, 2),
    ("2.5*x", ExprSyntaxError, 0),
    ("x + y", UndeclaredSymbol, 4),
    ("1/(x + 1)", NonLaurentDivision, 2),
    ("1/0", NonLaurentDivision, 2),
    ("3 $ x", ExprSyntaxError, 2),
    ("x^2 + ²", ExprSyntaxError, 6),
    ("٣*x", ExprSyntaxError, 0),
    ("x^²", ExprSyntaxError, 2),
    ("x^(1 + 1)", NonIntegerExponent, 5),
])
def test_parse_errors(text, error, position):
    with pytest.raises(error) as info:
        parse(text)
    assert isinstance(info.value, ParseError)
    assert info.value.position == position


def test_errors_name_what_was_expected():
    with pytest.raises(ExprSyntaxError) as info:
        parse("x +")
    assert "end of input" in str(info.value)
    assert info.value.expected


def test_non_invertible_division():
    with pytest.raises(NonLaurentDivision):
        parse("x/alpha", SPACE)
    with pytest.raises(NonIntegerExponent):
        parse("x^x")


def test_tokenize_positions():
    tokens = tokenize("12*x^-1")
    assert [t.type for t in tokens] == ["INT", "MUL", "X", "POW", "MINUS", "INT", "EOF"]
    assert [t.pos for t in tokens] == [0, 2, 3, 4, 5, 6, 7]


@pytest.mark.parametrize("terms, text", [
    ({2: 1, 0: 5, -2: 2}, "x^2 + 5 + 2*x^-2"),
    ({1: -1, -1: Fraction(-1, 2)}, "-x - 1/2*x^-1"),
    ({0: Fraction(3, 4)}, "3/4"),
    ({}, "0"),
])
def test_format(terms, text):
    assert format_laurent(LaurentPolynomial(terms)) == text


def test_format_parameter_coefficients():
    p = LaurentPolynomial({-2: (alpha * alpha - 1) / 4, 1: -beta, 0: 2 * r.inverse()})
    text = format_laurent(p)
    assert text == "-beta*x + 2*r^-1 + (1/4*alpha^2 - 1/4)*x^-2"
    assert parse(text, SPACE) == p


def _random_coefficient(rng, symbolic):
    value = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    if not symbolic or rng.random() < 0.5:
        return value
    mono = rng.choice([alpha, beta, r, r.inverse(), alpha * beta, alpha * alpha + 1])
    return value * mono + rng.randint(-2, 2)


@pytest.mark.parametrize("symbolic", [False, True])
def test_round_trip(symbolic):
    rng = random.Random(20240917)
    for _ in range(250):
        terms = {rng.randint(-6, 6): _random_coefficient(rng, symbolic) for _ in range(rng.randint(0, 5))}
        p = LaurentPolynomial(terms)
        assert parse(format_laurent(p), SPACE) == p
