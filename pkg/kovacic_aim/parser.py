"""
Parser and printer for Laurent polynomial expressions.

Grammar::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := "-" unary | power
    power    := primary ("^" exponent)?
    exponent := "-"? INT | "(" "-"? INT ")"
    primary  := INT | SYMBOL | "x" | "(" expr ")"

Division is only allowed by a single term whose coefficient is a rational
times invertible parameters, so every accepted input stays a Laurent
polynomial. ``format_laurent`` prints in descending exponents and its output
always parses back to the same polynomial.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from kovacic_aim.errors import (
    ExprSyntaxError,
    NonIntegerExponent,
    NonLaurentDivision,
    NotInvertible,
    UndeclaredSymbol,
)
from kovacic_aim.laurent import LaurentPolynomial
from kovacic_aim.params import ParamElement, ParamSpace

_SINGLE = {
    "+": "PLUS",
    "-": "MINUS",
    "*": "MUL",
    "/": "DIV",
    "^": "POW",
    "(": "LPAREN",
    ")": "RPAREN",
}
_SHOW = {v: k for k, v in _SINGLE.items()}
_SHOW.update({"INT": "integer", "ID": "symbol", "X": "x", "EOF": "end of input", "DECIMAL": "decimal"})


@dataclass(frozen=True)
class Token:
    type: str
    value: Union[str, int, None]
    pos: int


@dataclass(frozen=True)
class ExprSource:
    text: str
    params: ParamSpace = field(default_factory=ParamSpace)


def _is_digit(ch: str) -> bool:
    return "0" <= ch <= "9"


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif _is_digit(ch):
            start = i
            while i < len(text) and _is_digit(text[i]):
                i += 1
            if i < len(text) and text[i] == "." and i + 1 < len(text) and _is_digit(text[i + 1]):
                i += 1
                while i < len(text) and _is_digit(text[i]):
                    i += 1
                tokens.append(Token("DECIMAL", text[start:i], start))
            else:
                tokens.append(Token("INT", int(text[start:i]), start))
        elif ch.isalpha() or ch == "_":
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            word = text[start:i]
            tokens.append(Token("X" if word == "x" else "ID", word, start))
        elif ch in _SINGLE:
            tokens.append(Token(_SINGLE[ch], ch, i))
            i += 1
        else:
            raise ExprSyntaxError(f"unexpected character '{ch}'", i)
    tokens.append(Token("EOF", None, len(text)))
    return tokens


class Parser:
    """Recursive descent parser that evaluates straight into Laurent polynomials."""

    def __init__(self, tokens: List[Token], params: ParamSpace):
        self.tokens = tokens
        self.params = params
        self.pos = 0
        self.current_token = self.tokens[self.pos]

    def eat(self, token_type: str) -> Token:
        tok = self.current_token
        if tok.type != token_type:
            self._unexpected([token_type])
        self.pos += 1
        self.current_token = self.tokens[self.pos]
        return tok

    def _unexpected(self, expected: List[str]):
        tok = self.current_token
        if tok.type == "DECIMAL":
            raise ExprSyntaxError(f"decimal literal '{tok.value}' is not supported, write it as a fraction", tok.pos)
        shown = "end of input" if tok.type == "EOF" else f"'{tok.value}'"
        raise ExprSyntaxError(f"unexpected {shown}", tok.pos, [_SHOW[e] for e in expected])

    # --- grammar ------------------------------------------------------------

    def parse(self) -> LaurentPolynomial:
        result = self.expr()
        if self.current_token.type != "EOF":
            self._unexpected(["PLUS", "MINUS", "MUL", "DIV", "POW", "EOF"])
        return result

    def expr(self) -> LaurentPolynomial:
        result = self.term()
        while self.current_token.type in ("PLUS", "MINUS"):
            op = self.eat(self.current_token.type).type
            rhs = self.term()
            result = result + rhs if op == "PLUS" else result - rhs
        return result

    def term(self) -> LaurentPolynomial:
        result = self.unary()
        while self.current_token.type in ("MUL", "DIV"):
            op = self.eat(self.current_token.type).type
            at = self.current_token.pos
            rhs = self.unary()
            result = result * rhs if op == "MUL" else result * self._reciprocal(rhs, at)
        return result

    def unary(self) -> LaurentPolynomial:
        if self.current_token.type == "MINUS":
            self.eat("MINUS")
            return -self.unary()
        return self.power()

    def power(self) -> LaurentPolynomial:
        at = self.current_token.pos
        base = self.primary()
        if self.current_token.type != "POW":
            return base
        self.eat("POW")
        n = self.exponent()
        if n < 0:
            return self._reciprocal(base, at) ** (-n)
        return base ** n

    def exponent(self) -> int:
        tok = self.current_token
        if tok.type == "LPAREN":
            self.eat("LPAREN")
            n = self._signed_int()
            if self.current_token.type != "RPAREN":
                raise NonIntegerExponent("exponents must be integer literals", self.current_token.pos)
            self.eat("RPAREN")
            return n
        return self._signed_int()

    def _signed_int(self) -> int:
        sign = 1
        if self.current_token.type == "MINUS":
            self.eat("MINUS")
            sign = -1
        tok = self.current_token
        if tok.type != "INT":
            raise NonIntegerExponent("exponents must be integer literals", tok.pos)
        self.eat("INT")
        return sign * tok.value

    def primary(self) -> LaurentPolynomial:
        tok = self.current_token
        if tok.type == "INT":
            self.eat("INT")
            return LaurentPolynomial.constant(tok.value)
        if tok.type == "X":
            self.eat("X")
            return LaurentPolynomial.x()
        if tok.type == "ID":
            self.eat("ID")
            if not self.params.is_declared(tok.value):
                raise UndeclaredSymbol(tok.value, tok.pos)
            return LaurentPolynomial.constant(self.params.symbol(tok.value))
        if tok.type == "LPAREN":
            self.eat("LPAREN")
            node = self.expr()
            self.eat("RPAREN")
            return node
        self._unexpected(["INT", "ID", "X", "LPAREN", "MINUS"])

    def _reciprocal(self, value: LaurentPolynomial, at: int) -> LaurentPolynomial:
        if not value:
            raise NonLaurentDivision("division by zero", at)
        if value.term_count() != 1:
            raise NonLaurentDivision("can only divide by a single term such as 2*x^3 or a rational", at)
        (k, c), = value.items()
        if isinstance(c, Fraction):
            return LaurentPolynomial({-k: 1 / c})
        try:
            return LaurentPolynomial({-k: c.inverse()})
        except NotInvertible as exc:
            raise NonLaurentDivision(f"cannot divide by '{c}': {exc}; declare it with ':inv'", at) from exc


def parse(src: Union[ExprSource, str], params: Optional[ParamSpace] = None) -> LaurentPolynomial:
    """Parse an expression in ``x`` and the declared parameters."""
    if isinstance(src, str):
        src = ExprSource(src, params or ParamSpace())
    return Parser(tokenize(src.text), src.params).parse()


def _x_power(k: int) -> str:
    return "x" if k == 1 else f"x^{k}"


def _term_parts(k: int, c) -> Tuple[bool, str]:
    if isinstance(c, ParamElement) and not c.is_monomial:
        body = f"({c})"
        return False, body if k == 0 else f"{body}*{_x_power(k)}"
    if isinstance(c, ParamElement):
        negative, coeff = c.signed_parts()[0]
    else:
        negative, coeff = c < 0, str(abs(c))
    if k == 0:
        return negative, coeff
    if coeff == "1":
        return negative, _x_power(k)
    return negative, f"{coeff}*{_x_power(k)}"


def format_laurent(p: LaurentPolynomial) -> str:
    """Deterministic descending-exponent rendering, e.g. ``x^2 + 3*x^-1``."""
    if not p:
        return "0"
    out = ""
    for i, (k, c) in enumerate(sorted(p.items(), reverse=True)):
        negative, body = _term_parts(k, c)
        if i == 0:
            out = ("-" if negative else "") + body
        else:
            out += (" - " if negative else " + ") + body
    return out


def format_param(e: Union[ParamElement, Fraction, int]) -> str:
    return str(e)


def parse_param(text: str, params: ParamSpace) -> ParamElement:
    """Parse an x-free expression as a parameter polynomial."""
    p = parse(text, params)
    if p.degree not in (0, None) or p.order not in (0, None):
        raise ExprSyntaxError("expected an expression without x", 0)
    c = p.coeff(0)
    return c if isinstance(c, ParamElement) else ParamElement.constant(c)
