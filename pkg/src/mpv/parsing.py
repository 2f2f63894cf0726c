"""Recursive-descent parser for class expressions.

Grammar (LL(1), juxtaposition is multiplication)::

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary | power)*
    unary    := ('-' | '+') unary | power
    power    := atom ('^' exponent)?
    exponent := ['-'] INT | '(' ['-'] INT ['/' INT] ')'
    atom     := INT | SYMBOL | '(' expr ')'

Symbols are the single letters ``L``, ``T``, ``u``, ``v``.  With scaling
``m`` they become ``t**m``, ``tau**m``, ``U**m``, ``V**m``; a fractional
exponent is only allowed on a monomial base, and the resulting exponent
must be an integer multiple of ``1/m``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, List, NamedTuple

from .errors import ExpressionSyntaxError, ScalingError
from .exactring import LaurentPoly, RingElem

SYMBOL_VARS = {"L": "t", "T": "tau", "u": "U", "v": "V"}
ALL_SYMBOLS = frozenset(SYMBOL_VARS)

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\S))")


class Token(NamedTuple):
    kind: str  # INT, SYM, OP, END
    value: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:  # only trailing whitespace left
            break
        if mt.group(1):
            tokens.append(Token("INT", mt.group(1), mt.start(1)))
        elif mt.group(2):
            tokens.append(Token("SYM", mt.group(2), mt.start(2)))
        else:
            ch = mt.group(3)
            if ch not in "+-*/^()":
                raise ExpressionSyntaxError(f"unexpected character {ch!r}", text, mt.start(3))
            tokens.append(Token("OP", ch, mt.start(3)))
        pos = mt.end()
    tokens.append(Token("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, m: int, symbols: Iterable[str]):
        self.text = text
        self.m = m
        self.symbols = frozenset(symbols)
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ExpressionSyntaxError(message, self.text, tok.pos)

    def eat(self, kind, value=None) -> Token:
        tok = self.tok
        if tok.kind != kind or (value is not None and tok.value != value):
            want = value or kind
            got = tok.value or "end of input"
            raise self.error(f"expected {want!r}, got {got!r}")
        self.i += 1
        return tok

    def at(self, kind, value=None) -> bool:
        return self.tok.kind == kind and (value is None or self.tok.value == value)

    def starts_atom(self) -> bool:
        return self.tok.kind in ("INT", "SYM") or self.at("OP", "(")

    # -- productions ----------------------------------------------------

    def parse(self) -> RingElem:
        if self.at("END"):
            raise self.error("empty expression")
        value = self.expr()
        if not self.at("END"):
            raise self.error(f"unexpected {self.tok.value!r}")
        return value

    def expr(self) -> RingElem:
        value = self.term()
        while self.at("OP", "+") or self.at("OP", "-"):
            op = self.eat("OP").value
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RingElem:
        value = self.unary()
        while True:
            if self.at("OP", "*"):
                self.eat("OP")
                value = value * self.unary()
            elif self.at("OP", "/"):
                tok = self.eat("OP")
                rhs = self.unary()
                if rhs.is_zero():
                    raise self.error("division by zero", tok)
                value = value / rhs
            elif self.starts_atom():
                value = value * self.power()
            else:
                return value

    def unary(self) -> RingElem:
        if self.at("OP", "-"):
            self.eat("OP")
            return -self.unary()
        if self.at("OP", "+"):
            self.eat("OP")
            return self.unary()
        return self.power()

    def power(self) -> RingElem:
        base = self.atom()
        if not self.at("OP", "^"):
            return base
        tok = self.eat("OP", "^")
        q = self.exponent()
        if q.denominator == 1:
            if base.is_zero() and q < 0:
                raise self.error("zero raised to a negative power", tok)
            return base ** int(q)
        if not base.is_polynomial() or not base.as_laurent().is_monomial():
            raise self.error("fractional power of a non-monomial", tok)
        (e, c), = base.as_laurent().items()
        if c != 1:
            raise self.error("fractional power of a non-unit coefficient", tok)
        scaled = [k * q for k in e]
        if any(x.denominator != 1 for x in scaled):
            raise ScalingError(
                f"exponent {q} needs a denominator not dividing m={self.m} "
                f"at column {tok.pos + 1}: {self.text!r}")
        return RingElem.monomial(tuple(int(x) for x in scaled))

    def exponent(self) -> Fraction:
        if self.at("OP", "("):
            self.eat("OP")
            sign = -1 if self.at("OP", "-") else 1
            if sign < 0:
                self.eat("OP")
            p = int(self.eat("INT").value)
            q = 1
            if self.at("OP", "/"):
                self.eat("OP")
                tok = self.eat("INT")
                q = int(tok.value)
                if q == 0:
                    raise self.error("zero exponent denominator", tok)
            self.eat("OP", ")")
            return Fraction(sign * p, q)
        sign = 1
        if self.at("OP", "-"):
            self.eat("OP")
            sign = -1
        return Fraction(sign * int(self.eat("INT").value))

    def atom(self) -> RingElem:
        tok = self.tok
        if tok.kind == "INT":
            self.i += 1
            return RingElem(int(tok.value))
        if tok.kind == "SYM":
            if tok.value not in self.symbols:
                allowed = ", ".join(sorted(self.symbols)) or "none"
                raise self.error(f"symbol {tok.value!r} not allowed here (allowed: {allowed})")
            self.i += 1
            return RingElem(LaurentPoly.var(SYMBOL_VARS[tok.value], self.m))
        if self.at("OP", "("):
            self.eat("OP")
            value = self.expr()
            self.eat("OP", ")")
            return value
        got = tok.value or "end of input"
        raise self.error(f"expected a number, symbol or '(', got {got!r}")


def parse_expression(text: str, m: int = 1, symbols: Iterable[str] = ALL_SYMBOLS) -> RingElem:
    """Parse ``text`` into an exact :class:`RingElem` with scaling ``m``."""
    if not isinstance(text, str):
        raise ExpressionSyntaxError(f"expression must be a string, got {type(text).__name__}")
    return _Parser(text, m, symbols).parse()


def parse_fraction(text) -> Fraction:
    """Exact rational from ``"-1/2"``, ``"3"`` or an int."""
    if isinstance(text, bool):
        raise ExpressionSyntaxError(f"not a rational number: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not re.fullmatch(r"\s*[+-]?\d+(\s*/\s*\d+)?\s*", text):
        raise ExpressionSyntaxError(f"not a rational number: {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise ExpressionSyntaxError(f"zero denominator in {text!r}") from None
