"""Recursive-descent parser for the polynomial text grammar.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | NAME | '(' expr ')'

Multiplication must be written explicitly, so ``xy`` is a single (unknown)
name and ``2x`` is a syntax error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .ring import Polynomial, Ring


class ParseError(ValueError):
    """Raised on malformed polynomial text.

    ``line`` and ``column`` are 1-based and refer to the text handed to the
    parser plus any offsets supplied by the caller (job files pass the
    position of the value inside the file).
    """

    def __init__(self, message: str, text: str = "", pos: int = 0, line: int = 1, column_offset: int = 0):
        self.text = text
        self.pos = pos
        self.line = line
        self.column = column_offset + pos + 1
        super().__init__(f"line {self.line}, column {self.column}: {message}")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "name", "op", "end"
    value: str
    pos: int


def tokenize(text: str, line: int = 1, column_offset: int = 0) -> list[_Token]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos, line, column_offset)
        start = m.start(m.lastgroup)
        tokens.append(_Token(m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, ring: Ring, text: str, line: int, column_offset: int):
        self.ring = ring
        self.text = text
        self.line = line
        self.column_offset = column_offset
        self.tokens = tokenize(text, line, column_offset)
        self.i = 0

    def error(self, message: str, tok: _Token | None = None) -> ParseError:
        tok = tok or self.tokens[self.i]
        return ParseError(message, self.text, tok.pos, self.line, self.column_offset)

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if self.peek().kind == "end":
            raise self.error("empty polynomial")
        f = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            if tok.kind in ("name", "int") or tok.value == "(":
                raise self.error(f"expected operator before {tok.value!r} (multiplication needs an explicit '*')")
            raise self.error(f"unexpected {tok.value!r}")
        return f

    def expr(self) -> Polynomial:
        f = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Polynomial:
        f = self.unary()
        while self.peek().kind == "op" and self.peek().value == "*":
            self.take()
            f = f * self.unary()
        return f

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "op" and tok.value in "+-":
            self.take()
            f = self.unary()
            return -f if tok.value == "-" else f
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().value == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "int":
                raise self.error("malformed exponent: expected a non-negative integer", tok)
            self.take()
            return base ** int(tok.value)
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok.kind == "int":
            return self.ring.constant(int(tok.value))
        if tok.kind == "name":
            try:
                return self.ring.var(tok.value)
            except KeyError:
                raise self.error(f"unknown variable {tok.value!r}", tok) from None
        if tok.kind == "op" and tok.value == "(":
            f = self.expr()
            close = self.take()
            if close.value != ")":
                raise self.error("expected ')'", close)
            return f
        if tok.kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {tok.value!r}", tok)


def parse_polynomial(ring: Ring, text: str, line: int = 1, column_offset: int = 0) -> Polynomial:
    return _Parser(ring, text, line, column_offset).parse()
