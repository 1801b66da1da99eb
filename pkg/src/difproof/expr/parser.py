"""Recursive-descent parser for the expression grammar.

Grammar (no implicit multiplication; ``^`` is right-associative and binds
tighter than unary minus)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?
    atom   := NUMBER | 'pi' | 'e' | IDENT | FUNC '(' expr ')' | '(' expr ')'

Numbers are decimal literals with an optional fraction and exponent part.
``pi`` and ``e`` are constants; the eight known function names cannot be used
as variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .nodes import (
    Binary,
    Constant,
    DecimalLiteral,
    Expr,
    FUNCTIONS,
    FunctionCall,
    Unary,
    Variable,
)


class ParseError(ValueError):
    """Syntax or lexical error; carries the byte offset of the problem."""

    def __init__(self, message: str, text: str, pos: int):
        self.byte_offset = len(text[:pos].encode("utf-8"))
        super().__init__(f"{message} (byte {self.byte_offset})")


@dataclass(frozen=True)
class _Token:
    kind: str  # "num" | "ident" | "op" | "end"
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"(?P<num>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup or "op"
        tokens.append(_Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def fail(self, message: str, tok: _Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, self.text, tok.pos)

    def expect_op(self, symbol: str) -> None:
        tok = self.peek()
        if tok.kind != "op" or tok.text != symbol:
            raise self.fail(f"expected {symbol!r}")
        self.advance()

    def at_op(self, *symbols: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text in symbols

    def parse_expr(self) -> Expr:
        node = self.parse_term()
        while self.at_op("+", "-"):
            op = self.advance().text
            rhs = self.parse_term()
            node = Binary("add" if op == "+" else "sub", node, rhs)
        return node

    def parse_term(self) -> Expr:
        node = self.parse_factor()
        while self.at_op("*", "/"):
            op = self.advance().text
            rhs = self.parse_factor()
            node = Binary("mul" if op == "*" else "div", node, rhs)
        return node

    def parse_factor(self) -> Expr:
        if self.at_op("-"):
            self.advance()
            return Unary("neg", self.parse_factor())
        return self.parse_power()

    def parse_power(self) -> Expr:
        base = self.parse_atom()
        if self.at_op("^"):
            self.advance()
            exponent = self.parse_factor()
            return Binary("pow", base, exponent)
        return base

    def parse_atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return DecimalLiteral(tok.text)
        if tok.kind == "ident":
            self.advance()
            name = tok.text
            if name in ("pi", "e"):
                if self.at_op("("):
                    raise self.fail(f"unknown function {name!r}", tok)
                return Constant("pi" if name == "pi" else "euler")
            if self.at_op("("):
                if name not in FUNCTIONS:
                    raise self.fail(f"unknown function {name!r}", tok)
                self.advance()
                arg = self.parse_expr()
                self.expect_op(")")
                return FunctionCall(name, arg)
            if name in FUNCTIONS:
                raise self.fail(f"expected '(' after function name {name!r}", tok)
            return Variable(name)
        if self.at_op("("):
            self.advance()
            node = self.parse_expr()
            self.expect_op(")")
            return node
        if tok.kind == "end":
            raise self.fail("unexpected end of input", tok)
        raise self.fail(f"unexpected token {tok.text!r}", tok)


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree.

    Raises :class:`ParseError` (with a byte offset) on syntax errors, unknown
    function names, and empty input.
    """
    parser = _Parser(text)
    if parser.peek().kind == "end":
        raise ParseError("empty expression", text, 0)
    node = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise parser.fail(f"unexpected token {tok.text!r}", tok)
    return node
