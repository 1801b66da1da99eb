"""Expression trees for one-variable real functions.

Nodes are immutable and compare structurally, so a serialized tree can be
re-parsed and checked for identity. Numeric literals keep their exact source
text; nothing is converted through binary floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

BINARY_OPS = ("add", "sub", "mul", "div", "pow")
FUNCTIONS = ("ln", "exp", "sin", "cos", "tan", "sqrt", "abs", "log10")
CONSTANTS = ("pi", "euler")


class Expr:
    """Base class for expression nodes."""


@dataclass(frozen=True)
class DecimalLiteral(Expr):
    """A numeral kept as its exact decimal source text (e.g. "0.04", "1.5e-3")."""

    text: str


@dataclass(frozen=True)
class Constant(Expr):
    name: str  # "pi" | "euler"

    def __post_init__(self) -> None:
        if self.name not in CONSTANTS:
            raise ValueError(f"unknown constant {self.name!r}")


@dataclass(frozen=True)
class Variable(Expr):
    name: str


@dataclass(frozen=True)
class Unary(Expr):
    op: str  # only "neg"
    operand: Expr

    def __post_init__(self) -> None:
        if self.op != "neg":
            raise ValueError(f"unknown unary operator {self.op!r}")


@dataclass(frozen=True)
class Binary(Expr):
    op: str  # add | sub | mul | div | pow
    left: Expr
    right: Expr

    def __post_init__(self) -> None:
        if self.op not in BINARY_OPS:
            raise ValueError(f"unknown binary operator {self.op!r}")


@dataclass(frozen=True)
class FunctionCall(Expr):
    name: str
    arg: Expr

    def __post_init__(self) -> None:
        if self.name not in FUNCTIONS:
            raise ValueError(f"unknown function {self.name!r}")


def walk(e: Expr) -> Iterator[Expr]:
    """Yield ``e`` and every subexpression, depth first."""
    yield e
    if isinstance(e, Unary):
        yield from walk(e.operand)
    elif isinstance(e, Binary):
        yield from walk(e.left)
        yield from walk(e.right)
    elif isinstance(e, FunctionCall):
        yield from walk(e.arg)


def variables_of(e: Expr) -> set[str]:
    return {node.name for node in walk(e) if isinstance(node, Variable)}


def free_variables(e1: Expr, e2: Expr) -> set[str]:
    """Union of variable identifiers over both expressions.

    ``pi`` and ``e`` are constants folded at evaluation time and are never
    reported here. Callers that require a single shared variable reject the
    pair when the result has more than one element.
    """
    return variables_of(e1) | variables_of(e2)


# Precedence levels used by the serializer; they mirror the parser grammar
# (expr < term < factor < power < atom).
_ADD, _MUL, _NEG, _POW, _ATOM = 1, 2, 3, 4, 5

_BIN_PREC = {"add": _ADD, "sub": _ADD, "mul": _MUL, "div": _MUL, "pow": _POW}
_BIN_SYMBOL = {"add": " + ", "sub": " - ", "mul": "*", "div": "/", "pow": "^"}


def _prec(e: Expr) -> int:
    if isinstance(e, Binary):
        return _BIN_PREC[e.op]
    if isinstance(e, Unary):
        return _NEG
    return _ATOM


def serialize(e: Expr) -> str:
    """Render ``e`` as text that parses back to an identical tree."""
    if isinstance(e, DecimalLiteral):
        return e.text
    if isinstance(e, Constant):
        return "pi" if e.name == "pi" else "e"
    if isinstance(e, Variable):
        return e.name
    if isinstance(e, FunctionCall):
        return f"{e.name}({serialize(e.arg)})"
    if isinstance(e, Unary):
        inner = serialize(e.operand)
        if _prec(e.operand) < _NEG:
            return f"-({inner})"
        return f"-{inner}"
    if isinstance(e, Binary):
        prec = _BIN_PREC[e.op]
        left, right = serialize(e.left), serialize(e.right)
        if e.op == "pow":
            # The base slot of the grammar only admits atoms; the exponent
            # slot admits a factor (so unary minus and chained ^ stay bare).
            if _prec(e.left) < _ATOM:
                left = f"({left})"
            if _prec(e.right) < _NEG:
                right = f"({right})"
        else:
            if _prec(e.left) < prec:
                left = f"({left})"
            if _prec(e.right) <= prec:
                right = f"({right})"
        return f"{left}{_BIN_SYMBOL[e.op]}{right}"
    raise TypeError(f"not an expression node: {e!r}")
