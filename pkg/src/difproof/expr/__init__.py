"""Expression parsing, differentiation, and fixed-precision evaluation."""

from .calculus import DifferentiationError, differentiate
from .evaluate import (
    DomainError,
    IntervalValue,
    PrecisionContext,
    UnboundVariableError,
    eval_interval,
    eval_point,
)
from .nodes import (
    Binary,
    Constant,
    DecimalLiteral,
    Expr,
    FunctionCall,
    Unary,
    Variable,
    free_variables,
    serialize,
    variables_of,
    walk,
)
from .parser import ParseError, parse

__all__ = [
    "Binary",
    "Constant",
    "DecimalLiteral",
    "DifferentiationError",
    "DomainError",
    "Expr",
    "FunctionCall",
    "IntervalValue",
    "ParseError",
    "PrecisionContext",
    "Unary",
    "UnboundVariableError",
    "Variable",
    "differentiate",
    "eval_interval",
    "eval_point",
    "free_variables",
    "parse",
    "serialize",
    "variables_of",
    "walk",
]
