"""Symbolic differentiation of expression trees.

Results are correct but not simplified beyond folding trivial zero/one terms,
which keeps derivative trees small enough to evaluate and to differentiate
again. ``abs`` is refused: it is not differentiable at zero, so a
monotonicity argument built on it would be unsound.
"""

from __future__ import annotations

from decimal import Decimal

from .nodes import (
    Binary,
    Constant,
    DecimalLiteral,
    Expr,
    FunctionCall,
    Unary,
    Variable,
    variables_of,
)


class DifferentiationError(ValueError):
    pass


_ZERO = DecimalLiteral("0")
_ONE = DecimalLiteral("1")


def _is_value(e: Expr, value: str) -> bool:
    return isinstance(e, DecimalLiteral) and Decimal(e.text) == Decimal(value)


def _neg(a: Expr) -> Expr:
    if _is_value(a, "0"):
        return _ZERO
    return Unary("neg", a)


def _add(a: Expr, b: Expr) -> Expr:
    if _is_value(a, "0"):
        return b
    if _is_value(b, "0"):
        return a
    return Binary("add", a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if _is_value(b, "0"):
        return a
    if _is_value(a, "0"):
        return _neg(b)
    return Binary("sub", a, b)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is_value(a, "0") or _is_value(b, "0"):
        return _ZERO
    if _is_value(a, "1"):
        return b
    if _is_value(b, "1"):
        return a
    return Binary("mul", a, b)


def _div(a: Expr, b: Expr) -> Expr:
    if _is_value(a, "0"):
        return _ZERO
    if _is_value(b, "1"):
        return a
    return Binary("div", a, b)


def _pow(a: Expr, b: Expr) -> Expr:
    if _is_value(b, "1"):
        return a
    return Binary("pow", a, b)


def differentiate(e: Expr, var: str) -> Expr:
    """Derivative of ``e`` with respect to ``var``."""
    if isinstance(e, (DecimalLiteral, Constant)):
        return _ZERO
    if isinstance(e, Variable):
        return _ONE if e.name == var else _ZERO
    if isinstance(e, Unary):
        return _neg(differentiate(e.operand, var))
    if isinstance(e, Binary):
        u, w = e.left, e.right
        du = differentiate(u, var)
        dw = differentiate(w, var)
        if e.op == "add":
            return _add(du, dw)
        if e.op == "sub":
            return _sub(du, dw)
        if e.op == "mul":
            return _add(_mul(du, w), _mul(u, dw))
        if e.op == "div":
            return _div(_sub(_mul(du, w), _mul(u, dw)), _pow(w, DecimalLiteral("2")))
        # pow: pick the rule that avoids ln(u) when the exponent is constant
        u_dep = var in variables_of(u)
        w_dep = var in variables_of(w)
        if not w_dep:
            return _mul(_mul(w, _pow(u, _sub(w, _ONE))), du)
        if not u_dep:
            return _mul(_mul(_pow(u, w), FunctionCall("ln", u)), dw)
        return _mul(
            _pow(u, w),
            _add(_mul(dw, FunctionCall("ln", u)), _div(_mul(w, du), u)),
        )
    if isinstance(e, FunctionCall):
        u = e.arg
        du = differentiate(u, var)
        if e.name == "ln":
            return _div(du, u)
        if e.name == "log10":
            return _div(du, _mul(u, FunctionCall("ln", DecimalLiteral("10"))))
        if e.name == "exp":
            return _mul(FunctionCall("exp", u), du)
        if e.name == "sin":
            return _mul(FunctionCall("cos", u), du)
        if e.name == "cos":
            return _neg(_mul(FunctionCall("sin", u), du))
        if e.name == "tan":
            return _div(du, _pow(FunctionCall("cos", u), DecimalLiteral("2")))
        if e.name == "sqrt":
            return _div(du, _mul(DecimalLiteral("2"), FunctionCall("sqrt", u)))
        raise DifferentiationError(
            "abs is not differentiable at zero; refuse to build a sub-proof on it"
        )
    raise TypeError(f"not an expression node: {e!r}")
