"""Pointwise and interval evaluation of expression trees.

Point evaluation works in decimal arithmetic with a fixed number of
significant digits, rounding after every operation, so results are
reproducible across machines and can be re-run at higher precision.

Interval evaluation is the rigorous counterpart: a natural interval
extension computed node by node with outward rounding. Arithmetic uses
directed-rounding contexts; library functions are correctly rounded
(or guard-digit accurate) and then widened by one ulp on each side, so the
enclosure property holds unconditionally.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from decimal import Context, Decimal, ROUND_CEILING, ROUND_FLOOR
from functools import lru_cache

from . import decmath
from .nodes import (
    Binary,
    Constant,
    DecimalLiteral,
    Expr,
    FunctionCall,
    Unary,
    Variable,
    serialize,
)


@dataclass(frozen=True)
class PrecisionContext:
    """Number of significant decimal digits carried through evaluation."""

    digits: int = 10

    def __post_init__(self) -> None:
        if self.digits < 2:
            raise ValueError("precision must be at least 2 digits")


@dataclass(frozen=True)
class IntervalValue:
    """A closed decimal interval guaranteed to contain the true real value."""

    lo: Decimal
    hi: Decimal

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"interval bounds out of order: [{self.lo}, {self.hi}]")

    def __contains__(self, x: Decimal) -> bool:
        return self.lo <= x <= self.hi

    @property
    def width(self) -> Decimal:
        return self.hi - self.lo

    @classmethod
    def point(cls, x: Decimal) -> "IntervalValue":
        return cls(x, x)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


class DomainError(ArithmeticError):
    """Evaluation hit a singularity or left a function's real domain."""

    def __init__(self, reason: str, node: Expr):
        self.reason = reason
        self.node = node
        super().__init__(f"{reason} in '{serialize(node)}'")


class UnboundVariableError(ValueError):
    pass


@lru_cache(maxsize=None)
def _ctx(prec: int) -> Context:
    return Context(prec=prec)


@lru_cache(maxsize=None)
def _ctx_floor(prec: int) -> Context:
    return Context(prec=prec, rounding=ROUND_FLOOR)


@lru_cache(maxsize=None)
def _ctx_ceil(prec: int) -> Context:
    return Context(prec=prec, rounding=ROUND_CEILING)


def eval_point(e: Expr, var: str | None, x: Decimal, ctx: PrecisionContext = PrecisionContext()) -> Decimal:
    """Evaluate ``e`` at ``var = x`` with ``ctx.digits`` significant digits.

    Every intermediate result is rounded to the working precision, matching
    fixed-precision decimal calculator semantics. Domain problems raise
    :class:`DomainError` naming the offending subexpression.
    """
    c = _ctx(ctx.digits)
    prec = ctx.digits

    def ev(node: Expr) -> Decimal:
        try:
            if isinstance(node, DecimalLiteral):
                return c.plus(Decimal(node.text))
            if isinstance(node, Constant):
                return decmath.pi_dec(prec) if node.name == "pi" else decmath.euler_dec(prec)
            if isinstance(node, Variable):
                if node.name != var:
                    raise UnboundVariableError(f"unbound variable {node.name!r}")
                return c.plus(x)
            if isinstance(node, Unary):
                return c.minus(ev(node.operand))
            if isinstance(node, Binary):
                left = ev(node.left)
                right = ev(node.right)
                if node.op == "add":
                    return c.add(left, right)
                if node.op == "sub":
                    return c.subtract(left, right)
                if node.op == "mul":
                    return c.multiply(left, right)
                if node.op == "div":
                    if right == 0:
                        raise DomainError("division by zero", node)
                    return c.divide(left, right)
                # pow
                if left == 0 and right < 0:
                    raise DomainError("zero base with negative exponent", node)
                if left < 0 and right != right.to_integral_value():
                    raise DomainError("negative base with non-integer exponent", node)
                return c.power(left, right)
            if isinstance(node, FunctionCall):
                arg = ev(node.arg)
                name = node.name
                if name == "ln":
                    if arg <= 0:
                        raise DomainError("logarithm of a non-positive value", node)
                    return arg.ln(c)
                if name == "log10":
                    if arg <= 0:
                        raise DomainError("logarithm of a non-positive value", node)
                    return arg.log10(c)
                if name == "exp":
                    return arg.exp(c)
                if name == "sqrt":
                    if arg < 0:
                        raise DomainError("even root of a negative value", node)
                    return arg.sqrt(c)
                if name == "sin":
                    return decmath.sin_dec(arg, prec)
                if name == "cos":
                    return decmath.cos_dec(arg, prec)
                if name == "tan":
                    try:
                        return decmath.tan_dec(arg, prec)
                    except ZeroDivisionError:
                        raise DomainError("tangent pole", node) from None
                return c.abs(arg)
            raise TypeError(f"not an expression node: {node!r}")
        except decimal.InvalidOperation:
            raise DomainError("invalid operation", node) from None
        except decimal.DivisionByZero:
            raise DomainError("division by zero", node) from None
        except decimal.Overflow:
            raise DomainError("overflow", node) from None

    return ev(e)


def _widen(value: Decimal, c: Context) -> tuple[Decimal, Decimal]:
    """One-ulp outward interval around a faithfully rounded value."""
    return value.next_minus(c), value.next_plus(c)


def _mul_iv(a: tuple[Decimal, Decimal], b: tuple[Decimal, Decimal], cf: Context, cc: Context) -> tuple[Decimal, Decimal]:
    corners = [(a[0], b[0]), (a[0], b[1]), (a[1], b[0]), (a[1], b[1])]
    lo = min(cf.multiply(u, v) for u, v in corners)
    hi = max(cc.multiply(u, v) for u, v in corners)
    return lo, hi


def _scaled_pi(c_val: Decimal, prec: int, cf: Context, cc: Context) -> tuple[Decimal, Decimal]:
    """Enclosure of ``c_val`` times the circle constant (``c_val`` exact)."""
    p = decmath.pi_dec(prec + 5)
    plo, phi = _widen(p, _ctx(prec + 5))
    if c_val >= 0:
        return cf.multiply(c_val, plo), cc.multiply(c_val, phi)
    return cf.multiply(c_val, phi), cc.multiply(c_val, plo)


def _intersects(a: tuple[Decimal, Decimal], lo: Decimal, hi: Decimal) -> bool:
    return a[1] >= lo and a[0] <= hi


def _trig_iv(name: str, lo: Decimal, hi: Decimal, prec: int, cf: Context, cc: Context) -> tuple[Decimal, Decimal]:
    c = _ctx(prec)
    fn = decmath.sin_dec if name == "sin" else decmath.cos_dec
    if cc.subtract(hi, lo) >= 7 or max(abs(lo.adjusted()), abs(hi.adjusted())) > 200:
        return Decimal(-1), Decimal(1)
    vlo = _widen(fn(lo, prec), c)
    vhi = _widen(fn(hi, prec), c)
    out_lo = min(vlo[0], vhi[0])
    out_hi = max(vlo[1], vhi[1])
    # Interior extrema: sine peaks at (2k +/- 1/2) times the circle constant,
    # cosine at even/odd multiples of half of it. Candidates come from a
    # float estimate with generous slop; inclusion is conservative.
    half = Decimal("0.5")
    tau_f = 6.283185307179586
    k_lo = int(float(lo) / tau_f) - 2
    k_hi = int(float(hi) / tau_f) + 2
    for k in range(k_lo, k_hi + 1):
        if name == "sin":
            top, bottom = 2 * k + half, 2 * k - half
        else:
            top, bottom = Decimal(2 * k), Decimal(2 * k + 1)
        if _intersects(_scaled_pi(Decimal(top), prec, cf, cc), lo, hi):
            out_hi = max(out_hi, Decimal(1))
        if _intersects(_scaled_pi(Decimal(bottom), prec, cf, cc), lo, hi):
            out_lo = min(out_lo, Decimal(-1))
    out_lo = max(out_lo, Decimal(-1))
    out_hi = min(out_hi, Decimal(1))
    return out_lo, out_hi


def _int_pow_iv(base: tuple[Decimal, Decimal], n: int, node: Expr, prec: int, cf: Context, cc: Context) -> tuple[Decimal, Decimal]:
    c = _ctx(prec)
    if n == 0:
        return Decimal(1), Decimal(1)
    if n < 0:
        if base[0] <= 0 <= base[1]:
            raise DomainError("division by an interval containing zero", node)
        tlo, thi = _int_pow_iv(base, -n, node, prec, cf, cc)
        return cf.divide(Decimal(1), thi), cc.divide(Decimal(1), tlo)
    en = Decimal(n)

    def down(v: Decimal) -> Decimal:
        return c.power(v, en).next_minus(c)

    def up(v: Decimal) -> Decimal:
        return c.power(v, en).next_plus(c)

    blo, bhi = base
    if n % 2 == 1:
        return down(blo), up(bhi)
    if blo >= 0:
        return max(down(blo), Decimal(0)), up(bhi)
    if bhi <= 0:
        return max(down(bhi), Decimal(0)), up(blo)
    return Decimal(0), max(up(blo), up(bhi))


def eval_interval(e: Expr, var: str | None, box: IntervalValue, ctx: PrecisionContext = PrecisionContext()) -> IntervalValue:
    """Enclose ``{ e(x) : x in box }`` with outward rounding at ``ctx.digits``.

    The enclosure property is unconditional: whatever rounding happens, the
    true range is contained in the result. A box touching a singularity
    raises :class:`DomainError`.
    """
    prec = ctx.digits
    c = _ctx(prec)
    cf = _ctx_floor(prec)
    cc = _ctx_ceil(prec)

    def ln_like(pair: tuple[Decimal, Decimal], node: Expr, method: str) -> tuple[Decimal, Decimal]:
        if pair[0] <= 0:
            raise DomainError("logarithm of an interval reaching a non-positive value", node)
        lo = getattr(pair[0], method)(c).next_minus(c)
        hi = getattr(pair[1], method)(c).next_plus(c)
        return lo, hi

    def ev(node: Expr) -> tuple[Decimal, Decimal]:
        try:
            if isinstance(node, DecimalLiteral):
                d = Decimal(node.text)
                return cf.plus(d), cc.plus(d)
            if isinstance(node, Constant):
                value = decmath.pi_dec(prec) if node.name == "pi" else decmath.euler_dec(prec)
                return _widen(value, c)
            if isinstance(node, Variable):
                if node.name != var:
                    raise UnboundVariableError(f"unbound variable {node.name!r}")
                return cf.plus(box.lo), cc.plus(box.hi)
            if isinstance(node, Unary):
                lo, hi = ev(node.operand)
                return -hi, -lo
            if isinstance(node, Binary):
                a = ev(node.left)
                b = ev(node.right)
                if node.op == "add":
                    return cf.add(a[0], b[0]), cc.add(a[1], b[1])
                if node.op == "sub":
                    return cf.subtract(a[0], b[1]), cc.subtract(a[1], b[0])
                if node.op == "mul":
                    return _mul_iv(a, b, cf, cc)
                if node.op == "div":
                    if b[0] <= 0 <= b[1]:
                        raise DomainError("division by an interval containing zero", node)
                    corners = [(a[0], b[0]), (a[0], b[1]), (a[1], b[0]), (a[1], b[1])]
                    lo = min(cf.divide(u, v) for u, v in corners)
                    hi = max(cc.divide(u, v) for u, v in corners)
                    return lo, hi
                # pow
                if b[0] == b[1] and b[0] == b[0].to_integral_value() and abs(b[0]) < 10**6:
                    return _int_pow_iv(a, int(b[0]), node, prec, cf, cc)
                if a[0] <= 0:
                    raise DomainError("non-positive base with non-integer exponent", node)
                log_base = ln_like(a, node, "ln")
                return ev_exp(_mul_iv(b, log_base, cf, cc))
            if isinstance(node, FunctionCall):
                arg = ev(node.arg)
                name = node.name
                if name == "ln":
                    return ln_like(arg, node, "ln")
                if name == "log10":
                    return ln_like(arg, node, "log10")
                if name == "exp":
                    return ev_exp(arg)
                if name == "sqrt":
                    if arg[0] < 0:
                        raise DomainError("even root of an interval reaching below zero", node)
                    lo = max(arg[0].sqrt(c).next_minus(c), Decimal(0))
                    hi = arg[1].sqrt(c).next_plus(c)
                    return lo, hi
                if name in ("sin", "cos"):
                    return _trig_iv(name, arg[0], arg[1], prec, cf, cc)
                if name == "tan":
                    return tan_iv(arg, node)
                # abs: exact on endpoints
                if arg[0] >= 0:
                    return arg
                if arg[1] <= 0:
                    return -arg[1], -arg[0]
                return Decimal(0), max(-arg[0], arg[1])
            raise TypeError(f"not an expression node: {node!r}")
        except decimal.InvalidOperation:
            raise DomainError("invalid operation", node) from None
        except decimal.DivisionByZero:
            raise DomainError("division by zero", node) from None
        except decimal.Overflow:
            raise DomainError("overflow", node) from None

    def ev_exp(pair: tuple[Decimal, Decimal]) -> tuple[Decimal, Decimal]:
        lo = max(pair[0].exp(c).next_minus(c), Decimal(0))
        hi = pair[1].exp(c).next_plus(c)
        return lo, hi

    def tan_iv(arg: tuple[Decimal, Decimal], node: Expr) -> tuple[Decimal, Decimal]:
        lo, hi = arg
        if cc.subtract(hi, lo) >= Decimal("3.15") or max(abs(lo.adjusted()), abs(hi.adjusted())) > 200:
            raise DomainError("tangent pole inside the interval", node)
        half = Decimal("0.5")
        k_lo = int(float(lo) / 3.141592653589793) - 2
        k_hi = int(float(hi) / 3.141592653589793) + 2
        for k in range(k_lo, k_hi + 1):
            if _intersects(_scaled_pi(k + half, prec, cf, cc), lo, hi):
                raise DomainError("tangent pole inside the interval", node)
        try:
            vlo = _widen(decmath.tan_dec(lo, prec), c)
            vhi = _widen(decmath.tan_dec(hi, prec), c)
        except ZeroDivisionError:
            raise DomainError("tangent pole inside the interval", node) from None
        return vlo[0], vhi[1]

    lo, hi = ev(e)
    return IntervalValue(lo, hi)
