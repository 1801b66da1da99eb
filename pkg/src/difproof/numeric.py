"""Low-level numeric utilities: floor-rounding to decimal places, the default
certificate-point accuracy heuristic, and guaranteed root bracketing for
monotone functions."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Context, Decimal, ROUND_FLOOR
from fractions import Fraction

from .expr import Expr, PrecisionContext, eval_point

_BIG = Context(prec=80)


@dataclass(frozen=True)
class Accuracy:
    """Digits after the decimal point to which candidate points are floored."""

    decimal_places: int

    def __post_init__(self) -> None:
        if self.decimal_places < 0:
            raise ValueError("decimal places must be non-negative")


class BracketError(ArithmeticError):
    """The target value is not bracketed by f on [lo, hi].

    ``side`` is "lo" when f(lo) already exceeds the target (for certificate
    generation this is direct numeric evidence that the claimed inequality
    fails at lo) and "hi" when f(hi) falls short of it.
    """

    def __init__(self, side: str, x: Decimal, fx: Decimal, target: Decimal):
        self.side = side
        self.x = x
        self.fx = fx
        self.target = target
        rel = "exceeds" if side == "lo" else "falls short of"
        super().__init__(f"f({x}) = {fx} {rel} target {target}")


def strip_trailing_zeros(d: Decimal) -> Decimal:
    """Shortest exact representation of ``d`` without exponent notation."""
    d = d.normalize()
    if d.as_tuple().exponent > 0:
        d = d.quantize(Decimal(1), context=_BIG)
    return d


def ffloor(x: Decimal, n: int) -> Decimal:
    """Round ``x`` down to ``n`` decimal places.

    Satisfies ffloor(x, n) <= x < ffloor(x, n) + 10^-n; the result carries no
    trailing zeros.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    q = x.quantize(Decimal(1).scaleb(-n), rounding=ROUND_FLOOR, context=_BIG)
    return strip_trailing_zeros(q)


def ffloor_fraction(x: Fraction, n: int) -> Decimal:
    """Exact ffloor of a rational value (no rounding before the floor)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    scaled = x * Fraction(10) ** n
    floored = scaled.numerator // scaled.denominator
    return strip_trailing_zeros(Decimal(floored).scaleb(-n, context=_BIG))


def default_accuracy(a: Decimal, b: Decimal) -> Accuracy:
    """Accuracy heuristic: resolve roughly one-hundredth of the interval.

    Computes 2 - floor(log10(b - a)).
    """
    if not a < b:
        raise ValueError("need a < b")
    span = _BIG.subtract(b, a)
    lg = span.log10(Context(prec=30))
    places = 2 - int(lg.to_integral_value(rounding=ROUND_FLOOR))
    return Accuracy(max(0, places))


def solve_monotone(
    f: Expr,
    var: str | None,
    target: Decimal,
    lo: Decimal,
    hi: Decimal,
    ctx: PrecisionContext = PrecisionContext(),
) -> Decimal:
    """Find t in [lo, hi] with f(t) close to ``target`` for increasing f.

    Plain bisection: monotonicity guarantees convergence and the certificate
    points produced from the result get floored afterwards, so root speed and
    extreme accuracy are irrelevant. Terminates when the bracket width drops
    to 10^(2 - digits). Raises :class:`BracketError` when the target is not
    bracketed at working precision.
    """
    tol = Decimal(1).scaleb(2 - ctx.digits)
    flo = eval_point(f, var, lo, ctx)
    if flo > target:
        raise BracketError("lo", lo, flo, target)
    fhi = eval_point(f, var, hi, ctx)
    if fhi < target:
        raise BracketError("hi", hi, fhi, target)
    work = Context(prec=ctx.digits + 5)
    a, b = lo, hi
    while work.subtract(b, a) > tol:
        mid = work.divide(work.add(a, b), Decimal(2))
        if not a < mid < b:
            break  # precision floor reached
        if eval_point(f, var, mid, ctx) <= target:
            a = mid
        else:
            b = mid
    return work.divide(work.add(a, b), Decimal(2))
