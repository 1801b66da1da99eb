"""Arbitrary-precision decimal helpers for functions the stdlib lacks.

``decimal`` provides correctly rounded ``ln``, ``exp``, ``log10`` and
``sqrt`` but no circle constant or trigonometry, so those are computed here
by series with guard digits. Every function returns a value rounded to the
requested number of significant digits with error below one unit in the last
place, which is what the interval layer's one-ulp outward widening relies on.
"""

from __future__ import annotations

from decimal import Context, Decimal, localcontext
from functools import lru_cache

_GUARD = 10


@lru_cache(maxsize=None)
def pi_dec(prec: int) -> Decimal:
    """The circle constant to ``prec`` significant digits."""
    with localcontext(Context(prec=prec + _GUARD)):
        lasts, t, s, n, na, d, da = Decimal(0), Decimal(3), Decimal(3), 1, 0, 0, 24
        while s != lasts:
            lasts = s
            n, na = n + na, na + 8
            d, da = d + da, da + 32
            t = (t * n) / d
            s += t
    return Context(prec=prec).plus(s)


@lru_cache(maxsize=None)
def euler_dec(prec: int) -> Decimal:
    """Euler's number to ``prec`` significant digits."""
    return Decimal(1).exp(Context(prec=prec))


def _reduced(x: Decimal, prec: int) -> Decimal:
    """Reduce ``x`` modulo the full circle, at ``prec`` working digits."""
    pi2 = 2 * pi_dec(prec + max(0, x.adjusted()))
    return x - pi2 * (x / pi2).to_integral_value()


def sin_dec(x: Decimal, prec: int) -> Decimal:
    with localcontext(Context(prec=prec + _GUARD)):
        r = _reduced(x, prec + _GUARD)
        i, lasts, s, fact, num, sign = 1, Decimal(0), r, 1, r, 1
        while s != lasts:
            lasts = s
            i += 2
            fact *= i * (i - 1)
            num *= r * r
            sign = -sign
            s += sign * num / fact
    return Context(prec=prec).plus(s)


def cos_dec(x: Decimal, prec: int) -> Decimal:
    with localcontext(Context(prec=prec + _GUARD)):
        r = _reduced(x, prec + _GUARD)
        i, lasts, s, fact, num, sign = 0, Decimal(0), Decimal(1), 1, Decimal(1), 1
        while s != lasts:
            lasts = s
            i += 2
            fact *= i * (i - 1)
            num *= r * r
            sign = -sign
            s += sign * num / fact
    return Context(prec=prec).plus(s)


def tan_dec(x: Decimal, prec: int) -> Decimal:
    """Tangent of ``x``; raises ZeroDivisionError at a pole."""
    with localcontext(Context(prec=prec + _GUARD)):
        s = sin_dec(x, prec + _GUARD)
        c = cos_dec(x, prec + _GUARD)
        if c == 0:
            raise ZeroDivisionError("tangent pole")
        q = s / c
    return Context(prec=prec).plus(q)
