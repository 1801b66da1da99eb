import random
from decimal import Decimal

import mpmath as mp
import pytest

from difproof import (
    DomainError,
    IntervalValue,
    PrecisionContext,
    eval_interval,
    eval_point,
    parse,
)

from conftest import random_safe_expression
from oracles import mp_eval


def box(a, b=None) -> IntervalValue:
    return IntervalValue(Decimal(a), Decimal(b if b is not None else a))


def test_identity_box():
    assert eval_interval(parse("x"), "x", box("0", "1")) == IntervalValue(
        Decimal(0), Decimal(1)
    )


def test_constant_over_any_box():
    assert eval_interval(parse("2"), "x", box("-5", "7")) == IntervalValue(
        Decimal(2), Decimal(2)
    )


def test_degenerate_box_encloses_true_value(xlnx):
    enclosure = eval_interval(xlnx.g1, "x", box("0.023"))
    true = Decimal(mp.nstr(mp_eval(xlnx.g1, "x", "0.023", dps=30), 25))
    assert enclosure.lo <= true <= enclosure.hi
    assert Decimal("-0.7882434741") in enclosure
    assert enclosure.width < Decimal("1e-8")


def test_point_in_interval_randomized():
    rng = random.Random(11)
    checked = 0
    while checked < 200:
        e = random_safe_expression(rng)
        lo = rng.uniform(-1.8, 1.5)
        hi = lo + rng.uniform(0, 0.8)
        x = rng.uniform(lo, hi)
        b = box(f"{lo:.5f}", f"{hi:.5f}")
        digits = rng.choice((8, 10, 16))
        ctx = PrecisionContext(digits)
        try:
            enclosure = eval_interval(e, "x", b, ctx)
            value = eval_point(e, "x", Decimal(f"{x:.5f}"), ctx)
        except DomainError:
            continue
        assert value in enclosure, (e, b, digits)
        checked += 1


def test_interval_monotone_under_box_inclusion():
    rng = random.Random(13)
    checked = 0
    while checked < 150:
        e = random_safe_expression(rng)
        lo = rng.uniform(-1.5, 1.2)
        hi = lo + rng.uniform(0.01, 0.6)
        pad = rng.uniform(0.001, 0.3)
        inner = box(f"{lo:.5f}", f"{hi:.5f}")
        outer = box(f"{lo - pad:.5f}", f"{hi + pad:.5f}")
        try:
            small = eval_interval(e, "x", inner)
            large = eval_interval(e, "x", outer)
        except DomainError:
            continue
        assert large.lo <= small.lo and small.hi <= large.hi, (e, inner, outer)
        checked += 1


def test_true_range_enclosed_on_fixture(xlnx):
    # enclosure of a non-degenerate box must cover values at interior points
    b = box("0.01", "0.03")
    enclosure = eval_interval(xlnx.g1, "x", b)
    for t in ("0.01", "0.017", "0.025", "0.03"):
        true = Decimal(mp.nstr(mp_eval(xlnx.g1, "x", t, dps=30), 25))
        assert enclosure.lo <= true <= enclosure.hi


def test_sine_interior_extrema_included():
    enclosure = eval_interval(parse("sin(x)"), "x", box("0", "3.2"))
    assert enclosure.hi >= 1
    assert enclosure.lo <= Decimal("0")
    enclosure = eval_interval(parse("cos(x)"), "x", box("3", "3.3"))
    assert enclosure.lo <= -1


def test_sine_monotone_piece_is_tight():
    enclosure = eval_interval(parse("sin(x)"), "x", box("0.1", "0.2"))
    lo_true = mp.sin(mp.mpf("0.1"))
    hi_true = mp.sin(mp.mpf("0.2"))
    assert abs(mp.mpf(str(enclosure.lo)) - lo_true) < mp.mpf("1e-8")
    assert abs(mp.mpf(str(enclosure.hi)) - hi_true) < mp.mpf("1e-8")


def test_wide_trig_box_falls_back_to_unit_range():
    enclosure = eval_interval(parse("sin(x)"), "x", box("-50", "50"))
    assert enclosure == IntervalValue(Decimal(-1), Decimal(1))


def test_tangent_pole_raises():
    with pytest.raises(DomainError, match="pole"):
        eval_interval(parse("tan(x)"), "x", box("1.5", "1.6"))
    enclosure = eval_interval(parse("tan(x)"), "x", box("0.1", "0.2"))
    assert Decimal("0.15") in enclosure or enclosure.lo < Decimal("0.21")


def test_division_by_interval_containing_zero():
    with pytest.raises(DomainError, match="zero"):
        eval_interval(parse("1/x"), "x", box("-1", "1"))


def test_integer_powers():
    sq = eval_interval(parse("x^2"), "x", box("-2", "1"))
    assert sq.lo == 0 and sq.hi >= 4
    cube = eval_interval(parse("x^3"), "x", box("-2", "1"))
    assert cube.lo <= -8 and cube.hi >= 1
    inv = eval_interval(parse("x^-2"), "x", box("1", "2"))
    assert inv.lo <= Decimal("0.25") <= Decimal("1") <= inv.hi
    with pytest.raises(DomainError):
        eval_interval(parse("x^-2"), "x", box("-1", "1"))


def test_exponential_power_with_variable_exponent():
    enclosure = eval_interval(parse("2^s"), "s", box("0", "1"))
    assert enclosure.lo <= 1 and enclosure.hi >= 2
    assert enclosure.width < Decimal("1.1")
    with pytest.raises(DomainError, match="non-integer exponent"):
        eval_interval(parse("(x - 3)^s"), "s", box("0", "1"))


def test_negative_base_integer_exponent_ok():
    enclosure = eval_interval(parse("(x - 3)^3"), "x", box("0", "1"))
    assert enclosure.lo <= -27 and enclosure.hi >= -8


def test_outward_rounding_never_loses_the_true_value_on_fixtures(lncubes):
    rng = random.Random(17)
    for _ in range(25):
        t = f"{rng.uniform(0, 1):.4f}"
        for expr in (lncubes.g1, lncubes.g2):
            enclosure = eval_interval(expr, "s", box(t), PrecisionContext(10))
            true = Decimal(mp.nstr(mp_eval(expr, "s", t, dps=30), 25))
            assert enclosure.lo <= true <= enclosure.hi
