import random
from decimal import Decimal
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from difproof import (
    Accuracy,
    BracketError,
    PrecisionContext,
    default_accuracy,
    eval_point,
    ffloor,
    parse,
    solve_monotone,
)
from difproof.numeric import ffloor_fraction

from oracles import mp_eval


# --- ffloor ------------------------------------------------------------------


@pytest.mark.parametrize(
    "x,n,want",
    [
        ("0.0123456", 3, "0.012"),
        ("0.04", 2, "0.04"),
        ("-0.0051", 2, "-0.01"),
        ("0.5", 3, "0.5"),
        ("100.5", 0, "100"),
        ("2", 5, "2"),
        ("-3.999", 0, "-4"),
    ],
)
def test_ffloor_values(x, n, want):
    got = ffloor(Decimal(x), n)
    assert got == Decimal(want)
    assert str(got) == want  # no trailing zeros, no exponent notation


_decimals = st.decimals(
    min_value="-1e6", max_value="1e6", allow_nan=False, allow_infinity=False, places=8
)


@settings(max_examples=300, deadline=None)
@given(_decimals, st.integers(min_value=0, max_value=8))
def test_ffloor_bounds_and_idempotence(x, n):
    f = ffloor(x, n)
    step = Decimal(1).scaleb(-n)
    assert f <= x < f + step
    assert ffloor(f, n) == f


@settings(max_examples=200, deadline=None)
@given(_decimals, _decimals, st.integers(min_value=0, max_value=8))
def test_ffloor_ordering(x, y, n):
    if x > y:
        x, y = y, x
    assert ffloor(x, n) <= ffloor(y, n)


def test_ffloor_rejects_negative_places():
    with pytest.raises(ValueError):
        ffloor(Decimal(1), -1)


def test_ffloor_fraction_matches_decimal_ffloor():
    rng = random.Random(31)
    for _ in range(500):
        x = Decimal(f"{rng.uniform(-100, 100):.7f}")
        n = rng.randint(0, 7)
        assert ffloor_fraction(Fraction(x), n) == ffloor(x, n)


# --- default accuracy ---------------------------------------------------------


@pytest.mark.parametrize(
    "a,b,want",
    [
        ("0", "0.04", 4),
        ("0", "1", 2),
        ("0", "100", 0),
        ("0", "0.1", 3),
        ("2", "3", 2),
        ("0", "0.009", 5),
    ],
)
def test_default_accuracy_values(a, b, want):
    assert default_accuracy(Decimal(a), Decimal(b)) == Accuracy(want)


def test_default_accuracy_matches_log_formula_randomized():
    rng = random.Random(37)
    for _ in range(300):
        a = Decimal(f"{rng.uniform(-50, 50):.6f}")
        span = Decimal(f"{10 ** rng.uniform(-6, 3):.9f}")
        if span == 0:
            continue
        b = a + span
        want = 2 - int(mp.floor(mp.log10(mp.mpf(str(b - a)))))
        assert default_accuracy(a, b).decimal_places == max(0, want)


def test_default_accuracy_requires_order():
    with pytest.raises(ValueError):
        default_accuracy(Decimal(1), Decimal(1))


# --- solve_monotone -----------------------------------------------------------


def test_identity_root():
    r = solve_monotone(parse("x"), "x", Decimal("0.5"), Decimal(0), Decimal(1))
    assert abs(r - Decimal("0.5")) <= Decimal("1e-8")


def test_linear_root():
    r = solve_monotone(parse("2*x"), "x", Decimal(1), Decimal(0), Decimal(1))
    assert abs(r - Decimal("0.5")) <= Decimal("1e-8")


def test_fixture_crossing_against_dense_scan(xlnx):
    # where does g2 catch up to g1(0)? oracle: dense scan on a 1e5 grid
    target = eval_point(xlnx.g1, "x", Decimal(0), PrecisionContext(20))
    r = solve_monotone(xlnx.g2, "x", target, Decimal(0), Decimal("0.04"))
    with mp.workdps(25):
        tgt = mp.mpf(str(target))
        lo = mp.mpf(0)
        step = mp.mpf("0.04") / 100000
        crossing = None
        x = lo
        for i in range(100001):
            if mp_eval(xlnx.g2, "x", x, dps=25) >= tgt:
                crossing = x
                break
            x += step
        assert crossing is not None
        assert abs(mp.mpf(str(r)) - crossing) <= step + mp.mpf("1e-8")
    # cross-check: the value at the returned point is close to the target
    val = eval_point(xlnx.g2, "x", r, PrecisionContext(20))
    assert abs(val - target) <= Decimal("1e-6")


def test_bracket_errors():
    with pytest.raises(BracketError) as excinfo:
        solve_monotone(parse("x"), "x", Decimal(-1), Decimal(0), Decimal(1))
    assert excinfo.value.side == "lo"
    with pytest.raises(BracketError) as excinfo:
        solve_monotone(parse("x"), "x", Decimal(2), Decimal(0), Decimal(1))
    assert excinfo.value.side == "hi"


def test_result_brackets_target_within_tolerance():
    rng = random.Random(41)
    ctx = PrecisionContext(10)
    tol = Decimal(1).scaleb(2 - ctx.digits)
    for _ in range(40):
        a = Decimal(f"{rng.uniform(1.5, 2.5):.3f}")
        c = Decimal(f"{rng.uniform(0.5, 1.5):.3f}")
        f = parse(f"{a}*x + exp({c}*x)")
        lo, hi = Decimal(0), Decimal(2)
        flo = eval_point(f, "x", lo, ctx)
        fhi = eval_point(f, "x", hi, ctx)
        target = flo + (fhi - flo) * Decimal(rng.random()).quantize(Decimal("0.001"))
        r = solve_monotone(f, "x", target, lo, hi, ctx)
        assert lo <= r <= hi
        below = max(lo, r - tol)
        above = min(hi, r + tol)
        assert eval_point(f, "x", below, ctx) <= target <= eval_point(f, "x", above, ctx)


def test_solve_monotone_deterministic(xlnx):
    target = eval_point(xlnx.g1, "x", Decimal(0))
    r1 = solve_monotone(xlnx.g2, "x", target, Decimal(0), Decimal("0.04"))
    r2 = solve_monotone(xlnx.g2, "x", target, Decimal(0), Decimal("0.04"))
    assert r1 == r2
