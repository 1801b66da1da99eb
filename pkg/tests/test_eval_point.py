import random
from decimal import Decimal

import mpmath as mp
import pytest

from difproof import (
    DomainError,
    PrecisionContext,
    UnboundVariableError,
    eval_point,
    parse,
)

from conftest import random_safe_expression
from oracles import mp_eval


def test_identity():
    assert eval_point(parse("x"), "x", Decimal("0.5")) == Decimal("0.5")


def test_printed_value_g1(xlnx):
    # Frozen 10-digit value; also independently confirmed by mpmath below.
    got = eval_point(xlnx.g1, "x", Decimal("0.023"))
    assert got == Decimal("-0.7882434741")
    true = mp_eval(xlnx.g1, "x", "0.023", dps=30)
    assert abs(mp.mpf(str(got)) - true) < mp.mpf("2e-10")


def test_g2_value_at_right_endpoint(xlnx):
    got = eval_point(xlnx.g2, "x", Decimal("0.04"))
    assert got == Decimal("-0.6907755279")
    true = mp_eval(xlnx.g2, "x", "0.04", dps=30)
    assert abs(mp.mpf(str(got)) - true) < mp.mpf("2e-10")


def test_constants_match_reference():
    assert eval_point(parse("pi"), None, Decimal(0)) == Decimal("3.141592654")
    assert eval_point(parse("e"), None, Decimal(0)) == Decimal("2.718281828")
    twenty = PrecisionContext(20)
    assert eval_point(parse("pi"), None, Decimal(0), twenty) == Decimal("3.1415926535897932385")


@pytest.mark.parametrize(
    "text,x",
    [
        ("sin(1.3*x)", "0.7"),
        ("cos(x)", "2.5"),
        ("tan(0.4*x)", "1.1"),
        ("sin(x)*cos(x) + tan(x)", "0.3"),
        ("ln(2)^3/2^s + ln(3)^3/3^s", "0.37"),
        ("sqrt(x + 2)", "1.44"),
        ("log10(x)", "0.04"),
        ("abs(1 - 3*x)", "0.9"),
    ],
)
def test_against_reference_stack(text, x):
    e = parse(text)
    var = "s" if "s" in text else "x"
    for digits in (10, 16, 22):
        got = eval_point(e, var, Decimal(x), PrecisionContext(digits))
        true = mp_eval(e, var, x, dps=digits + 15)
        ulp = mp.mpf(10) ** (int(Decimal(str(got)).adjusted()) - digits + 1)
        assert abs(mp.mpf(str(got)) - true) <= 4 * ulp, (text, digits)


def test_deterministic(xlnx):
    a = eval_point(xlnx.g1, "x", Decimal("0.0123"))
    b = eval_point(xlnx.g1, "x", Decimal("0.0123"))
    assert a == b


@pytest.mark.parametrize(
    "text,x,fragment",
    [
        ("ln(x)", "-1", "non-positive"),
        ("ln(x - 1)", "1", "non-positive"),
        ("1/(x - 2)", "2", "division by zero"),
        ("sqrt(x)", "-4", "even root"),
        ("(x - 3)^0.5", "1", "negative base"),
        ("x^-1", "0", "zero base"),
    ],
)
def test_domain_errors_name_offending_subexpression(text, x, fragment):
    with pytest.raises(DomainError) as excinfo:
        eval_point(parse(text), "x", Decimal(x))
    assert fragment in str(excinfo.value)


def test_unbound_variable():
    with pytest.raises(UnboundVariableError):
        eval_point(parse("x + y"), "x", Decimal(1))


def test_raising_precision_keeps_leading_digits():
    rng = random.Random(7)
    checked = 0
    for _ in range(40):
        e = random_safe_expression(rng)
        x = Decimal(f"{rng.uniform(-1.5, 1.5):.4f}")
        for digits in (10, 14):
            try:
                low = eval_point(e, "x", x, PrecisionContext(digits))
                high = eval_point(e, "x", x, PrecisionContext(digits * 2))
            except DomainError:
                break
            if low == 0:
                continue
            # agreement to (digits - 2) significant digits, one ulp slack
            ulp = Decimal(1).scaleb(low.adjusted() - (digits - 2) + 1)
            assert abs(low - high) <= ulp, (e, x, digits)
            checked += 1
    assert checked > 40
