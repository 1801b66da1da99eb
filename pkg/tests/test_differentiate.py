import random
from decimal import Decimal

import mpmath as mp
import pytest

from difproof import (
    DifferentiationError,
    DomainError,
    PrecisionContext,
    differentiate,
    eval_point,
    parse,
)

from conftest import random_safe_expression
from oracles import central_difference, mp_eval

_HI = PrecisionContext(30)


def _agrees(e_text, var, points, expected_text):
    """Pointwise agreement between d(e)/d(var) and a hand-written form."""
    d = differentiate(parse(e_text), var)
    expected = parse(expected_text)
    for x in points:
        got = eval_point(d, var, Decimal(x), _HI)
        want = eval_point(expected, var, Decimal(x), _HI)
        assert abs(got - want) <= Decimal("1e-24") * max(1, abs(want)), (e_text, x)


def test_identity_derivative():
    _agrees("x", "x", ["0", "0.5", "-3"], "1")


def test_log_cube_sum_matches_closed_form():
    _agrees(
        "-ln(2)^3/2^s + ln(3)^3/3^s",
        "s",
        ["0", "0.25", "0.5", "0.75", "1"],
        "ln(2)^4/2^s - ln(3)^4/3^s",
    )
    # and the same pair without the sign flip
    _agrees(
        "ln(2)^3/2^s + ln(3)^3/3^s",
        "s",
        ["0", "0.3", "1"],
        "-(ln(2)^4/2^s) - ln(3)^4/3^s",
    )


def test_fixture_derivative_matches_central_difference(xlnx):
    d = differentiate(xlnx.g1, "x")
    got = eval_point(d, "x", Decimal("0.01"), PrecisionContext(20))
    fd = central_difference(xlnx.g1, "x", "0.01")
    rel = abs(mp.mpf(str(got)) - fd) / max(1, abs(fd))
    assert rel <= mp.mpf("1e-6")


@pytest.mark.parametrize(
    "text,var,x",
    [
        ("x*sin(x)", "x", "0.7"),
        ("exp(2*x)/x", "x", "0.9"),
        ("sqrt(x + 2)*cos(x)", "x", "0.4"),
        ("tan(0.3*x)", "x", "1.2"),
        ("log10(x + 2)", "x", "0.5"),
        ("x^x", "x", "0.6"),
        ("2^s + 5^s", "s", "0.37"),
        ("(1 + x*x)^3", "x", "0.8"),
    ],
)
def test_rules_against_finite_differences(text, var, x):
    e = parse(text)
    d = differentiate(e, var)
    got = eval_point(d, var, Decimal(x), PrecisionContext(25))
    fd = central_difference(e, var, x)
    rel = abs(mp.mpf(str(got)) - fd) / max(1, abs(fd))
    assert rel <= mp.mpf("1e-6"), text


def test_random_family_against_finite_differences():
    rng = random.Random(23)
    checked = 0
    while checked < 60:
        e = random_safe_expression(rng)
        x = f"{rng.uniform(-1.2, 1.2):.4f}"
        d = differentiate(e, "x")
        try:
            got = eval_point(d, "x", Decimal(x), PrecisionContext(25))
        except DomainError:
            continue
        fd = central_difference(e, "x", x)
        rel = abs(mp.mpf(str(got)) - fd) / max(1, abs(fd))
        assert rel <= mp.mpf("1e-6"), (e, x)
        checked += 1


def test_abs_is_refused():
    with pytest.raises(DifferentiationError):
        differentiate(parse("abs(x)"), "x")
    with pytest.raises(DifferentiationError):
        differentiate(parse("1 + abs(2*x)"), "x")


def test_derivative_of_other_variable_is_zero():
    d = differentiate(parse("x"), "s")
    assert eval_point(d, "s", Decimal(3), _HI) == 0
