"""Certificate engine for strict inequalities between co-monotone functions.

To prove g1 > g2 on [alpha, beta] when both functions increase (or both
decrease) there, it is enough to exhibit finitely many points
alpha = tau_1 < ... < tau_n = beta whose chain comparisons

    g2(tau_{k+1}) < g1(tau_k)      (increasing case; mirrored when decreasing)

all hold: between consecutive points the functions cannot cross. This module
detects the shared direction, generates such certificate sequences, verifies
them in plain fixed-precision arithmetic or with interval enclosures, and
re-checks serialized certificates. Monotonicity of the operands is an assumed
premise here; discharging it rigorously is the proofs layer's job.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Context, Decimal, ROUND_FLOOR
from enum import Enum
from fractions import Fraction
from typing import Iterable, Union

from .expr import (
    Expr,
    IntervalValue,
    PrecisionContext,
    Unary,
    eval_interval,
    eval_point,
    free_variables,
    parse,
    serialize,
)
from .numeric import BracketError, default_accuracy, ffloor_fraction, solve_monotone

SWAP_MESSAGE = "Function 1 is smaller. Swap the functions."


class SwapError(ValueError):
    """The first function is below the second at the left endpoint."""

    def __init__(self) -> None:
        super().__init__(SWAP_MESSAGE)


class MultiVariableError(ValueError):
    def __init__(self, names: Iterable[str]):
        listed = ", ".join(sorted(names))
        super().__init__(f"Functions have more than one variable: {listed}")


class CertificateFormatError(ValueError):
    """A certificate or problem document does not match its schema."""


class CertificateMismatchError(ValueError):
    """A certificate's problem echo differs from the supplied problem."""


class Direction(Enum):
    INCREASING = "inc"
    DECREASING = "dec"


def detect_variable(g1: Expr, g2: Expr) -> str | None:
    """The single shared variable of the pair, or None for constant inputs."""
    names = free_variables(g1, g2)
    if len(names) > 1:
        raise MultiVariableError(names)
    return next(iter(names)) if names else None


@dataclass(frozen=True)
class DifProblem:
    """An inequality instance g1 > g2 on [alpha, beta] plus engine options."""

    g1: Expr
    g2: Expr
    var: str | None
    alpha: Decimal
    beta: Decimal
    steps: int = 100
    digits_override: int | None = None
    relax: Decimal = Decimal(99)
    precision: PrecisionContext = PrecisionContext(10)
    margin: Decimal | None = None

    def __post_init__(self) -> None:
        if not self.alpha < self.beta:
            raise ValueError("need alpha < beta")
        if self.steps < 1:
            raise ValueError("steps must be at least 1")
        if not self.relax > 0:
            raise ValueError("relax must be positive")
        if self.margin is None:
            object.__setattr__(
                self, "margin", Decimal(1).scaleb(6 - self.precision.digits)
            )
        if not self.margin > 0:
            raise ValueError("margin must be positive")

    @classmethod
    def from_text(
        cls,
        g1: str,
        g2: str,
        interval: tuple[str, str],
        var: str | None = None,
        **options,
    ) -> "DifProblem":
        e1, e2 = parse(g1), parse(g2)
        detected = detect_variable(e1, e2)
        if var is None:
            var = detected
        elif detected is not None and detected != var:
            raise ValueError(
                f"declared variable {var!r} does not match detected {detected!r}"
            )
        return cls(e1, e2, var, Decimal(interval[0]), Decimal(interval[1]), **options)


@dataclass(frozen=True)
class TauSequence:
    """Certificate points alpha = tau_1 < ... < tau_n = beta."""

    points: tuple[Decimal, ...]

    def __post_init__(self) -> None:
        if len(self.points) < 2:
            raise ValueError("a certificate sequence needs at least two points")
        for a, b in zip(self.points, self.points[1:]):
            if not a < b:
                raise ValueError(f"sequence is not strictly increasing at {a} -> {b}")

    @classmethod
    def of(cls, values: Iterable[Union[Decimal, str, int]]) -> "TauSequence":
        return cls(tuple(Decimal(v) for v in values))

    def validate_for(self, alpha: Decimal, beta: Decimal) -> None:
        if self.points[0] != alpha:
            raise ValueError(f"sequence must start at {alpha}, not {self.points[0]}")
        if self.points[-1] != beta:
            raise ValueError(f"sequence must end at {beta}, not {self.points[-1]}")

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True)
class MatrixRow:
    """One chain comparison: index, point, larger side, smaller side, margin."""

    index: int
    tau: Decimal
    larger: Decimal
    smaller: Decimal
    diff: Decimal


@dataclass(frozen=True)
class IntervalMatrixRow:
    index: int
    tau: Decimal
    larger: IntervalValue
    smaller: IntervalValue
    diff: IntervalValue


@dataclass(frozen=True)
class VerificationOutcome:
    accepted: bool
    rigorous_accepted: bool
    rows: tuple[MatrixRow, ...]
    min_margin: Decimal
    first_violation: int | None
    direction: Direction

    @property
    def matrix(self) -> tuple[MatrixRow, ...]:
        return self.rows


@dataclass(frozen=True)
class IntervalOutcome:
    accepted: bool
    rows: tuple[IntervalMatrixRow, ...]
    min_margin: Decimal
    first_violation: int | None
    direction: Direction

    @property
    def matrix(self) -> tuple[IntervalMatrixRow, ...]:
        return self.rows


@dataclass(frozen=True)
class ProblemEcho:
    """Canonical serialization of a problem, embedded in certificates."""

    g1: str
    g2: str
    var: str
    interval: tuple[str, str]


@dataclass(frozen=True)
class Certificate:
    problem: ProblemEcho
    direction: Direction
    tau: TauSequence
    precision_digits: int
    min_margin: Decimal
    mode: str  # "float" | "interval"

    def to_problem(self, precision_digits: int | None = None) -> DifProblem:
        digits = precision_digits or self.precision_digits
        return DifProblem.from_text(
            self.problem.g1,
            self.problem.g2,
            self.problem.interval,
            var=self.problem.var or None,
            precision=PrecisionContext(digits),
        )


@dataclass(frozen=True)
class GenerationFailure:
    """Certificate generation gave up; ``tail`` is the end of the partial
    sequence, useful for judging how far it got."""

    steps_used: int
    tail: tuple[Decimal, ...]
    reason: str  # "step-limit" | "violation-at-point" | "accuracy-exhausted"
    at: Decimal | None = None


def echo_of_problem(p: DifProblem) -> ProblemEcho:
    return ProblemEcho(
        serialize(p.g1), serialize(p.g2), p.var or "", (str(p.alpha), str(p.beta))
    )


def detect_direction(p: DifProblem) -> tuple[Direction, Expr, Expr]:
    """Classify the pair and normalize it to an increasing pair (f1, f2).

    Requires g1(alpha) >= g2(alpha) (otherwise the caller passed the functions
    in the wrong order). The shared direction is read off by comparing
    g1(alpha) with g1(beta); a decreasing pair is mirrored to (-g2, -g1) so
    one chain condition covers both cases.
    """
    detected = detect_variable(p.g1, p.g2)
    if detected is not None and p.var != detected:
        raise ValueError(
            f"problem variable {p.var!r} does not match detected {detected!r}"
        )
    ga = eval_point(p.g1, p.var, p.alpha, p.precision)
    gb = eval_point(p.g2, p.var, p.alpha, p.precision)
    if ga < gb:
        raise SwapError()
    gb = eval_point(p.g1, p.var, p.beta, p.precision)
    if ga < gb:
        return Direction.INCREASING, p.g1, p.g2
    return Direction.DECREASING, Unary("neg", p.g2), Unary("neg", p.g1)


def verify_tau(p: DifProblem, tau: TauSequence) -> VerificationOutcome:
    """Check the chain comparisons for ``tau`` and build the five-column matrix.

    Stops at the first strictly violated row and reports the partial matrix.
    Acceptance demands every difference strictly positive; the rigorous flag
    additionally demands every difference at least ``p.margin`` so the verdict
    cannot be an artifact of rounding at the working precision.
    """
    tau.validate_for(p.alpha, p.beta)
    direction, _, _ = detect_direction(p)
    inc = 1 if direction is Direction.INCREASING else 0
    c = Context(prec=p.precision.digits)
    pts = tau.points
    n = len(pts)

    def ev(e: Expr, x: Decimal) -> Decimal:
        return eval_point(e, p.var, x, p.precision)

    rows: list[MatrixRow] = []
    first_violation: int | None = None
    for k in range(1, n):
        larger = ev(p.g1, pts[k - inc])
        smaller = ev(p.g2, pts[k + inc - 1])
        rows.append(MatrixRow(k, pts[k - 1], larger, smaller, c.subtract(larger, smaller)))
        if larger < smaller:
            first_violation = k
            break
    if first_violation is None:
        larger = ev(p.g1, pts[-1])
        smaller = ev(p.g2, pts[-1])
        rows.append(MatrixRow(n, pts[-1], larger, smaller, c.subtract(larger, smaller)))
    min_margin = min(row.diff for row in rows)
    accepted = first_violation is None and all(row.diff > 0 for row in rows)
    rigorous = accepted and min_margin >= p.margin
    return VerificationOutcome(
        accepted, rigorous, tuple(rows), min_margin, first_violation, direction
    )


def verify_tau_interval(p: DifProblem, tau: TauSequence) -> IntervalOutcome:
    """Interval-mode verification: every comparison uses enclosures of the two
    sides, and a row is accepted only when the enclosures are disjoint in the
    right order. Acceptance here implies plain acceptance at equal precision."""
    tau.validate_for(p.alpha, p.beta)
    direction, _, _ = detect_direction(p)
    inc = 1 if direction is Direction.INCREASING else 0
    digits = p.precision.digits
    cf = Context(prec=digits, rounding=ROUND_FLOOR)
    from decimal import ROUND_CEILING

    cc = Context(prec=digits, rounding=ROUND_CEILING)
    pts = tau.points
    n = len(pts)

    def enclose(e: Expr, x: Decimal) -> IntervalValue:
        return eval_interval(e, p.var, IntervalValue.point(x), p.precision)

    def row_of(k: int, tau_k: Decimal, larger: IntervalValue, smaller: IntervalValue) -> IntervalMatrixRow:
        diff = IntervalValue(
            cf.subtract(larger.lo, smaller.hi), cc.subtract(larger.hi, smaller.lo)
        )
        return IntervalMatrixRow(k, tau_k, larger, smaller, diff)

    rows: list[IntervalMatrixRow] = []
    first_violation: int | None = None
    for k in range(1, n):
        larger = enclose(p.g1, pts[k - inc])
        smaller = enclose(p.g2, pts[k + inc - 1])
        rows.append(row_of(k, pts[k - 1], larger, smaller))
        if not smaller.hi < larger.lo:
            first_violation = k
            break
    accepted = first_violation is None
    if first_violation is None:
        larger = enclose(p.g1, pts[-1])
        smaller = enclose(p.g2, pts[-1])
        rows.append(row_of(n, pts[-1], larger, smaller))
        accepted = smaller.hi < larger.lo
    min_margin = min(row.diff.lo for row in rows)
    return IntervalOutcome(accepted, tuple(rows), min_margin, first_violation, direction)


def _round_down_sig(d: Decimal, sig: int = 3) -> Decimal:
    """Round toward -inf to ``sig`` significant digits.

    Recorded certificate margins are deliberately coarse: re-checks compare
    against them with one-ulp slack, and a coarse last place keeps that slack
    above the evaluation noise of cross-precision re-runs.
    """
    if d == 0:
        return Decimal(0)
    exponent = d.adjusted() - sig + 1
    return d.quantize(Decimal(1).scaleb(exponent), rounding=ROUND_FLOOR, context=Context(prec=40))


def _ulp(d: Decimal) -> Decimal:
    return Decimal(1).scaleb(d.as_tuple().exponent)


def generate_tau(p: DifProblem, mode: str = "float") -> Certificate | GenerationFailure:
    """Generate a certificate sequence for ``p``.

    Starting from alpha, each step solves f2(r) = f1(tau_k) for the crossing
    abscissa, blends r back toward tau_k with weight relax/(relax+1) to leave
    slack for rounding, and floors the result to the working number of decimal
    places so certificate points stay short. When flooring makes no progress
    the number of places is raised by one (burning a step), up to the working
    precision. The loop ends once f1 has reached f2(beta), and beta is
    appended as the final point.

    Co-monotonicity of the pair is the caller's premise; with a false premise
    the engine can stop with a ``violation-at-point`` failure, whose abscissa
    is direct numeric evidence against the claimed inequality.
    """
    if mode not in ("float", "interval"):
        raise ValueError(f"unknown mode {mode!r}")
    direction, f1, f2 = detect_direction(p)
    if p.digits_override is not None and p.digits_override > 0:
        acc = p.digits_override
    else:
        acc = default_accuracy(p.alpha, p.beta).decimal_places
    tau: list[Decimal] = [p.alpha]
    tt = p.alpha
    ga = eval_point(f1, p.var, p.alpha, p.precision)
    gb = eval_point(f2, p.var, p.beta, p.precision)
    relax = Fraction(p.relax)

    def tail() -> tuple[Decimal, ...]:
        return tuple(tau[-min(p.steps, 5):])

    steps_used = 0
    for _ in range(p.steps):
        if not ga < gb:
            break
        steps_used += 1
        try:
            r = solve_monotone(f2, p.var, ga, tt, p.beta, p.precision)
        except BracketError as err:
            if err.side == "lo":
                return GenerationFailure(steps_used, tail(), "violation-at-point", at=tt)
            raise
        blend = (relax * Fraction(r) + Fraction(tt)) / (relax + 1)
        t1 = min(ffloor_fraction(blend, acc), p.beta)
        if t1 <= tt:
            if acc >= p.precision.digits:
                return GenerationFailure(steps_used, tail(), "accuracy-exhausted")
            acc += 1
            continue
        tt = t1
        tau.append(tt)
        ga = eval_point(f1, p.var, tt, p.precision)
    if ga < gb:
        return GenerationFailure(p.steps, tail(), "step-limit")
    tau.append(p.beta)
    sequence = TauSequence(tuple(tau))
    if mode == "interval":
        margin = verify_tau_interval(p, sequence).min_margin
    else:
        margin = verify_tau(p, sequence).min_margin
    return Certificate(
        problem=echo_of_problem(p),
        direction=direction,
        tau=sequence,
        precision_digits=p.precision.digits,
        min_margin=_round_down_sig(margin),
        mode=mode,
    )


def check_certificate(
    cert: Certificate,
    problem: DifProblem | None = None,
    precision_digits: int | None = None,
) -> bool:
    """Re-verify a certificate at its recorded (or an overriding) precision.

    True iff verification accepts and the recomputed minimum margin is no
    more than one unit in the last place below the recorded one. Raises
    :class:`CertificateMismatchError` when a problem is supplied whose
    canonical form differs from the certificate's echo.
    """
    if problem is not None:
        supplied = echo_of_problem(problem)
        if supplied != cert.problem:
            raise CertificateMismatchError(
                f"certificate echo {cert.problem} does not match supplied problem {supplied}"
            )
    p = cert.to_problem(precision_digits)
    try:
        if cert.mode == "interval":
            outcome: VerificationOutcome | IntervalOutcome = verify_tau_interval(p, cert.tau)
        else:
            outcome = verify_tau(p, cert.tau)
    except ValueError:
        return False
    if not outcome.accepted:
        return False
    return outcome.min_margin >= cert.min_margin - _ulp(cert.min_margin)


# --- JSON wire format ------------------------------------------------------


def certificate_to_dict(cert: Certificate) -> dict:
    return {
        "problem": {
            "g1": cert.problem.g1,
            "g2": cert.problem.g2,
            "var": cert.problem.var,
            "interval": list(cert.problem.interval),
        },
        "direction": cert.direction.value,
        "tau": [str(t) for t in cert.tau],
        "precision_digits": cert.precision_digits,
        "min_margin": str(cert.min_margin),
        "mode": cert.mode,
    }


def certificate_to_json(cert: Certificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2) + "\n"


def certificate_from_dict(data: dict) -> Certificate:
    try:
        problem = data["problem"]
        echo = ProblemEcho(
            g1=problem["g1"],
            g2=problem["g2"],
            var=problem["var"],
            interval=(problem["interval"][0], problem["interval"][1]),
        )
        direction = Direction(data["direction"])
        tau = TauSequence.of(data["tau"])
        digits = int(data["precision_digits"])
        min_margin = Decimal(data["min_margin"])
        mode = data["mode"]
        if mode not in ("float", "interval"):
            raise ValueError(f"unknown mode {mode!r}")
    except (KeyError, TypeError, IndexError, ValueError, ArithmeticError) as err:
        raise CertificateFormatError(f"malformed certificate: {err}") from err
    return Certificate(echo, direction, tau, digits, min_margin, mode)


def certificate_from_json(text: str) -> Certificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise CertificateFormatError(f"malformed certificate: {err}") from err
    if not isinstance(data, dict):
        raise CertificateFormatError("malformed certificate: not a JSON object")
    return certificate_from_dict(data)
