"""Assemble single chain checks into complete proof documents.

A bare certificate proves g1 > g2 only under the premise that both operands
are monotone. A proof document discharges that premise: each operand carries
a monotonicity claim whose evidence is itself a chain certificate for the
derivative's sign (h1 - h2 equals the derivative, or its negation for a
decreasing claim), or an explicit user assertion flagged as non-rigorous.
Operands that are not monotone to begin with can be repaired by the
shift-power transform (x - alpha + 1)^n, which preserves the sign of the
original on [alpha, +inf).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from decimal import Context, Decimal
from fractions import Fraction
from typing import Union

from .dif_core import (
    Certificate,
    CertificateFormatError,
    DifProblem,
    Direction,
    IntervalOutcome,
    TauSequence,
    VerificationOutcome,
    certificate_from_dict,
    certificate_to_dict,
    check_certificate,
    verify_tau,
    verify_tau_interval,
)
from .expr import (
    Binary,
    DecimalLiteral,
    Expr,
    PrecisionContext,
    Unary,
    Variable,
    differentiate,
    eval_point,
    parse,
    serialize,
    variables_of,
)

_SAMPLE_SEED = 271828
_IDENTITY_TOL = Decimal("1e-6")
_MAX_DEPTH = 3


class DecompositionMismatchError(ValueError):
    """The claimed h1 - h2 does not agree with the target's derivative."""


class SubProofError(ValueError):
    """A monotonicity sub-proof could not be established."""


@dataclass(frozen=True)
class DerivativeEvidence:
    """Chain evidence that h1 > h2 on the interval, where h1 - h2 equals the
    claimed sign of the target's derivative."""

    h1: Expr
    h2: Expr
    tau: TauSequence


@dataclass(frozen=True)
class AxiomaticEvidence:
    """User-asserted monotonicity; keeps the document honest about rigor."""

    note: str = ""


Evidence = Union[DerivativeEvidence, AxiomaticEvidence]


@dataclass(frozen=True)
class MonotonicityClaim:
    target: Expr
    claimed: Direction
    evidence: Evidence


@dataclass(frozen=True)
class TransformRecord:
    """f rewritten as (x - alpha + 1)^n * f; positive factor, same sign."""

    original: Expr
    alpha: Decimal
    n: int
    transformed: Expr

    def __post_init__(self) -> None:
        if self.n == 0:
            raise ValueError("transform exponent must be non-zero")


@dataclass(frozen=True)
class ProofDocument:
    main: Certificate
    monotonicity: tuple[MonotonicityClaim, ...]
    transforms: tuple[TransformRecord, ...] = ()
    narrative: str = ""


@dataclass(frozen=True)
class CheckedClaim:
    claim: MonotonicityClaim
    float_outcome: VerificationOutcome
    interval_outcome: IntervalOutcome
    max_identity_deviation: Decimal

    @property
    def float_accepted(self) -> bool:
        return self.float_outcome.accepted

    @property
    def interval_accepted(self) -> bool:
        return self.interval_outcome.accepted


@dataclass(frozen=True)
class RigorReport:
    ok: bool
    level: str  # rigorous | float-verified | axiomatic-monotonicity | failed
    weakest_link: str
    failures: tuple[str, ...] = ()


def shift_power_transform(f: Expr, var: str, alpha: Decimal, n: int) -> TransformRecord:
    """Build (var - alpha + 1)^n * f symbolically.

    The factor is strictly positive for var >= alpha, so the product has the
    same sign as f there, and a suitable n can make the product monotone when
    f itself is not.
    """
    if n == 0:
        raise ValueError("transform exponent must be non-zero")
    x = Variable(var)
    shifted = x if alpha == 0 else Binary("sub", x, DecimalLiteral(str(alpha)))
    base = Binary("add", shifted, DecimalLiteral("1"))
    exponent: Expr = DecimalLiteral(str(n)) if n > 0 else Unary("neg", DecimalLiteral(str(-n)))
    transformed = Binary("mul", Binary("pow", base, exponent), f)
    return TransformRecord(original=f, alpha=alpha, n=n, transformed=transformed)


def _sample_points(alpha: Decimal, beta: Decimal, count: int, seed: int) -> list[Decimal]:
    rng = random.Random(seed)
    big = Context(prec=40)
    a, b = Fraction(alpha), Fraction(beta)
    points = []
    for _ in range(count):
        u = Fraction(rng.getrandbits(48), 2**48)
        x = a + (b - a) * u
        points.append(big.divide(Decimal(x.numerator), Decimal(x.denominator)))
    return points


def _single_variable(*exprs: Expr) -> str | None:
    names: set[str] = set()
    for e in exprs:
        names |= variables_of(e)
    if len(names) > 1:
        raise ValueError(f"more than one variable in sub-proof: {sorted(names)}")
    return next(iter(names)) if names else None


def prove_monotonicity(
    claim: MonotonicityClaim,
    interval: tuple[Decimal, Decimal],
    ctx: PrecisionContext = PrecisionContext(),
    depth: int = 1,
) -> CheckedClaim:
    """Check a monotonicity claim backed by derivative chain evidence.

    Two independent guards: the chain certificate must prove h1 > h2 on the
    interval (plain and interval mode are both run), and h1 - h2 must agree
    pointwise with the appropriately signed derivative of the target at 64
    sampled points, which catches evidence for the wrong function.
    """
    if depth > _MAX_DEPTH:
        raise SubProofError(f"sub-proof recursion deeper than {_MAX_DEPTH}")
    if not isinstance(claim.evidence, DerivativeEvidence):
        raise SubProofError("claim carries no derivative evidence to check")
    h1, h2 = claim.evidence.h1, claim.evidence.h2
    var = _single_variable(claim.target, h1, h2)
    alpha, beta = interval
    derivative = differentiate(claim.target, var or "x")
    sign = 1 if claim.claimed is Direction.INCREASING else -1
    guard = PrecisionContext(max(ctx.digits + 6, 16))
    c = Context(prec=guard.digits)
    worst = Decimal(0)
    for x in _sample_points(alpha, beta, 64, _SAMPLE_SEED):
        lhs = c.subtract(
            eval_point(h1, var, x, guard), eval_point(h2, var, x, guard)
        )
        rhs = c.multiply(Decimal(sign), eval_point(derivative, var, x, guard))
        deviation = abs(c.subtract(lhs, rhs))
        allowed = _IDENTITY_TOL * max(Decimal(1), abs(rhs))
        if deviation > allowed:
            raise DecompositionMismatchError(
                f"h1 - h2 deviates from the signed derivative by {deviation} at {x}"
            )
        scale = max(Decimal(1), abs(rhs))
        worst = max(worst, c.divide(deviation, scale))
    problem = DifProblem(h1, h2, var, alpha, beta, precision=ctx)
    float_outcome = verify_tau(problem, claim.evidence.tau)
    if not float_outcome.accepted:
        where = float_outcome.first_violation
        raise SubProofError(
            f"derivative chain verification failed"
            + (f" at row {where}" if where is not None else "")
        )
    interval_outcome = verify_tau_interval(problem, claim.evidence.tau)
    return CheckedClaim(claim, float_outcome, interval_outcome, worst)


def _sign_of(value: Decimal, tol: Decimal) -> int:
    if value > tol:
        return 1
    if value < -tol:
        return -1
    return 0


def _check_transform(record: TransformRecord, interval: tuple[str, str], ctx: PrecisionContext) -> None:
    var = _single_variable(record.original, record.transformed)
    guard = PrecisionContext(max(ctx.digits + 6, 16))
    at_alpha_orig = eval_point(record.original, var, record.alpha, guard)
    at_alpha_tr = eval_point(record.transformed, var, record.alpha, guard)
    allowed = _IDENTITY_TOL * max(Decimal(1), abs(at_alpha_orig))
    if abs(at_alpha_tr - at_alpha_orig) > allowed:
        raise ValueError(
            f"transform changes the value at alpha: {at_alpha_orig} vs {at_alpha_tr}"
        )
    lo, hi = Decimal(interval[0]), Decimal(interval[1])
    lo = max(lo, record.alpha)
    if not lo < hi:
        return
    tol = Decimal(1).scaleb(-(guard.digits - 4))
    for x in _sample_points(lo, hi, 64, _SAMPLE_SEED + 1):
        a = eval_point(record.original, var, x, guard)
        b = eval_point(record.transformed, var, x, guard)
        if _sign_of(a, tol) != _sign_of(b, tol) and 0 not in (_sign_of(a, tol), _sign_of(b, tol)):
            raise ValueError(f"transform changes sign at {x}: {a} vs {b}")


def check_proof_document(
    doc: ProofDocument, precision_digits: int | None = None
) -> RigorReport:
    """Re-check every component of a proof document and grade its rigor.

    rigorous: main certificate passed in interval mode and every operand
    carries derivative evidence that passed in interval mode too.
    float-verified: everything checked, but some link rests on plain
    fixed-precision comparisons. axiomatic-monotonicity: at least one operand
    is only user-asserted. Failures are reported by component path.
    """
    failures: list[str] = []
    axiomatic: list[str] = []
    margins: dict[str, Decimal] = {}
    interval_ok: dict[str, bool] = {}

    try:
        main_ok = check_certificate(doc.main, precision_digits=precision_digits)
    except (CertificateFormatError, ValueError, ArithmeticError):
        main_ok = False
    if not main_ok:
        failures.append("main")
    margins["main"] = doc.main.min_margin
    interval_ok["main"] = doc.main.mode == "interval" and main_ok

    ctx = PrecisionContext(precision_digits or doc.main.precision_digits)
    alpha = Decimal(doc.main.problem.interval[0])
    beta = Decimal(doc.main.problem.interval[1])

    for i, claim in enumerate(doc.monotonicity):
        path = f"monotonicity[{i}]"
        if isinstance(claim.evidence, AxiomaticEvidence):
            axiomatic.append(path)
            continue
        try:
            checked = prove_monotonicity(claim, (alpha, beta), ctx)
        except (ValueError, ArithmeticError):
            failures.append(path)
            continue
        margins[path] = checked.float_outcome.min_margin
        interval_ok[path] = checked.interval_accepted

    for i, record in enumerate(doc.transforms):
        path = f"transforms[{i}]"
        try:
            _check_transform(record, doc.main.problem.interval, ctx)
        except (ValueError, ArithmeticError):
            failures.append(path)

    if failures:
        return RigorReport(False, "failed", failures[0], tuple(failures))
    if axiomatic:
        return RigorReport(True, "axiomatic-monotonicity", axiomatic[0])
    if all(interval_ok.values()):
        weakest = min(margins, key=lambda path: margins[path])
        return RigorReport(True, "rigorous", weakest)
    weakest = next(path for path, ok in interval_ok.items() if not ok)
    return RigorReport(True, "float-verified", weakest)


# --- JSON wire format ------------------------------------------------------


def proof_document_to_dict(doc: ProofDocument) -> dict:
    claims = []
    for claim in doc.monotonicity:
        if isinstance(claim.evidence, DerivativeEvidence):
            evidence = {
                "type": "derivative-dif",
                "h1": serialize(claim.evidence.h1),
                "h2": serialize(claim.evidence.h2),
                "tau": [str(t) for t in claim.evidence.tau],
            }
        else:
            evidence = {"type": "axiomatic", "note": claim.evidence.note}
        claims.append(
            {
                "target": serialize(claim.target),
                "claimed": claim.claimed.value,
                "evidence": evidence,
            }
        )
    return {
        "main": certificate_to_dict(doc.main),
        "monotonicity": claims,
        "transforms": [
            {
                "original": serialize(t.original),
                "alpha": str(t.alpha),
                "n": t.n,
                "transformed": serialize(t.transformed),
            }
            for t in doc.transforms
        ],
        "narrative": doc.narrative,
    }


def proof_document_to_json(doc: ProofDocument) -> str:
    return json.dumps(proof_document_to_dict(doc), indent=2) + "\n"


def proof_document_from_dict(data: dict) -> ProofDocument:
    try:
        main = certificate_from_dict(data["main"])
        claims = []
        for raw in data.get("monotonicity", []):
            evidence_raw = raw["evidence"]
            if evidence_raw["type"] == "derivative-dif":
                evidence: Evidence = DerivativeEvidence(
                    h1=parse(evidence_raw["h1"]),
                    h2=parse(evidence_raw["h2"]),
                    tau=TauSequence.of(evidence_raw["tau"]),
                )
            elif evidence_raw["type"] == "axiomatic":
                evidence = AxiomaticEvidence(note=evidence_raw.get("note", ""))
            else:
                raise ValueError(f"unknown evidence type {evidence_raw['type']!r}")
            claims.append(
                MonotonicityClaim(
                    target=parse(raw["target"]),
                    claimed=Direction(raw["claimed"]),
                    evidence=evidence,
                )
            )
        transforms = tuple(
            TransformRecord(
                original=parse(raw["original"]),
                alpha=Decimal(raw["alpha"]),
                n=int(raw["n"]),
                transformed=parse(raw["transformed"]),
            )
            for raw in data.get("transforms", [])
        )
    except (KeyError, TypeError, IndexError, ValueError, ArithmeticError) as err:
        if isinstance(err, CertificateFormatError):
            raise
        raise CertificateFormatError(f"malformed proof document: {err}") from err
    return ProofDocument(
        main=main,
        monotonicity=tuple(claims),
        transforms=transforms,
        narrative=data.get("narrative", ""),
    )


def proof_document_from_json(text: str) -> ProofDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise CertificateFormatError(f"malformed proof document: {err}") from err
    if not isinstance(data, dict):
        raise CertificateFormatError("malformed proof document: not a JSON object")
    return proof_document_from_dict(data)
