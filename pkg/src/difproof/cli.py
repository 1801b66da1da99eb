"""Command-line front end: prove, verify, export plot data, re-check.

Exit codes are uniform across subcommands: 0 means proven/accepted, 1 means
the engine ran but the claim did not check out (generation failed, a chain
comparison is violated, or a certificate no longer verifies), and 2 means the
invocation itself is bad (unparseable input, wrong arguments, domain errors).
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Context, Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

from . import fixtures as bundled
from .dif_core import (
    Certificate,
    CertificateFormatError,
    CertificateMismatchError,
    DifProblem,
    GenerationFailure,
    IntervalOutcome,
    MultiVariableError,
    SwapError,
    TauSequence,
    VerificationOutcome,
    certificate_from_json,
    certificate_to_json,
    check_certificate,
    generate_tau,
    verify_tau,
    verify_tau_interval,
)
from .expr import (
    DomainError,
    ParseError,
    PrecisionContext,
    UnboundVariableError,
    eval_point,
)
from .proofs import check_proof_document, proof_document_from_json

OK, REJECTED, ERROR = 0, 1, 2


class CliError(Exception):
    """Usage-level problem; reported on stderr with exit code 2."""


def _read_json(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as err:
        raise CliError(f"cannot read {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise CliError(f"{path} is not valid JSON: {err}") from err
    if not isinstance(data, (dict, list)):
        raise CliError(f"{path}: unexpected JSON shape")
    return data


def _load_problem(args: argparse.Namespace) -> tuple[DifProblem, str]:
    data = _read_json(args.problem)
    if not isinstance(data, dict):
        raise CliError(f"{args.problem}: problem file must be a JSON object")
    try:
        g1, g2 = data["g1"], data["g2"]
        interval = (data["interval"][0], data["interval"][1])
    except (KeyError, IndexError, TypeError) as err:
        raise CliError(f"{args.problem}: missing problem field: {err}") from err
    options = dict(data.get("options", {}))
    mode = options.pop("mode", "float")
    if getattr(args, "mode", None):
        mode = args.mode
    if mode not in ("float", "interval"):
        raise CliError(f"unknown mode {mode!r}")

    kwargs: dict = {}
    steps = getattr(args, "steps", None) or options.get("steps")
    if steps is not None:
        kwargs["steps"] = int(steps)
    digits = getattr(args, "digits", None) or options.get("digits")
    if digits is not None:
        kwargs["digits_override"] = int(digits)
    relax = getattr(args, "relax", None) or options.get("relax")
    if relax is not None:
        kwargs["relax"] = Decimal(str(relax))
    precision = getattr(args, "precision", None) or options.get("precision")
    if precision is not None:
        kwargs["precision"] = PrecisionContext(int(precision))
    margin = options.get("margin")
    if margin is not None:
        kwargs["margin"] = Decimal(str(margin))
    problem = DifProblem.from_text(g1, g2, interval, var=data.get("var"), **kwargs)
    return problem, mode


def _format_tau(points) -> str:
    return "[" + ", ".join(str(t) for t in points) + "]"


def _format_matrix(outcome: VerificationOutcome | IntervalOutcome) -> str:
    header = ("k", "tau_k", "larger", "smaller", "diff")
    if isinstance(outcome, IntervalOutcome):
        body = [
            (str(r.index), str(r.tau), str(r.larger), str(r.smaller), str(r.diff))
            for r in outcome.rows
        ]
    else:
        body = [
            (str(r.index), str(r.tau), str(r.larger), str(r.smaller), str(r.diff))
            for r in outcome.rows
        ]
    widths = [max(len(row[i]) for row in [header, *body]) for i in range(5)]
    lines = ["  ".join(cell.rjust(widths[i]) for i, cell in enumerate(row)) for row in [header, *body]]
    return "\n".join(lines)


def _grid(alpha: Decimal, beta: Decimal, samples: int, digits: int) -> list[Decimal]:
    work = Context(prec=digits + 5)
    a, span = Fraction(alpha), Fraction(beta) - Fraction(alpha)
    points = []
    for i in range(samples + 1):
        x = a + span * Fraction(i, samples)
        points.append(work.divide(Decimal(x.numerator), Decimal(x.denominator)))
    return points


def _write_plot(problem: DifProblem, samples: int, out_path: str) -> None:
    if samples < 1:
        raise CliError("need at least one sample step")
    lines = ["x,g1,g2"]
    for i, x in enumerate(_grid(problem.alpha, problem.beta, samples, problem.precision.digits)):
        try:
            y1 = eval_point(problem.g1, problem.var, x, problem.precision)
            y2 = eval_point(problem.g2, problem.var, x, problem.precision)
        except DomainError as err:
            raise CliError(f"domain error at sample row {i} (x = {x}): {err}") from err
        lines.append(f"{x},{y1},{y2}")
    Path(out_path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _default_out(problem_path: str, suffix: str) -> str:
    return Path(problem_path).stem + suffix


def cmd_prove(args: argparse.Namespace) -> int:
    problem, mode = _load_problem(args)
    result = generate_tau(problem, mode=mode)
    if isinstance(result, GenerationFailure):
        print(f"    **** Fails after {result.steps_used} steps ({result.reason})")
        if result.at is not None:
            print(f"inequality violated near {result.at}")
        print(f"tail of partial sequence: {_format_tau(result.tail)}")
        return REJECTED
    out_path = args.out or _default_out(args.problem, ".cert.json")
    Path(out_path).write_text(certificate_to_json(result), encoding="utf-8")
    print(f"tau: {_format_tau(result.tau)}")
    print(f"certificate written to {out_path}")
    if args.long:
        outcome = (
            verify_tau_interval(problem, result.tau)
            if mode == "interval"
            else verify_tau(problem, result.tau)
        )
        print(_format_matrix(outcome))
        plot_path = args.plot_out or _default_out(args.problem, ".plot.csv")
        _write_plot(problem, args.samples, plot_path)
        print(f"plot data written to {plot_path}")
    return OK


def cmd_verify(args: argparse.Namespace) -> int:
    problem, mode = _load_problem(args)
    if args.tau:
        values = args.tau
    elif args.tau_file:
        raw = _read_json(args.tau_file)
        if not isinstance(raw, list):
            raise CliError(f"{args.tau_file}: expected a JSON array of decimals")
        values = raw
    elif args.cert:
        cert = certificate_from_json(Path(args.cert).read_text(encoding="utf-8"))
        values = [str(t) for t in cert.tau]
    else:
        raise CliError("no tau sequence given (positional values, --tau-file, or --cert)")
    try:
        tau = TauSequence.of(values)
    except (InvalidOperation, ValueError) as err:
        raise CliError(f"bad tau sequence: {err}") from err

    outcome = (
        verify_tau_interval(problem, tau) if mode == "interval" else verify_tau(problem, tau)
    )
    print(_format_matrix(outcome))
    if args.long:
        plot_path = args.plot_out or _default_out(args.problem, ".plot.csv")
        _write_plot(problem, args.samples, plot_path)
        print(f"plot data written to {plot_path}")
    if not outcome.accepted:
        print("false")
        return REJECTED
    print(f"accepted (min margin {outcome.min_margin})")
    if isinstance(outcome, VerificationOutcome) and not outcome.rigorous_accepted:
        print(f"note: min margin is below the rigorous threshold {problem.margin}")
    return OK


def cmd_plot_data(args: argparse.Namespace) -> int:
    problem, _ = _load_problem(args)
    out_path = args.out or _default_out(args.problem, ".csv")
    _write_plot(problem, args.samples, out_path)
    print(f"plot data written to {out_path}")
    return OK


def cmd_check(args: argparse.Namespace) -> int:
    try:
        text = Path(args.document).read_text(encoding="utf-8")
        data = json.loads(text)
    except OSError as err:
        raise CliError(f"cannot read {args.document}: {err}") from err
    except json.JSONDecodeError as err:
        raise CliError(f"{args.document} is not valid JSON: {err}") from err
    if isinstance(data, dict) and "main" in data:
        doc = proof_document_from_json(text)
        report = check_proof_document(doc, precision_digits=args.precision)
        print(f"rigor level: {report.level}")
        print(f"weakest link: {report.weakest_link}")
        for path in report.failures:
            print(f"failed component: {path}")
        return OK if report.ok else REJECTED
    cert = certificate_from_json(text)
    ok = check_certificate(cert, precision_digits=args.precision)
    digits = args.precision or cert.precision_digits
    if ok:
        print(f"certificate verifies at {digits} digits ({cert.mode} mode)")
        return OK
    print(f"certificate FAILED re-verification at {digits} digits")
    return REJECTED


def cmd_fixtures(args: argparse.Namespace) -> int:
    print("problems:")
    for name in bundled.PROBLEMS:
        print(f"  {name}: {bundled.problem_path(name)}")
    print("tau sequences:")
    for name in bundled.TAU_SEQUENCES:
        problem, good = bundled.TAU_INDEX[name]
        verdict = "verifies" if good else "fails"
        print(f"  {name} ({problem}, {verdict}): {bundled.tau_path(name)}")
    return OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="difproof",
        description=(
            "Prove strict one-variable inequalities on finite intervals by "
            "generating and verifying finite certificate sequences."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    prove = sub.add_parser("prove", help="generate a certificate for a problem file")
    prove.add_argument("problem", help="problem JSON file")
    prove.add_argument("--long", action="store_true", help="print the check matrix and write plot data")
    prove.add_argument("--steps", type=int, help="maximum number of certificate points")
    prove.add_argument("--digits", type=int, help="decimal places for certificate points")
    prove.add_argument("--relax", type=Decimal, help="blend weight pulling points back from the crossing")
    prove.add_argument("--precision", type=int, help="working significant digits")
    prove.add_argument("--mode", choices=("float", "interval"))
    prove.add_argument("--out", help="certificate output path")
    prove.add_argument("--plot-out", help="plot CSV path (with --long)")
    prove.add_argument("--samples", type=int, default=512, help="plot sample steps")
    prove.set_defaults(func=cmd_prove)

    verify = sub.add_parser("verify", help="verify a tau sequence against a problem file")
    verify.add_argument("problem", help="problem JSON file")
    verify.add_argument("tau", nargs="*", help="certificate points as decimals")
    verify.add_argument("--tau-file", help="JSON array of decimal strings")
    verify.add_argument("--cert", help="take the sequence from a certificate file")
    verify.add_argument("--long", action="store_true", help="also write plot data")
    verify.add_argument("--precision", type=int)
    verify.add_argument("--mode", choices=("float", "interval"))
    verify.add_argument("--plot-out")
    verify.add_argument("--samples", type=int, default=512)
    verify.set_defaults(func=cmd_verify)

    plot = sub.add_parser("plot-data", help="export uniform samples of g1 and g2 as CSV")
    plot.add_argument("problem")
    plot.add_argument("--samples", type=int, default=512)
    plot.add_argument("--out")
    plot.add_argument("--precision", type=int)
    plot.set_defaults(func=cmd_plot_data)

    check = sub.add_parser("check", help="re-check a certificate or proof document")
    check.add_argument("document", help="certificate or proof-document JSON file")
    check.add_argument("--precision", type=int, help="re-check at this many digits")
    check.set_defaults(func=cmd_check)

    fixtures_cmd = sub.add_parser("fixtures", help="list bundled example files")
    fixtures_cmd.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else ERROR
        return OK if code == 0 else ERROR
    try:
        return args.func(args)
    except (SwapError, MultiVariableError) as err:
        print(err, file=sys.stderr)
        return ERROR
    except (
        CliError,
        ParseError,
        DomainError,
        UnboundVariableError,
        CertificateFormatError,
        CertificateMismatchError,
    ) as err:
        print(f"error: {err}", file=sys.stderr)
        return ERROR
    except (ValueError, ArithmeticError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
