"""difproof: certificate-based numerical proofs of strict one-variable
inequalities g1(x) > g2(x) on finite intervals.

Write the claim as a difference of two co-monotone functions, generate a
finite sequence of points whose chain comparisons witness the inequality,
and verify that sequence in fixed-precision decimal arithmetic or, for the
skeptical, with outward-rounded interval enclosures. Certificates serialize
to JSON so anyone can re-check them, at higher precision if desired.
"""

from .dif_core import (
    Certificate,
    CertificateFormatError,
    CertificateMismatchError,
    DifProblem,
    Direction,
    GenerationFailure,
    IntervalMatrixRow,
    IntervalOutcome,
    MatrixRow,
    MultiVariableError,
    ProblemEcho,
    SwapError,
    TauSequence,
    VerificationOutcome,
    certificate_from_json,
    certificate_to_json,
    check_certificate,
    detect_direction,
    detect_variable,
    echo_of_problem,
    generate_tau,
    verify_tau,
    verify_tau_interval,
)
from .expr import (
    DifferentiationError,
    DomainError,
    Expr,
    IntervalValue,
    ParseError,
    PrecisionContext,
    UnboundVariableError,
    differentiate,
    eval_interval,
    eval_point,
    free_variables,
    parse,
    serialize,
)
from .numeric import Accuracy, BracketError, default_accuracy, ffloor, solve_monotone
from .proofs import (
    AxiomaticEvidence,
    CheckedClaim,
    DecompositionMismatchError,
    DerivativeEvidence,
    MonotonicityClaim,
    ProofDocument,
    RigorReport,
    SubProofError,
    TransformRecord,
    check_proof_document,
    proof_document_from_json,
    proof_document_to_json,
    prove_monotonicity,
    shift_power_transform,
)

__version__ = "0.1.0"

__all__ = [
    "Accuracy",
    "AxiomaticEvidence",
    "BracketError",
    "Certificate",
    "CertificateFormatError",
    "CertificateMismatchError",
    "CheckedClaim",
    "DecompositionMismatchError",
    "DerivativeEvidence",
    "DifProblem",
    "DifferentiationError",
    "Direction",
    "DomainError",
    "Expr",
    "GenerationFailure",
    "IntervalMatrixRow",
    "IntervalOutcome",
    "IntervalValue",
    "MatrixRow",
    "MonotonicityClaim",
    "MultiVariableError",
    "ParseError",
    "PrecisionContext",
    "ProblemEcho",
    "ProofDocument",
    "RigorReport",
    "SubProofError",
    "SwapError",
    "TauSequence",
    "TransformRecord",
    "UnboundVariableError",
    "VerificationOutcome",
    "certificate_from_json",
    "certificate_to_json",
    "check_certificate",
    "check_proof_document",
    "default_accuracy",
    "detect_direction",
    "detect_variable",
    "differentiate",
    "echo_of_problem",
    "eval_interval",
    "eval_point",
    "ffloor",
    "free_variables",
    "generate_tau",
    "parse",
    "proof_document_from_json",
    "proof_document_to_json",
    "prove_monotonicity",
    "serialize",
    "shift_power_transform",
    "solve_monotone",
    "verify_tau",
    "verify_tau_interval",
]
