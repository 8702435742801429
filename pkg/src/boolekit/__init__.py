"""Exact-arithmetic verification of alternating binomial power sums.

The package builds the power-sum linear system on arithmetic-progression
nodes, evaluates its determinants in closed form, and checks the resulting
identities with zero tolerance against independent oracles.
"""

from .boole_identity import (
    CaseResult,
    IdentityCase,
    VerificationReport,
    boole_sum,
    closed_form_solution,
    expected_value,
    forward_difference_at_zero,
    generalized_sum,
    stirling2,
    verify_cramer,
    verify_generalized_boole,
    verify_stirling,
)
from .rational_core import (
    Rational,
    binomial,
    factorial,
    format_rational,
    is_canonical,
    parse_rational,
    rat,
    rat_pow,
    superfactorial,
)
from .vandermonde import (
    ArithmeticNodes,
    ExactMatrix,
    LinearSystem,
    SingularMatrixError,
    build_system,
    det_bareiss,
    det_cramer_numerator,
    det_vandermonde_closed,
    det_vandermonde_general,
    solve_exact,
)

__version__ = "0.1.0"

__all__ = [
    "Rational",
    "rat",
    "parse_rational",
    "format_rational",
    "is_canonical",
    "factorial",
    "binomial",
    "superfactorial",
    "rat_pow",
    "ArithmeticNodes",
    "ExactMatrix",
    "LinearSystem",
    "SingularMatrixError",
    "build_system",
    "det_vandermonde_general",
    "det_vandermonde_closed",
    "det_cramer_numerator",
    "det_bareiss",
    "solve_exact",
    "IdentityCase",
    "CaseResult",
    "VerificationReport",
    "closed_form_solution",
    "boole_sum",
    "stirling2",
    "forward_difference_at_zero",
    "generalized_sum",
    "expected_value",
    "verify_generalized_boole",
    "verify_stirling",
    "verify_cramer",
    "__version__",
]
