"""Alternating binomial power sums and their verification sweeps.

Three families of exact identities live here, each evaluated by at least two
independent routes so that a bug in one route cannot silently confirm itself:

* the classical alternating sum  sum_k (-1)^(n-k) C(n,k) k^m, which equals
  n! when m = n and 0 when m < n, and more generally n! * S(m,n) with S the
  Stirling partition numbers;
* its generalization over arithmetic-progression nodes,
  sum_k (-1)^k C(n,k) (a+bk)^m, equal to (-1)^n b^n n! at m = n and 0 for
  m < n;
* the Cramer-rule reading of both: the signed binomials (-1)^(n-k) C(n,k)
  form the unique solution of the power-sum linear system, so substituting
  them back must reproduce every equation, and the closed-form determinant
  ratios must reproduce every component.

The verify_* sweeps return in-memory reports; serialization is the cli
module's concern.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .rational_core import Rational, binomial, factorial, rat_pow
from .vandermonde import (
    ArithmeticNodes,
    SingularMatrixError,
    build_system,
    det_cramer_numerator,
    det_vandermonde_closed,
    solve_exact,
)


@dataclass(frozen=True)
class IdentityCase:
    """One (n, m) instance of an identity at parameters (a, b).

    For generalized-sum cases m <= n holds (the closed form is only stated
    there); Stirling-relation cases use the full grid, and Cramer component
    checks reuse the m slot for the component index k.
    """

    n: int
    m: int
    a: Rational
    b: Rational

    def __post_init__(self) -> None:
        if self.n < 0 or self.m < 0:
            raise ValueError(f"n and m must be >= 0, got n={self.n} m={self.m}")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))


@dataclass(frozen=True)
class CaseResult:
    """Both sides of one checked case.

    ``passed`` is not always just ``lhs == rhs``: sweeps that consult a third
    route (the difference table in the Stirling sweep, the Cramer ratio in
    the component sweep) fold that route's agreement into ``passed`` as well.
    """

    case: IdentityCase
    lhs: Rational
    rhs: Rational
    passed: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "lhs", Fraction(self.lhs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))


@dataclass(frozen=True)
class VerificationReport:
    """Ordered case results plus free-form notes (skipped checks and the like)."""

    results: tuple[CaseResult, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def total(self) -> int:
        return len(self.results)

    @property
    def failures(self) -> int:
        return sum(1 for r in self.results if not r.passed)

    @property
    def ok(self) -> bool:
        return self.failures == 0


def closed_form_solution(n: int) -> list[int]:
    """The signed binomial vector ((-1)^(n-k) * C(n,k) for k = 0..n).

    This is the solution of the power-sum system read off from the
    determinant ratios, so it doubles as the expected output of the generic
    solver.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return [(-1) ** (n - k) * binomial(n, k) for k in range(n + 1)]


def boole_sum(n: int, m: int) -> int:
    """sum_{k=0..n} (-1)^(n-k) * C(n,k) * k^m, exactly.

    The k = 0 term uses 0^0 = 1 when m = 0.  Equals n! at m = n, vanishes
    for m < n, and equals n! * S(m,n) in general.
    """
    if n < 0 or m < 0:
        raise ValueError(f"n and m must be >= 0, got n={n} m={m}")
    return sum((-1) ** (n - k) * binomial(n, k) * k**m for k in range(n + 1))


def stirling2(m: int, n: int) -> int:
    """Stirling partition number S(m, n): m-element sets into n nonempty blocks.

    Computed by the recurrence S(m,n) = n*S(m-1,n) + S(m-1,n-1) with
    S(0,0) = 1 and zero on the rest of the boundary, rolling a single row of
    the table.
    """
    if m < 0 or n < 0:
        raise ValueError(f"m and n must be >= 0, got m={m} n={n}")
    row = [1] + [0] * n
    for i in range(1, m + 1):
        successor = [0] * (n + 1)
        for j in range(1, min(i, n) + 1):
            successor[j] = j * row[j] + row[j - 1]
        row = successor
    return row[n]


def forward_difference_at_zero(m: int, n: int) -> int:
    """n-fold forward difference of j^m, evaluated at 0.

    Builds the table row j^m for j = 0..n and collapses it n times by
    adjacent subtraction.  A classical identity makes this equal to
    boole_sum(n, m), which is exactly why it serves as an oracle here.
    """
    if m < 0 or n < 0:
        raise ValueError(f"m and n must be >= 0, got m={m} n={n}")
    values = [j**m for j in range(n + 1)]
    for _ in range(n):
        values = [values[i + 1] - values[i] for i in range(len(values) - 1)]
    return values[0]


def generalized_sum(a: Rational, b: Rational, n: int, m: int) -> Rational:
    """sum_{k=0..n} (-1)^k * C(n,k) * (a + b*k)^m, exactly.

    Mind the sign convention: the alternation is (-1)^k here, not
    (-1)^(n-k) as in boole_sum; the two differ by a global factor (-1)^n.
    """
    if n < 0 or m < 0:
        raise ValueError(f"n and m must be >= 0, got n={n} m={m}")
    a = Fraction(a)
    b = Fraction(b)
    total = Fraction(0)
    for k in range(n + 1):
        total += (-1) ** k * binomial(n, k) * rat_pow(a + b * k, m)
    return total


def expected_value(a: Rational, b: Rational, n: int, m: int) -> Rational:
    """Closed form of generalized_sum for m <= n: (-1)^n * b^n * n! at m = n, else 0.

    The value does not depend on a; the parameter is accepted so call sites
    mirror generalized_sum.  m > n has no closed form here and is rejected.
    """
    if n < 0 or m < 0:
        raise ValueError(f"n and m must be >= 0, got n={n} m={m}")
    if m > n:
        raise ValueError(f"closed form only covers m <= n, got m={m} n={n}")
    del a
    if m < n:
        return Fraction(0)
    return (-1) ** n * rat_pow(b, n) * factorial(n)


def verify_generalized_boole(a: Rational, b: Rational, n_max: int) -> VerificationReport:
    """Sweep the generalized identity over 0 <= m <= n <= n_max at fixed (a, b).

    Each case compares generalized_sum against expected_value with exact
    equality.  When b is nonzero the sweep additionally substitutes the
    signed binomial vector into the power-sum system for every n and checks
    each equation; a row that fails is appended as an extra failing case
    (with the row index in the m slot).  When b = 0 that substitution check
    is skipped, with a note, because the system is singular there; the
    identity cases themselves still run.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    a = Fraction(a)
    b = Fraction(b)
    results = []
    for n in range(n_max + 1):
        for m in range(n + 1):
            lhs = generalized_sum(a, b, n, m)
            rhs = expected_value(a, b, n, m)
            results.append(CaseResult(IdentityCase(n, m, a, b), lhs, rhs, lhs == rhs))
    notes = []
    if b == 0:
        notes.append("system-substitution check skipped: b = 0 makes the nodes coincide")
    else:
        bad_rows = 0
        for n in range(n_max + 1):
            for row, lhs, rhs in _system_row_failures(a, b, n):
                results.append(CaseResult(IdentityCase(n, row, a, b), lhs, rhs, False))
                bad_rows += 1
        if bad_rows == 0:
            notes.append(
                f"signed binomial vector satisfies every system row for n <= {n_max}"
            )
    return VerificationReport(tuple(results), tuple(notes))


def verify_stirling(m_max: int, n_max: int) -> VerificationReport:
    """Check boole_sum(n,m) = n! * S(m,n) over the full (m, n) grid.

    A case passes only if the forward-difference table produces the same
    value as well, so each grid point is a three-way agreement between
    direct summation, the Stirling recurrence, and repeated differencing.
    Cases are stamped with (a, b) = (0, 1), the node family the classical
    sum lives on.
    """
    if m_max < 0 or n_max < 0:
        raise ValueError(f"m_max and n_max must be >= 0, got m_max={m_max} n_max={n_max}")
    zero = Fraction(0)
    one = Fraction(1)
    results = []
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            direct = boole_sum(n, m)
            scaled = factorial(n) * stirling2(m, n)
            differenced = forward_difference_at_zero(m, n)
            passed = direct == scaled and direct == differenced
            results.append(
                CaseResult(IdentityCase(n, m, zero, one), Fraction(direct), Fraction(scaled), passed)
            )
    return VerificationReport(tuple(results))


def verify_cramer(a: Rational, b: Rational, n: int) -> VerificationReport:
    """Check all n+1 solution components of the power-sum system three ways.

    For each k the generic eliminator's solution (recorded as lhs), the
    signed binomial (-1)^(n-k) * C(n,k) (recorded as rhs), and the ratio of
    closed-form determinants must coincide; the m slot of each case carries
    the component index k.  Raises SingularMatrixError for b = 0, where the
    system has no unique solution.
    """
    b = Fraction(b)
    if b == 0:
        raise SingularMatrixError("b = 0 collapses the nodes; the system is singular")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    a = Fraction(a)
    solved = solve_exact(build_system(ArithmeticNodes(a, b, n)))
    signed_binomials = closed_form_solution(n)
    denominator = det_vandermonde_closed(n, b)
    results = []
    for k in range(n + 1):
        ratio = det_cramer_numerator(n, k, b) / denominator
        expected = Fraction(signed_binomials[k])
        passed = solved[k] == expected and ratio == expected
        results.append(CaseResult(IdentityCase(n, k, a, b), solved[k], expected, passed))
    return VerificationReport(tuple(results))


def _system_row_failures(
    a: Rational, b: Rational, n: int
) -> list[tuple[int, Rational, Rational]]:
    """Rows of the order-n power-sum system the signed binomial vector fails.

    Returns (row index, achieved value, required value) triples; empty when
    the vector is a genuine solution.
    """
    system = build_system(ArithmeticNodes(a, b, n))
    vector = closed_form_solution(n)
    failures = []
    for i in range(n + 1):
        achieved = sum(
            (system.matrix.at(i, j) * vector[j] for j in range(n + 1)), Fraction(0)
        )
        if achieved != system.rhs[i]:
            failures.append((i, achieved, system.rhs[i]))
    return failures
