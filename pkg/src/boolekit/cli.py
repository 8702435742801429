"""Command-line front end.

Subcommands: verify (identity sweeps), solve (power-sum system solution two
ways), det (determinant routes side by side), stirling (partition-number
table with verification column), bench (closed form vs elimination timing).

Exit codes: 0 all checks passed, 1 at least one identity or agreement
failure (or a singular system where a solution was required), 2 usage error
(argparse raises SystemExit(2) itself).  Documents go to --output when
given, stdout otherwise; every rational inside json or csv output uses the
canonical "p/q" form so it parses back with parse_rational.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import re
import statistics
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from .boole_identity import (
    CaseResult,
    boole_sum,
    closed_form_solution,
    stirling2,
    verify_cramer,
    verify_generalized_boole,
    verify_stirling,
)
from .rational_core import Rational, factorial, format_rational, parse_rational
from .vandermonde import (
    ArithmeticNodes,
    SingularMatrixError,
    build_system,
    det_bareiss,
    det_cramer_numerator,
    det_vandermonde_closed,
    det_vandermonde_general,
    solve_exact,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

_TIMING_REPS = 5
_COMPONENT_BOUND = 9

_NEGATIVE_RATIONAL = re.compile(r"-\d+(?:/\d+)?$")


@dataclass(frozen=True)
class RunConfig:
    """Resolved flag values; each command reads only the fields it documents."""

    command: str
    a: Rational = Fraction(0)
    b: Rational = Fraction(1)
    n: int = 0
    n_max: int = 0
    m_max: int = 0
    seed: int = 0
    trials: int = 0
    output_path: str | None = None
    format: str = "text"


def random_rational(rng: random.Random) -> Rational:
    """One rational with numerator and denominator uniform in [-9, 9], denominator nonzero."""
    numerator = rng.randint(-_COMPONENT_BOUND, _COMPONENT_BOUND)
    denominator = rng.randint(-_COMPONENT_BOUND, _COMPONENT_BOUND)
    while denominator == 0:
        denominator = rng.randint(-_COMPONENT_BOUND, _COMPONENT_BOUND)
    return Fraction(numerator, denominator)


def seeded_parameter_pairs(seed: int, count: int) -> list[tuple[Rational, Rational]]:
    """Deterministic (a, b) draws; b = 0 occurs whenever its numerator draw is 0."""
    rng = random.Random(seed)
    pairs = []
    for _ in range(count):
        a = random_rational(rng)
        b = random_rational(rng)
        pairs.append((a, b))
    return pairs


def _rational_arg(text: str) -> Rational:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _natural_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a value >= 0, got {value}")
    return value


def _positive_arg(text: str) -> int:
    value = _natural_arg(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a value >= 1, got {value}")
    return value


def _merge_negative_values(argv: Sequence[str]) -> list[str]:
    """Fold "--a -3/4" into "--a=-3/4" so negative rationals survive argparse.

    A bare token like "-3/4" looks like an option cluster to argparse; gluing
    it to its flag with "=" sidesteps that without touching any other token.
    """
    merged: list[str] = []
    index = 0
    while index < len(argv):
        token = argv[index]
        if (
            token in ("--a", "--b")
            and index + 1 < len(argv)
            and _NEGATIVE_RATIONAL.fullmatch(argv[index + 1])
        ):
            merged.append(f"{token}={argv[index + 1]}")
            index += 2
        else:
            merged.append(token)
            index += 1
    return merged


def _add_node_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--a", type=_rational_arg, default=Fraction(0), metavar="P/Q",
        help="node offset, a rational like 3, -2, or 9/4 (default 0)",
    )
    parser.add_argument(
        "--b", type=_rational_arg, default=Fraction(1), metavar="P/Q",
        help="node step, a rational like 1, -1/3 (default 1)",
    )


def _add_output_flags(parser: argparse.ArgumentParser, default_format: str = "text") -> None:
    parser.add_argument(
        "--format", choices=("json", "csv", "text"), default=default_format,
        help=f"document format (default {default_format})",
    )
    parser.add_argument(
        "--output", metavar="PATH", default=None,
        help="write the document to PATH instead of stdout",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boolekit",
        description="Exact verification of alternating binomial power sums "
        "via Vandermonde systems on arithmetic-progression nodes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser(
        "verify",
        help="sweep the generalized identity, with Cramer and Stirling cross-checks",
    )
    _add_node_flags(verify)
    verify.add_argument("--n-max", type=_natural_arg, default=10, metavar="N",
                        help="largest order n in the sweep (default 10)")
    verify.add_argument("--m-max", type=_natural_arg, default=12, metavar="N",
                        help="largest exponent in the Stirling cross-check grid (default 12)")
    verify.add_argument("--trials", type=_natural_arg, default=0, metavar="N",
                        help="extra random (a, b) pairs to sweep (default 0)")
    verify.add_argument("--seed", type=_natural_arg, default=0, metavar="N",
                        help="seed for the random pairs (default 0)")
    _add_output_flags(verify)

    solve = sub.add_parser("solve", help="solve the power-sum system two independent ways")
    _add_node_flags(solve)
    solve.add_argument("--n", type=_natural_arg, default=2, metavar="N",
                       help="system order; the matrix has side n+1 (default 2)")
    _add_output_flags(solve)

    det = sub.add_parser("det", help="compare determinant routes and Cramer numerators")
    _add_node_flags(det)
    det.add_argument("--n", type=_natural_arg, default=2, metavar="N",
                     help="system order (default 2)")
    _add_output_flags(det)

    stirling = sub.add_parser("stirling", help="partition-number table with verification column")
    stirling.add_argument("--m-max", type=_natural_arg, default=8, metavar="N",
                          help="largest set size m (default 8)")
    stirling.add_argument("--n-max", type=_natural_arg, default=8, metavar="N",
                          help="largest block count n (default 8)")
    _add_output_flags(stirling)

    bench = sub.add_parser("bench", help="time the closed-form determinant against elimination")
    bench.add_argument("--n-max", type=_positive_arg, default=8, metavar="N",
                       help="top of the order ladder 1..N (default 8)")
    bench.add_argument("--seed", type=_natural_arg, default=0, metavar="N",
                       help="seed for the node parameters (default 0)")
    _add_output_flags(bench, default_format="csv")

    return parser


def _config_from_namespace(namespace: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=namespace.command,
        a=getattr(namespace, "a", Fraction(0)),
        b=getattr(namespace, "b", Fraction(1)),
        n=getattr(namespace, "n", 0),
        n_max=getattr(namespace, "n_max", 0),
        m_max=getattr(namespace, "m_max", 0),
        seed=getattr(namespace, "seed", 0),
        trials=getattr(namespace, "trials", 0),
        output_path=getattr(namespace, "output", None),
        format=getattr(namespace, "format", "text"),
    )


def _frac(value: Rational) -> str:
    return format_rational(value, always_fraction=True)


def _plain(value: Rational) -> str:
    return format_rational(value)


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _csv_document(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue().rstrip("\n")


def _case_record(result: CaseResult) -> dict:
    case = result.case
    return {
        "n": case.n,
        "m": case.m,
        "a": _frac(case.a),
        "b": _frac(case.b),
        "lhs": _frac(result.lhs),
        "rhs": _frac(result.rhs),
        "pass": result.passed,
    }


def cmd_verify(config: RunConfig) -> tuple[int, str]:
    """Sweep the generalized identity for the fixed pair plus seeded trials.

    Cramer component checks (per pair with nonzero b, at order n_max) and the
    Stirling grid run as gates: when they pass they only add summary notes,
    when they fail their failing cases join the report and force exit 1.
    """
    pairs = [(config.a, config.b)] + seeded_parameter_pairs(config.seed, config.trials)
    cases: list[CaseResult] = []
    rows_checked = 0
    rows_skipped = 0
    for a, b in pairs:
        report = verify_generalized_boole(a, b, config.n_max)
        cases.extend(report.results)
        if b == 0:
            rows_skipped += 1
        else:
            rows_checked += 1
    cramer_passed = 0
    for a, b in pairs:
        if b == 0:
            continue
        component_report = verify_cramer(a, b, config.n_max)
        if component_report.ok:
            cramer_passed += 1
        else:
            cases.extend(r for r in component_report.results if not r.passed)
    stirling_report = verify_stirling(config.m_max, config.n_max)
    if not stirling_report.ok:
        cases.extend(r for r in stirling_report.results if not r.passed)
    notes = (
        f"system rows substituted for {rows_checked} pair(s), "
        f"skipped for {rows_skipped} pair(s) with b = 0",
        f"cramer component checks passed for {cramer_passed} of {rows_checked} "
        f"pair(s) at n = {config.n_max}",
        f"stirling grid m <= {config.m_max}, n <= {config.n_max}: "
        + ("ok" if stirling_report.ok else "FAILED"),
    )
    failures = sum(1 for result in cases if not result.passed)
    code = EXIT_OK if failures == 0 else EXIT_FAILURE

    if config.format == "json":
        document = json.dumps(
            {
                "command": "verify",
                "params": {
                    "a": _frac(config.a),
                    "b": _frac(config.b),
                    "n_max": config.n_max,
                    "seed": config.seed,
                },
                "cases": [_case_record(result) for result in cases],
                "summary": {"total": len(cases), "failures": failures},
            },
            indent=2,
        )
    elif config.format == "csv":
        document = _csv_document(
            ("n", "m", "a", "b", "lhs", "rhs", "pass"),
            [
                (
                    result.case.n,
                    result.case.m,
                    _frac(result.case.a),
                    _frac(result.case.b),
                    _frac(result.lhs),
                    _frac(result.rhs),
                    _flag(result.passed),
                )
                for result in cases
            ],
        )
    else:
        lines = [
            f"verify sweep: a={_plain(config.a)} b={_plain(config.b)} "
            f"n_max={config.n_max} trials={config.trials} seed={config.seed}"
        ]
        for result in cases:
            case = result.case
            lines.append(
                f"n={case.n} m={case.m} a={_plain(case.a)} b={_plain(case.b)} "
                f"lhs={_plain(result.lhs)} rhs={_plain(result.rhs)} "
                + ("ok" if result.passed else "FAIL")
            )
        lines.extend(f"note: {note}" for note in notes)
        lines.append(f"total={len(cases)} failures={failures}")
        document = "\n".join(lines)
    return code, document


def cmd_solve(config: RunConfig) -> tuple[int, str]:
    """Solve by elimination, compare against the signed binomials, flag mismatch."""
    system = build_system(ArithmeticNodes(config.a, config.b, config.n))
    params = {"a": _frac(config.a), "b": _frac(config.b), "n": config.n}
    try:
        eliminated = solve_exact(system)
    except SingularMatrixError as exc:
        message = f"singular system: {exc}"
        if config.format == "json":
            document = json.dumps({"command": "solve", "params": params, "error": message}, indent=2)
        else:
            document = message
        return EXIT_FAILURE, document
    binomial_vector = [Fraction(c) for c in closed_form_solution(config.n)]
    agree = eliminated == binomial_vector

    if config.format == "json":
        document = json.dumps(
            {
                "command": "solve",
                "params": params,
                "eliminated": [_frac(x) for x in eliminated],
                "signed_binomials": [_frac(x) for x in binomial_vector],
                "agree": agree,
            },
            indent=2,
        )
    elif config.format == "csv":
        document = _csv_document(
            ("k", "eliminated", "signed_binomial", "agree"),
            [
                (k, _frac(eliminated[k]), _frac(binomial_vector[k]), _flag(eliminated[k] == binomial_vector[k]))
                for k in range(config.n + 1)
            ],
        )
    else:
        lines = [f"power-sum system: a={_plain(config.a)} b={_plain(config.b)} n={config.n}"]
        lines.append("matrix:")
        lines.extend("  " + row for row in system.matrix.render().splitlines())
        lines.append("rhs: " + " ".join(_frac(v) for v in system.rhs))
        lines.append("eliminated:       " + " ".join(_plain(x) for x in eliminated))
        lines.append("signed binomials: " + " ".join(_plain(x) for x in binomial_vector))
        lines.append("agreement: " + ("yes" if agree else "NO"))
        document = "\n".join(lines)
    return (EXIT_OK if agree else EXIT_FAILURE), document


def cmd_det(config: RunConfig) -> tuple[int, str]:
    """Compare the three determinant routes and every Cramer numerator."""
    nodes = ArithmeticNodes(config.a, config.b, config.n)
    system = build_system(nodes)
    closed = det_vandermonde_closed(config.n, config.b)
    pairwise = det_vandermonde_general(nodes.values())
    eliminated = det_bareiss(system.matrix)
    dets_agree = closed == pairwise and closed == eliminated
    signed = closed_form_solution(config.n)
    columns = []
    all_columns_agree = True
    for k in range(config.n + 1):
        numerator = det_cramer_numerator(config.n, k, config.b)
        substituted = det_bareiss(system.matrix.with_column(k, system.rhs))
        column_agree = numerator == substituted
        if config.b != 0:
            column_agree = column_agree and numerator / closed == signed[k]
        columns.append((k, numerator, substituted, column_agree))
        all_columns_agree = all_columns_agree and column_agree
    agree = dets_agree and all_columns_agree
    params = {"a": _frac(config.a), "b": _frac(config.b), "n": config.n}

    if config.format == "json":
        document = json.dumps(
            {
                "command": "det",
                "params": params,
                "closed": _frac(closed),
                "pairwise": _frac(pairwise),
                "elimination": _frac(eliminated),
                "columns": [
                    {
                        "k": k,
                        "closed": _frac(numerator),
                        "elimination": _frac(substituted),
                        "agree": column_agree,
                    }
                    for k, numerator, substituted, column_agree in columns
                ],
                "agree": agree,
            },
            indent=2,
        )
    elif config.format == "csv":
        rows: list[tuple[object, ...]] = [
            ("closed", _frac(closed)),
            ("pairwise", _frac(pairwise)),
            ("elimination", _frac(eliminated)),
        ]
        rows.extend((f"column_{k}", _frac(numerator)) for k, numerator, _, _ in columns)
        rows.append(("agree", _flag(agree)))
        document = _csv_document(("item", "value"), rows)
    else:
        lines = [f"determinants: a={_plain(config.a)} b={_plain(config.b)} n={config.n}"]
        lines.append(f"closed form:          {_plain(closed)}")
        lines.append(f"pairwise product:     {_plain(pairwise)}")
        lines.append(f"elimination:          {_plain(eliminated)}")
        for k, numerator, substituted, column_agree in columns:
            lines.append(
                f"column k={k}: closed={_plain(numerator)} "
                f"elimination={_plain(substituted)} " + ("ok" if column_agree else "FAIL")
            )
        lines.append("agreement: " + ("yes" if agree else "NO"))
        document = "\n".join(lines)
    return (EXIT_OK if agree else EXIT_FAILURE), document


def cmd_stirling(config: RunConfig) -> tuple[int, str]:
    """Partition-number table with the n! * S(m,n) = alternating-sum column."""
    rows = []
    all_agree = True
    for m in range(config.m_max + 1):
        for n in range(config.n_max + 1):
            partitions = stirling2(m, n)
            scaled = factorial(n) * partitions
            direct = boole_sum(n, m)
            agree = scaled == direct
            all_agree = all_agree and agree
            rows.append((m, n, partitions, scaled, direct, agree))

    if config.format == "json":
        document = json.dumps(
            {
                "command": "stirling",
                "params": {"m_max": config.m_max, "n_max": config.n_max},
                "rows": [
                    {
                        "m": m,
                        "n": n,
                        "stirling2": partitions,
                        "scaled": scaled,
                        "boole_sum": direct,
                        "agree": agree,
                    }
                    for m, n, partitions, scaled, direct, agree in rows
                ],
                "agree": all_agree,
            },
            indent=2,
        )
    elif config.format == "csv":
        document = _csv_document(
            ("m", "n", "stirling2", "scaled", "boole_sum", "agree"),
            [(m, n, p, s, d, _flag(a)) for m, n, p, s, d, a in rows],
        )
    else:
        lines = [f"stirling table: m_max={config.m_max} n_max={config.n_max}"]
        lines.append("m n S(m,n) n!*S(m,n) alternating_sum ok")
        for m, n, partitions, scaled, direct, agree in rows:
            lines.append(
                f"{m} {n} {partitions} {scaled} {direct} " + ("ok" if agree else "FAIL")
            )
        lines.append("agreement: " + ("yes" if all_agree else "NO"))
        document = "\n".join(lines)
    return (EXIT_OK if all_agree else EXIT_FAILURE), document


def _median_time_ns(fn: Callable[[], object]) -> int:
    samples = []
    for _ in range(_TIMING_REPS):
        start = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - start)
    return int(statistics.median(samples))


def cmd_bench(config: RunConfig) -> tuple[int, str]:
    """Time closed-form vs elimination determinants on the ladder n = 1..n_max.

    Values are compared for exact agreement before any timing is recorded;
    the timings themselves are the only nondeterministic output fields.
    """
    rng = random.Random(config.seed)
    rows = []
    all_agree = True
    for n in range(1, config.n_max + 1):
        a = random_rational(rng)
        b = random_rational(rng)
        while b == 0:
            b = random_rational(rng)
        matrix = build_system(ArithmeticNodes(a, b, n)).matrix
        closed_value = det_vandermonde_closed(n, b)
        eliminated_value = det_bareiss(matrix)
        agree = closed_value == eliminated_value
        all_agree = all_agree and agree
        closed_ns = _median_time_ns(lambda n=n, b=b: det_vandermonde_closed(n, b))
        bareiss_ns = _median_time_ns(lambda matrix=matrix: det_bareiss(matrix))
        rows.append((n, closed_ns, bareiss_ns, agree))

    if config.format == "json":
        document = json.dumps(
            {
                "command": "bench",
                "params": {"n_max": config.n_max, "seed": config.seed},
                "rows": [
                    {"n": n, "closed_ns": c, "bareiss_ns": e, "agree": agree}
                    for n, c, e, agree in rows
                ],
                "agree": all_agree,
            },
            indent=2,
        )
    elif config.format == "text":
        lines = [f"bench: n_max={config.n_max} seed={config.seed}"]
        lines.append("n closed_ns bareiss_ns agree")
        lines.extend(f"{n} {c} {e} {_flag(agree)}" for n, c, e, agree in rows)
        document = "\n".join(lines)
    else:
        document = _csv_document(
            ("n", "closed_ns", "bareiss_ns", "agree"),
            [(n, c, e, _flag(agree)) for n, c, e, agree in rows],
        )
    return (EXIT_OK if all_agree else EXIT_FAILURE), document


_HANDLERS: dict[str, Callable[[RunConfig], tuple[int, str]]] = {
    "verify": cmd_verify,
    "solve": cmd_solve,
    "det": cmd_det,
    "stirling": cmd_stirling,
    "bench": cmd_bench,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Parse flags, run the command, write its document; returns the exit code.

    Usage errors do not return: argparse raises SystemExit(2).
    """
    raw = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    namespace = parser.parse_args(_merge_negative_values(raw))
    config = _config_from_namespace(namespace)
    code, document = _HANDLERS[config.command](config)
    if config.output_path is not None:
        Path(config.output_path).write_text(document + "\n", encoding="utf-8")
    else:
        print(document)
    return code


def run() -> None:
    raise SystemExit(main())
