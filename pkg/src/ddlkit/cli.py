"""Command line front end.

Subcommands:

    check     parse and validate a theory file
    derive    print the extension of a theory, optionally merged with cases
    test      run every scenario in a directory against a background
    estimate  forecast coding effort from a character count
    stats     summarise a coding measurement log

Exit codes are uniform: 0 success, 1 domain failure (parse error, failed
suite, invalid parameter values), 2 I/O or usage trouble.  Structured
output is JSON with sorted keys and no volatile fields, so identical
inputs produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .core import Mode, Severity, Theory, literal_key, validate_theory
from .engine import Derivation, EngineError, compute_extension, merge
from .estimator import (
    EffortParams,
    EffortReport,
    HOURS_PER_PERSON_MONTH,
    coding_stats,
    estimate_effort,
    estimate_effort_rounded,
    load_measurement_log,
)
from .harness import SuiteReport, run_suite
from .parser import (
    SCENARIO_EXTENSION,
    ParseError,
    Scenario,
    parse_scenario,
    parse_theory,
)

OK, DOMAIN_ERROR, IO_ERROR = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[Path, ...]
    output: Path | None
    format: str
    paper_rounding: bool = False


def _read(path: Path) -> str:
    return path.read_text(encoding="utf-8")


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_theory(path: Path) -> Theory:
    return parse_theory(_read(path))


def _load_scenario(path: Path) -> Scenario:
    return parse_scenario(_read(path), name=path.stem)


def _emit(document: dict) -> None:
    print(json.dumps(document, indent=2, sort_keys=True))


def _fmt(value: float) -> str:
    text = f"{value:.3f}".rstrip("0").rstrip(".")
    return text if text else "0"


# --- derive ------------------------------------------------------------


def _derivation_document(derivation: Derivation) -> dict:
    ext = derivation.extension
    doc = {
        "plus_definite": sorted(str(l) for l in ext.plus_definite),
        "minus_definite": sorted(str(l) for l in ext.minus_definite),
        "plus_defeasible": {
            m.value: sorted(str(l) for l in ext.plus_defeasible[m]) for m in Mode
        },
        "minus_defeasible": {
            m.value: sorted(str(l) for l in ext.minus_defeasible[m]) for m in Mode
        },
        "undetermined": sorted(f"{m.value} {l}" for m, l in ext.undetermined),
        "justifications": {
            f"{mode.value} {lit}": {
                "status": verdict.status.value,
                "witness": verdict.witness,
                "defeated": list(verdict.defeated),
                "reason": verdict.reason,
            }
            for (mode, lit), verdict in derivation.verdicts.items()
        },
    }
    return doc


def _derivation_text(derivation: Derivation) -> str:
    ext = derivation.extension
    lines = []
    lines.append("definite +: " + ", ".join(sorted(str(l) for l in ext.plus_definite)))
    lines.append("definite -: " + ", ".join(sorted(str(l) for l in ext.minus_definite)))
    for mode in Mode:
        plus = ", ".join(sorted(str(l) for l in ext.plus_defeasible[mode]))
        minus = ", ".join(sorted(str(l) for l in ext.minus_defeasible[mode]))
        lines.append(f"defeasible {mode.value} +: {plus}")
        lines.append(f"defeasible {mode.value} -: {minus}")
    pending = ", ".join(sorted(f"{m.value} {l}" for m, l in ext.undetermined))
    lines.append(f"undetermined: {pending}")
    return "\n".join(lines)


def cmd_check(config: RunConfig) -> int:
    path = config.inputs[0]
    try:
        text = _read(path)
    except OSError as exc:
        return _fail(str(exc), IO_ERROR)
    try:
        theory = parse_theory(text)
    except ParseError as exc:
        return _fail(f"{path}:{exc}", DOMAIN_ERROR)
    diagnostics = validate_theory(theory)
    for diagnostic in diagnostics:
        print(diagnostic)
    if any(d.severity is Severity.ERROR for d in diagnostics):
        return DOMAIN_ERROR
    print(f"ok: {len(theory.facts)} facts, {len(theory.rules)} rules, "
          f"{len(theory.superiority)} superiority pairs")
    return OK


def cmd_derive(config: RunConfig) -> int:
    try:
        theory = _load_theory(config.inputs[0])
        for scenario_path in config.inputs[1:]:
            theory = merge(theory, _load_scenario(scenario_path))
    except OSError as exc:
        return _fail(str(exc), IO_ERROR)
    except (ParseError, EngineError) as exc:
        return _fail(str(exc), DOMAIN_ERROR)
    derivation = compute_extension(theory)
    if config.format == "structured":
        _emit(_derivation_document(derivation))
    else:
        print(_derivation_text(derivation))
    return OK


# --- test --------------------------------------------------------------


def _suite_document(suite: SuiteReport) -> dict:
    return {
        "error_rate": suite.error_rate,
        "expectation_error_rate": suite.expectation_error_rate,
        "scenarios": [
            {
                "name": report.name,
                "verdict": report.verdict.value,
                "error": report.error,
                "expectations": [
                    {
                        "expectation": str(expectation),
                        "outcome": outcome.value,
                    }
                    for expectation, outcome in report.outcomes
                ],
                "summary": report.summary,
            }
            for report in suite.reports
        ],
    }


def cmd_test(config: RunConfig) -> int:
    theory_path, case_dir = config.inputs
    try:
        theory = _load_theory(theory_path)
    except OSError as exc:
        return _fail(str(exc), IO_ERROR)
    except ParseError as exc:
        return _fail(f"{theory_path}:{exc}", DOMAIN_ERROR)
    if not case_dir.is_dir():
        return _fail(f"{case_dir} is not a directory", IO_ERROR)
    case_paths = sorted(case_dir.glob(f"*{SCENARIO_EXTENSION}"))
    if not case_paths:
        return _fail(f"no {SCENARIO_EXTENSION} files in {case_dir}", IO_ERROR)
    scenarios = []
    try:
        for path in case_paths:
            scenarios.append(_load_scenario(path))
    except OSError as exc:
        return _fail(str(exc), IO_ERROR)
    except ParseError as exc:
        return _fail(f"{path}:{exc}", DOMAIN_ERROR)

    suite = run_suite(theory, scenarios)
    document = _suite_document(suite)
    rendered = json.dumps(document, indent=2, sort_keys=True)
    if config.output is not None:
        try:
            config.output.write_text(rendered + "\n", encoding="utf-8")
        except OSError as exc:
            return _fail(str(exc), IO_ERROR)
    if config.format == "structured":
        print(rendered)
    else:
        for report in suite.reports:
            print(f"{report.name}: {report.verdict.value}")
        print(f"error rate: {_fmt(suite.error_rate)}")
    return OK if suite.error_rate == 0.0 else DOMAIN_ERROR


# --- estimate / stats ----------------------------------------------------


def _effort_document(report: EffortReport) -> dict:
    return {
        "code_hours": report.code_hours,
        "retrieve_hours": report.retrieve_hours,
        "scenario_hours": report.scenario_hours,
        "test_hours": report.test_hours,
        "total_hours": report.total_hours,
        "person_months": report.person_months,
    }


def cmd_estimate(args: argparse.Namespace) -> int:
    try:
        params = EffortParams(
            chars=args.chars,
            rate_s_per_char=args.rate,
            retrieval_factor=args.retrieval_factor,
            scenario_multiplier=args.scenario_multiplier,
            test_fraction=args.test_fraction,
        )
    except ValueError as exc:
        return _fail(str(exc), DOMAIN_ERROR)
    estimate = estimate_effort_rounded if args.paper_rounding else estimate_effort
    report = estimate(params, hours_per_month=args.hours_per_month)
    if args.format == "structured":
        _emit(_effort_document(report))
    else:
        print(f"code hours:     {_fmt(report.code_hours)}")
        print(f"retrieve hours: {_fmt(report.retrieve_hours)}")
        print(f"scenario hours: {_fmt(report.scenario_hours)}")
        print(f"test hours:     {_fmt(report.test_hours)}")
        print(f"total hours:    {_fmt(report.total_hours)}")
        print(f"person months:  {_fmt(report.person_months)}")
    return OK


def cmd_stats(config: RunConfig) -> int:
    path = config.inputs[0]
    try:
        text = _read(path)
    except OSError as exc:
        return _fail(str(exc), IO_ERROR)
    try:
        log = load_measurement_log(text)
        stats = coding_stats(log)
    except ValueError as exc:
        return _fail(str(exc), DOMAIN_ERROR)
    if config.format == "structured":
        _emit(
            {
                "mean": stats.mean,
                "median": stats.median,
                "std": stats.std,
                "min": stats.min,
                "max": stats.max,
                "correlation_expertise": stats.correlation_expertise,
                "correlation_depth": stats.correlation_depth,
            }
        )
    else:
        print(f"rows:                   {len(log.rows)}")
        print(f"mean s/char:            {stats.mean:.4f}")
        print(f"median s/char:          {stats.median:.4f}")
        print(f"std s/char:             {stats.std:.4f}")
        print(f"min s/char:             {stats.min:.4f}")
        print(f"max s/char:             {stats.max:.4f}")
        for label, value in (
            ("correlation expertise", stats.correlation_expertise),
            ("correlation depth", stats.correlation_depth),
        ):
            shown = "undefined" if value is None else f"{value:.4f}"
            print(f"{label}:  {shown}")
    return OK


# --- argument parsing ----------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddlkit",
        description="Deontic defeasible logic toolkit: validate and derive "
        "rule theories, test case scenarios, forecast coding effort.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="parse and validate a theory file")
    check.add_argument("theory", type=Path, help="theory file (.ddl)")

    derive = sub.add_parser(
        "derive", help="compute and print the extension of a theory"
    )
    derive.add_argument("theory", type=Path, help="theory file (.ddl)")
    derive.add_argument(
        "scenarios",
        type=Path,
        nargs="*",
        help="case files (.case) merged into the theory before derivation",
    )
    derive.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="output rendering (default: text)",
    )

    test = sub.add_parser(
        "test", help="run every scenario in a directory against a background"
    )
    test.add_argument("theory", type=Path, help="background theory file (.ddl)")
    test.add_argument("cases", type=Path, help="directory with .case files")
    test.add_argument(
        "--report", type=Path, default=None, help="write the JSON suite report here"
    )
    test.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="stdout rendering (default: text)",
    )

    estimate = sub.add_parser("estimate", help="forecast coding effort")
    estimate.add_argument(
        "--chars", type=int, required=True, help="character count of the source text"
    )
    estimate.add_argument(
        "--rate", type=float, default=4.0, help="seconds per character (default: 4)"
    )
    estimate.add_argument(
        "--retrieval-factor",
        type=float,
        default=1.0,
        help="scenario retrieval time as a fraction of coding time (default: 1)",
    )
    estimate.add_argument(
        "--scenario-multiplier",
        type=float,
        default=3.0,
        help="scenario coding time as a multiple of coding time (default: 3)",
    )
    estimate.add_argument(
        "--test-fraction",
        type=float,
        default=0.2,
        help="testing overhead on coding plus scenario time (default: 0.2)",
    )
    estimate.add_argument(
        "--hours-per-month",
        type=float,
        default=HOURS_PER_PERSON_MONTH,
        help=f"working hours per person month (default: {HOURS_PER_PERSON_MONTH})",
    )
    estimate.add_argument(
        "--paper-rounding",
        action="store_true",
        help="round coding hours up and later phases to whole hours, stage by stage",
    )
    estimate.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="output rendering (default: text)",
    )

    stats = sub.add_parser("stats", help="summarise a coding measurement log")
    stats.add_argument(
        "measurements",
        type=Path,
        help="CSV log with header subject,text,chars,depth,expertise,seconds",
    )
    stats.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="output rendering (default: text)",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "check":
        return cmd_check(RunConfig("check", (args.theory,), None, "text"))
    if args.command == "derive":
        return cmd_derive(
            RunConfig("derive", (args.theory, *args.scenarios), None, args.format)
        )
    if args.command == "test":
        return cmd_test(
            RunConfig("test", (args.theory, args.cases), args.report, args.format)
        )
    if args.command == "estimate":
        return cmd_estimate(args)
    if args.command == "stats":
        return cmd_stats(RunConfig("stats", (args.measurements,), None, args.format))
    return IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
