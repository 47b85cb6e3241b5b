"""Run case scenarios against a normative background and score them.

A scenario passes when every expected conclusion is found, with the
exact sign, tag and mode, in the derived extension.  Anything else,
including conclusions the derivation left undetermined, sends the
scenario to review: a mismatch between the coder's judgement and the
reasoner is a problem to look at, never a silent pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import Mode, Tag, TaggedConclusion, Theory
from .engine import Derivation, EngineError, derive
from .parser import Scenario


class Outcome(Enum):
    MET = "met"
    UNMET = "unmet"
    UNDETERMINED = "undetermined"


class ScenarioVerdict(Enum):
    PASS = "pass"
    REVIEW = "review"


@dataclass(frozen=True)
class ScenarioReport:
    name: str
    outcomes: tuple[tuple[TaggedConclusion, Outcome], ...]
    verdict: ScenarioVerdict
    summary: dict[str, object]
    error: str | None = None


@dataclass(frozen=True)
class SuiteReport:
    reports: tuple[ScenarioReport, ...]
    error_rate: float
    expectation_error_rate: float
    length_ratio: float | None = None


def _summarize(derivation: Derivation) -> dict[str, object]:
    ext = derivation.extension
    return {
        "plus_definite": len(ext.plus_definite),
        "minus_definite": len(ext.minus_definite),
        "plus_defeasible": {m.value: len(ext.plus_defeasible[m]) for m in Mode},
        "minus_defeasible": {m.value: len(ext.minus_defeasible[m]) for m in Mode},
        "undetermined": len(ext.undetermined),
    }


def _judge(derivation: Derivation, expectation: TaggedConclusion) -> Outcome:
    ext = derivation.extension
    if ext.contains(expectation):
        return Outcome.MET
    lit = expectation.literal
    if expectation.tag is Tag.DEFINITE:
        settled = lit in ext.plus_definite or lit in ext.minus_definite
    else:
        settled = ext.status_known(expectation.mode, lit)
    return Outcome.UNMET if settled else Outcome.UNDETERMINED


def run_scenario(background: Theory, scenario: Scenario) -> ScenarioReport:
    """Derive background + case and compare with the expectations."""
    try:
        derivation = derive(background, scenario)
    except EngineError as exc:
        return ScenarioReport(
            name=scenario.name,
            outcomes=tuple((e, Outcome.UNDETERMINED) for e in scenario.expectations),
            verdict=ScenarioVerdict.REVIEW,
            summary={},
            error=str(exc),
        )
    outcomes = tuple(
        (expectation, _judge(derivation, expectation))
        for expectation in scenario.expectations
    )
    ok = all(outcome is Outcome.MET for _, outcome in outcomes)
    return ScenarioReport(
        name=scenario.name,
        outcomes=outcomes,
        verdict=ScenarioVerdict.PASS if ok else ScenarioVerdict.REVIEW,
        summary=_summarize(derivation),
    )


def run_suite(background: Theory, scenarios: list[Scenario]) -> SuiteReport:
    """Run every scenario independently and aggregate the error rates.

    Results are sorted by scenario name, so the report does not depend
    on the order the scenarios were handed in.
    """
    if not scenarios:
        raise ValueError("a suite needs at least one scenario")
    reports = tuple(
        sorted(
            (run_scenario(background, sc) for sc in scenarios),
            key=lambda report: report.name,
        )
    )
    reviews = sum(1 for r in reports if r.verdict is ScenarioVerdict.REVIEW)
    expectations = sum(len(r.outcomes) for r in reports)
    misses = sum(
        1 for r in reports for _, outcome in r.outcomes if outcome is not Outcome.MET
    )
    return SuiteReport(
        reports=reports,
        error_rate=reviews / len(reports),
        expectation_error_rate=misses / expectations if expectations else 0.0,
    )


def length_ratio(source_chars: int, coded_chars: int) -> float:
    """Relative length overhead of the coded text, e.g. 0.19 for +19%."""
    if source_chars <= 0:
        raise ValueError("source length must be positive")
    return coded_chars / source_chars - 1.0
