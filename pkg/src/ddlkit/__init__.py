"""Deontic defeasible logic toolkit.

Parse rule theories and case scenarios, derive their extensions under
defeasible deontic proof conditions (with team defeat and reparation
chains), score scenario suites against expected conclusions, and
forecast the effort of coding normative text.
"""

from .core import (
    Chain,
    Diagnostic,
    Extension,
    Literal,
    Modality,
    ModalLiteral,
    Mode,
    Payload,
    Rule,
    RuleKind,
    Severity,
    Sign,
    Tag,
    TaggedConclusion,
    Theory,
    complement,
    rules_for,
    validate_theory,
)
from .engine import (
    Derivation,
    EngineError,
    ProofState,
    Verdict,
    VerdictStatus,
    applicable,
    compute_extension,
    derive,
    discarded,
    merge,
)
from .estimator import (
    CodingStats,
    EffortParams,
    EffortReport,
    MeasurementLog,
    MeasurementRow,
    coding_stats,
    estimate_effort,
    estimate_effort_rounded,
    expertise_class_means,
    load_measurement_log,
)
from .harness import (
    Outcome,
    ScenarioReport,
    ScenarioVerdict,
    SuiteReport,
    length_ratio,
    run_scenario,
    run_suite,
)
from .parser import (
    ParseError,
    Scenario,
    SourceSpan,
    parse_scenario,
    parse_theory,
    print_scenario,
    print_theory,
)

__version__ = "0.1.0"

__all__ = [
    "Chain",
    "CodingStats",
    "Derivation",
    "Diagnostic",
    "EffortParams",
    "EffortReport",
    "EngineError",
    "Extension",
    "Literal",
    "MeasurementLog",
    "MeasurementRow",
    "Modality",
    "ModalLiteral",
    "Mode",
    "Outcome",
    "ParseError",
    "Payload",
    "ProofState",
    "Rule",
    "RuleKind",
    "Scenario",
    "ScenarioReport",
    "ScenarioVerdict",
    "Severity",
    "Sign",
    "SourceSpan",
    "SuiteReport",
    "Tag",
    "TaggedConclusion",
    "Theory",
    "Verdict",
    "VerdictStatus",
    "applicable",
    "coding_stats",
    "complement",
    "compute_extension",
    "derive",
    "discarded",
    "estimate_effort",
    "estimate_effort_rounded",
    "expertise_class_means",
    "length_ratio",
    "load_measurement_log",
    "merge",
    "parse_scenario",
    "parse_theory",
    "print_scenario",
    "print_theory",
    "rules_for",
    "run_scenario",
    "run_suite",
    "validate_theory",
]
