"""Immutable data model for defeasible deontic theories.

A theory is the triple (facts, rules, superiority).  Rules carry a kind
(strict / defeasible / defeater), a mode (constitutive C, obligation O,
permission P), a body of possibly-modalised literals and a head chain.
Head chains longer than one element are reparation chains and are only
meaningful on defeasible obligation rules.

All values here are frozen dataclasses: safe to share between threads,
usable as dict keys and set members.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

_ATOM_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Mode(Enum):
    """Conclusion mode: constitutive, obligation or permission."""

    C = "C"
    O = "O"
    P = "P"


class RuleKind(Enum):
    STRICT = "strict"
    DEFEASIBLE = "defeasible"
    DEFEATER = "defeater"


class Modality(Enum):
    """Modal wrapper of a body literal (none for plain literals)."""

    NONE = "none"
    OBLIGATION = "O"
    PERMISSION = "P"


class Sign(Enum):
    PLUS = "+"
    MINUS = "-"


class Tag(Enum):
    DEFINITE = "definite"
    DEFEASIBLE = "defeasible"


@dataclass(frozen=True)
class Payload:
    """Numeric assignment payload, e.g. the ``21years`` in ``x := 21years``."""

    value: float
    unit: str = ""

    def __str__(self) -> str:
        if self.value == int(self.value):
            num = str(int(self.value))
        else:
            num = repr(self.value)
        return f"{num}{self.unit}"


@dataclass(frozen=True)
class Literal:
    """An atom with polarity and an optional assignment payload.

    Atoms are identifiers (letter or underscore first, then letters,
    digits, underscores).  Payload-bearing literals model assignments
    like ``imprisonment := 21years``; they are opaque to the reasoner
    (no arithmetic) and must not be negated in any valid theory, which
    is enforced by the parser and by theory validation rather than
    here, so that :func:`complement` stays total.
    """

    atom: str
    negated: bool = False
    payload: Payload | None = None

    def __post_init__(self) -> None:
        if not _ATOM_RE.match(self.atom):
            raise ValueError(f"invalid atom {self.atom!r}")

    def __str__(self) -> str:
        text = ("~" if self.negated else "") + self.atom
        if self.payload is not None:
            text += f" := {self.payload}"
        return text


def complement(lit: Literal) -> Literal:
    """Flip the polarity of a literal; atom and payload are unchanged.

    Involutive: ``complement(complement(l)) == l``.
    """
    return Literal(lit.atom, not lit.negated, lit.payload)


def literal_key(lit: Literal) -> tuple:
    """Deterministic sort key (payloads are not orderable by default)."""
    p = lit.payload
    return (lit.atom, lit.negated, p is not None, p.value if p else 0.0, p.unit if p else "")


@dataclass(frozen=True)
class ModalLiteral:
    """A body element: a literal, optionally under O/P or its negation."""

    literal: Literal
    modality: Modality = Modality.NONE
    modality_negated: bool = False

    def __post_init__(self) -> None:
        if self.modality_negated and self.modality is Modality.NONE:
            raise ValueError("negated modality requires a modality")

    def __str__(self) -> str:
        if self.modality is Modality.NONE:
            return str(self.literal)
        bang = "!" if self.modality_negated else ""
        return f"{bang}{self.modality.value}({self.literal})"


def plain(atom: str, negated: bool = False) -> ModalLiteral:
    """Convenience constructor for an unmodalised body literal."""
    return ModalLiteral(Literal(atom, negated))


@dataclass(frozen=True)
class Chain:
    """Ordered head of a rule; more than one element only on obligation rules.

    Elements never repeat: each position of a reparation chain is a
    distinct obligation that comes in force when the previous one is
    violated.
    """

    elements: tuple[Literal, ...]

    def __post_init__(self) -> None:
        if not self.elements:
            raise ValueError("chain must have at least one element")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("chain elements must not repeat")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.elements)

    def __str__(self) -> str:
        return " @ ".join(str(e) for e in self.elements)


_ARROWS = {
    (RuleKind.STRICT, Mode.C): "->",
    (RuleKind.DEFEASIBLE, Mode.C): "=>",
    (RuleKind.DEFEASIBLE, Mode.O): "=>O",
    (RuleKind.DEFEASIBLE, Mode.P): "=>P",
    (RuleKind.DEFEATER, Mode.C): "~>",
    (RuleKind.DEFEATER, Mode.O): "~>O",
    (RuleKind.DEFEATER, Mode.P): "~>P",
}


@dataclass(frozen=True)
class Rule:
    """A labelled rule with kind, mode, body and head chain."""

    label: str
    kind: RuleKind
    mode: Mode
    body: tuple[ModalLiteral, ...]
    head: Chain

    def __post_init__(self) -> None:
        if not _ATOM_RE.match(self.label):
            raise ValueError(f"invalid rule label {self.label!r}")

    @property
    def arrow(self) -> str:
        return _ARROWS[(self.kind, self.mode)]

    def __str__(self) -> str:
        parts = [f"{self.label}:"]
        if self.body:
            parts.append(", ".join(str(b) for b in self.body))
        parts.append(self.arrow)
        parts.append(str(self.head))
        return " ".join(parts)


@dataclass(frozen=True)
class Theory:
    """A defeasible theory: facts, rules in declaration order, superiority.

    Superiority pairs are (stronger, weaker) rule labels.  The relation
    is used exactly as written; no transitive closure is taken.
    """

    facts: frozenset[Literal] = frozenset()
    rules: tuple[Rule, ...] = ()
    superiority: frozenset[tuple[str, str]] = frozenset()

    def rule_by_label(self, label: str) -> Rule | None:
        for rule in self.rules:
            if rule.label == label:
                return rule
        return None

    def beats(self, stronger: str, weaker: str) -> bool:
        return (stronger, weaker) in self.superiority


@dataclass(frozen=True)
class TaggedConclusion:
    """A signed, tagged, moded literal: one entry of a proof sequence."""

    sign: Sign
    tag: Tag
    mode: Mode
    literal: Literal

    def __post_init__(self) -> None:
        if self.tag is Tag.DEFINITE and self.mode is not Mode.C:
            raise ValueError("definite conclusions exist only in mode C")

    def __str__(self) -> str:
        return f"{self.sign.value}{self.tag.value} {self.mode.value} {self.literal}"


@dataclass(frozen=True)
class Extension:
    """All settled conclusions of a theory, plus the unsettled residue.

    Definite sets are constitutive only.  ``undetermined`` holds the
    (mode, literal) pairs whose defeasible status could not be settled
    constructively (for instance literals supported only through
    cycles); they are reported rather than silently dropped.
    """

    plus_definite: frozenset[Literal] = frozenset()
    minus_definite: frozenset[Literal] = frozenset()
    plus_defeasible: dict[Mode, frozenset[Literal]] = field(default_factory=dict)
    minus_defeasible: dict[Mode, frozenset[Literal]] = field(default_factory=dict)
    undetermined: frozenset[tuple[Mode, Literal]] = frozenset()

    def __post_init__(self) -> None:
        for mode in Mode:
            self.plus_defeasible.setdefault(mode, frozenset())
            self.minus_defeasible.setdefault(mode, frozenset())

    def contains(self, conclusion: TaggedConclusion) -> bool:
        """Exact membership of a tagged conclusion."""
        lit = conclusion.literal
        if conclusion.tag is Tag.DEFINITE:
            pool = (
                self.plus_definite
                if conclusion.sign is Sign.PLUS
                else self.minus_definite
            )
            return lit in pool
        table = (
            self.plus_defeasible
            if conclusion.sign is Sign.PLUS
            else self.minus_defeasible
        )
        return lit in table[conclusion.mode]

    def status_known(self, mode: Mode, lit: Literal) -> bool:
        """True when the defeasible status of (mode, literal) is settled."""
        return (
            lit in self.plus_defeasible[mode]
            or lit in self.minus_defeasible[mode]
        )


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity.value}: [{self.code}] {self.message}"


def rules_for(theory: Theory, lit: Literal, mode: Mode) -> list[tuple[Rule, int]]:
    """All rules of ``mode`` whose head chain contains ``lit``.

    Returns (rule, index) pairs with 1-based chain indices, in theory
    declaration order.  Chain elements never repeat, so each rule
    contributes at most one pair.
    """
    found: list[tuple[Rule, int]] = []
    for rule in theory.rules:
        if rule.mode is not mode:
            continue
        for idx, element in enumerate(rule.head, start=1):
            if element == lit:
                found.append((rule, idx))
    return found


def validate_theory(theory: Theory) -> list[Diagnostic]:
    """Check theory-level invariants; an empty list means all of them hold.

    Errors mark structurally broken theories the engine refuses to run.
    Contradictory facts and superiority cycles are legal but suspicious,
    so they come back as warnings.
    """
    out: list[Diagnostic] = []
    err = lambda code, msg: out.append(Diagnostic(Severity.ERROR, code, msg))
    warn = lambda code, msg: out.append(Diagnostic(Severity.WARNING, code, msg))

    seen: set[str] = set()
    for rule in theory.rules:
        if rule.label in seen:
            err("duplicate-label", f"rule label {rule.label!r} declared twice")
        seen.add(rule.label)

    for rule in theory.rules:
        chained = len(rule.head) > 1
        if chained and not (
            rule.mode is Mode.O and rule.kind is RuleKind.DEFEASIBLE
        ):
            err(
                "chain-misuse",
                f"rule {rule.label!r} has a reparation chain but is not a "
                "defeasible obligation rule",
            )
        if rule.kind is RuleKind.STRICT and rule.mode is not Mode.C:
            err("strict-mode", f"strict rule {rule.label!r} must have mode C")
        for element in rule.head:
            if element.payload is not None and element.negated:
                err(
                    "negated-assignment",
                    f"rule {rule.label!r} heads a negated assignment literal",
                )
        for body in rule.body:
            if body.literal.payload is not None and body.literal.negated:
                err(
                    "negated-assignment",
                    f"rule {rule.label!r} uses a negated assignment literal",
                )

    for fact in theory.facts:
        if fact.payload is not None and fact.negated:
            err("negated-assignment", f"fact {fact} is a negated assignment")

    for stronger, weaker in sorted(theory.superiority):
        if stronger == weaker:
            err("self-superiority", f"rule {stronger!r} declared superior to itself")
        for label in (stronger, weaker):
            if label not in seen:
                err(
                    "dangling-superiority",
                    f"superiority references unknown rule {label!r}",
                )

    for fact in sorted(theory.facts, key=literal_key):
        comp = complement(fact)
        if comp in theory.facts and not fact.negated:
            warn("contradictory-facts", f"facts contain both {fact} and {comp}")

    cycle = _superiority_cycle(theory.superiority)
    if cycle:
        warn("superiority-cycle", "superiority relation has a cycle: " + " > ".join(cycle))

    return out


def _superiority_cycle(pairs: frozenset[tuple[str, str]]) -> list[str] | None:
    """Find one cycle in the stronger-than digraph, if any."""
    edges: dict[str, list[str]] = {}
    for stronger, weaker in sorted(pairs):
        edges.setdefault(stronger, []).append(weaker)
    state: dict[str, int] = {}  # 1 = on stack, 2 = done
    stack: list[str] = []

    def visit(node: str) -> list[str] | None:
        state[node] = 1
        stack.append(node)
        for nxt in edges.get(node, ()):
            if state.get(nxt) == 1:
                return stack[stack.index(nxt):] + [nxt]
            if state.get(nxt) is None:
                found = visit(nxt)
                if found:
                    return found
        stack.pop()
        state[node] = 2
        return None

    for start in sorted(edges):
        if state.get(start) is None:
            found = visit(start)
            if found:
                return found
    return None


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)
