"""Fixpoint reasoner for defeasible deontic theories.

Conclusions are tagged literals: definite (strict closure, constitutive
only) and defeasible, the latter per mode C / O / P.  The derivation is
a least fixpoint: starting from nothing established, positive and
negative proof conditions are applied until nothing changes.  Every
condition only consults conclusions that are already established, so
the operator is monotone and the result is independent of evaluation
order.  Whatever is still unsettled at the fixpoint (typically literals
whose only support runs through a cycle) is reported as undetermined
instead of being forced to either side.

Proof conditions, in outline:

definite (mode C only)
    ``+d`` is the closure of the facts under strict rules; ``-d`` is the
    constructive complement: a literal is strictly refuted once it is
    not a fact and every strict rule for it is strictly blocked.

defeasible, mode C
    ``+`` holds for definitely proved literals, or when the complement
    is strictly refuted, some applicable strict or defeasible rule
    supports the literal, and every opposing rule is discarded or
    beaten (via the superiority relation) by some applicable supporting
    rule.  Team defeat: different supporters may beat different
    opponents.  Defeaters never act as the supporting witness but may
    both oppose and beat.  ``-`` is the strong-negation dual.

defeasible, mode O
    As for C but without the definite clauses; the witness must be a
    defeasible obligation rule, applicable *at the chain index* of the
    literal: every earlier chain element must be an obligation in force
    (``+ O c``) that is violated (``+ C ~c``).  Opposing rules are the
    obligation rules for the complement together with the permission
    rules for the complement; only obligation rules can beat an
    opponent (a permission cannot reinstate an obligation).

defeasible, mode P
    Mirror image of O for explicitly stated permissions: the witness is
    a defeasible permission rule, the opponents are the obligation
    rules for the complement, and both permission and obligation rules
    for the literal may beat an opponent.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable

from .core import (
    Diagnostic,
    Extension,
    Literal,
    Modality,
    Mode,
    Rule,
    RuleKind,
    Sign,
    Tag,
    TaggedConclusion,
    Theory,
    complement,
    has_errors,
    literal_key,
    validate_theory,
)
from .parser import Scenario


class EngineError(Exception):
    """Raised when a theory is rejected before derivation."""

    def __init__(self, message: str, diagnostics: Iterable[Diagnostic] = ()):
        super().__init__(message)
        self.diagnostics = tuple(diagnostics)


class ProofState:
    """The set of conclusions established so far (the proof prefix).

    Rejects incoherent insertions: a conclusion and its signed opposite
    can never both be established.
    """

    def __init__(self, conclusions: Iterable[TaggedConclusion] = ()):
        self._sign: dict[tuple[Tag, Mode, Literal], Sign] = {}
        for conclusion in conclusions:
            self.add(conclusion)

    def add(self, conclusion: TaggedConclusion) -> None:
        key = (conclusion.tag, conclusion.mode, conclusion.literal)
        existing = self._sign.get(key)
        if existing is not None and existing is not conclusion.sign:
            raise ValueError(f"incoherent proof state: +/- {conclusion}")
        self._sign[key] = conclusion.sign

    def sign_of(self, tag: Tag, mode: Mode, literal: Literal) -> Sign | None:
        return self._sign.get((tag, mode, literal))

    def has(self, sign: Sign, tag: Tag, mode: Mode, literal: Literal) -> bool:
        return self._sign.get((tag, mode, literal)) is sign

    @property
    def established(self) -> frozenset[TaggedConclusion]:
        return frozenset(
            TaggedConclusion(sign, tag, mode, literal)
            for (tag, mode, literal), sign in self._sign.items()
        )


def _check_index(rule: Rule, index: int) -> None:
    if not 1 <= index <= len(rule.head):
        raise IndexError(f"chain index {index} out of range for rule {rule.label!r}")
    if index > 1 and rule.mode is not Mode.O:
        raise IndexError(f"rule {rule.label!r} is not an obligation rule")


_BODY_MODE = {Modality.OBLIGATION: Mode.O, Modality.PERMISSION: Mode.P}


def applicable(theory: Theory, state: ProofState, rule: Rule, index: int = 1) -> bool:
    """Is the rule applicable (at the given chain index) in this state?

    Every body literal must be established positively: plain literals
    constitutively, modalised ones in their modality, negated-modality
    ones refuted in their modality.  For obligation rules beyond the
    first chain position, every earlier element must be an obligation in
    force whose content is violated.
    """
    _check_index(rule, index)
    for entry in rule.body:
        if entry.modality is Modality.NONE:
            ok = state.has(Sign.PLUS, Tag.DEFEASIBLE, Mode.C, entry.literal)
        else:
            wanted = Sign.MINUS if entry.modality_negated else Sign.PLUS
            ok = state.has(
                wanted, Tag.DEFEASIBLE, _BODY_MODE[entry.modality], entry.literal
            )
        if not ok:
            return False
    for earlier in rule.head.elements[: index - 1]:
        if not state.has(Sign.PLUS, Tag.DEFEASIBLE, Mode.O, earlier):
            return False
        if not state.has(Sign.PLUS, Tag.DEFEASIBLE, Mode.C, complement(earlier)):
            return False
    return True


def discarded(theory: Theory, state: ProofState, rule: Rule, index: int = 1) -> bool:
    """Is the rule discarded (at the given chain index) in this state?

    The strong-negation mirror of :func:`applicable`: some body literal
    is refuted, or (for obligation rules) some earlier chain element is
    not an obligation in force or is not violated.  On a partially
    derived state a rule may be neither applicable nor discarded, but it
    can never be both.
    """
    _check_index(rule, index)
    for entry in rule.body:
        if entry.modality is Modality.NONE:
            hit = state.has(Sign.MINUS, Tag.DEFEASIBLE, Mode.C, entry.literal)
        else:
            wanted = Sign.PLUS if entry.modality_negated else Sign.MINUS
            hit = state.has(
                wanted, Tag.DEFEASIBLE, _BODY_MODE[entry.modality], entry.literal
            )
        if hit:
            return True
    for earlier in rule.head.elements[: index - 1]:
        if state.has(Sign.MINUS, Tag.DEFEASIBLE, Mode.O, earlier):
            return True
        if state.has(Sign.MINUS, Tag.DEFEASIBLE, Mode.C, complement(earlier)):
            return True
    return False


class VerdictStatus(Enum):
    PROVED_PLUS = "proved_plus"
    PROVED_MINUS = "proved_minus"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class Verdict:
    """Why a (mode, literal) ended up with its status.

    Positive verdicts carry the witnessing rule label (``None`` when the
    literal is a fact or definitely proved) and the labels of opposing
    rules that had to be beaten through the superiority relation.
    Negative verdicts carry the blocking condition as text.
    """

    status: VerdictStatus
    witness: str | None = None
    defeated: tuple[str, ...] = ()
    reason: str | None = None


@dataclass(frozen=True)
class Derivation:
    """Extension of a theory plus a verdict for every mentioned literal."""

    extension: Extension
    verdicts: dict[tuple[Mode, Literal], Verdict] = field(default_factory=dict)


def _mentioned_literals(theory: Theory) -> list[Literal]:
    seen: set[Literal] = set(theory.facts)
    for rule in theory.rules:
        seen.update(entry.literal for entry in rule.body)
        seen.update(rule.head.elements)
    return sorted(seen, key=literal_key)


def _definite_closure(
    theory: Theory, universe: list[Literal]
) -> dict[Literal, Sign | None]:
    """Strict closure of the facts and its constructive complement."""
    strict = [r for r in theory.rules if r.kind is RuleKind.STRICT]
    delta: dict[Literal, Sign | None] = {lit: None for lit in universe}

    proved: set[Literal] = set(theory.facts)
    changed = True
    while changed:
        changed = False
        for rule in strict:
            head = rule.head.elements[0]
            if head in proved:
                continue
            if any(e.modality is not Modality.NONE for e in rule.body):
                continue
            if all(e.literal in proved for e in rule.body):
                proved.add(head)
                changed = True
    for lit in proved:
        if lit in delta:
            delta[lit] = Sign.PLUS

    by_head: dict[Literal, list[Rule]] = {}
    for rule in strict:
        by_head.setdefault(rule.head.elements[0], []).append(rule)

    def blocked(rule: Rule) -> bool:
        for entry in rule.body:
            if entry.modality is not Modality.NONE:
                return True  # modal bodies are never definitely established
            if delta.get(entry.literal) is Sign.MINUS:
                return True
        return False

    changed = True
    while changed:
        changed = False
        for lit in universe:
            if delta[lit] is not None or lit in theory.facts:
                continue
            if all(blocked(rule) for rule in by_head.get(lit, ())):
                delta[lit] = Sign.MINUS
                changed = True
    return delta


def compute_extension(theory: Theory) -> Derivation:
    """Derive the full extension of a validated theory.

    Raises :class:`EngineError` when validation reports errors.  The
    result is deterministic: literals are processed in sorted order and
    rules in declaration order, so justification witnesses are stable.
    """
    diagnostics = validate_theory(theory)
    if has_errors(diagnostics):
        raise EngineError(
            "theory failed validation: "
            + "; ".join(str(d) for d in diagnostics if d.severity.value == "error"),
            diagnostics,
        )

    mentioned = _mentioned_literals(theory)
    universe = sorted(
        set(mentioned) | {complement(lit) for lit in mentioned}, key=literal_key
    )
    delta = _definite_closure(theory, universe)

    # rule indexes per mode; (rule, chain index) pairs in declaration order
    heads: dict[Mode, dict[Literal, list[tuple[Rule, int]]]] = {
        mode: {} for mode in Mode
    }
    for rule in theory.rules:
        for idx, element in enumerate(rule.head, start=1):
            heads[rule.mode].setdefault(element, []).append((rule, idx))

    def of(mode: Mode, lit: Literal) -> list[tuple[Rule, int]]:
        return heads[mode].get(lit, [])

    def witnesses(mode: Mode, lit: Literal) -> list[tuple[Rule, int]]:
        if mode is Mode.C:
            allowed = (RuleKind.STRICT, RuleKind.DEFEASIBLE)
        else:
            allowed = (RuleKind.DEFEASIBLE,)
        return [(r, i) for r, i in of(mode, lit) if r.kind in allowed]

    def opponents(mode: Mode, lit: Literal) -> list[tuple[Rule, int]]:
        comp = complement(lit)
        if mode is Mode.C:
            return of(Mode.C, comp)
        if mode is Mode.O:
            return of(Mode.O, comp) + of(Mode.P, comp)
        return of(Mode.O, comp)

    def defenders(mode: Mode, lit: Literal) -> list[tuple[Rule, int]]:
        if mode is Mode.C:
            return of(Mode.C, lit)
        if mode is Mode.O:
            return of(Mode.O, lit)
        return of(Mode.P, lit) + of(Mode.O, lit)

    state = ProofState()
    for lit in universe:
        if delta[lit] is not None:
            state.add(TaggedConclusion(delta[lit], Tag.DEFINITE, Mode.C, lit))

    verdicts: dict[tuple[Mode, Literal], Verdict] = {}

    def settle(mode: Mode, lit: Literal, sign: Sign, verdict: Verdict) -> None:
        state.add(TaggedConclusion(sign, Tag.DEFEASIBLE, mode, lit))
        verdicts[(mode, lit)] = verdict

    def usable(rule: Rule, idx: int) -> bool | None:
        """True = applicable, False = discarded, None = still open."""
        app = applicable(theory, state, rule, idx)
        dis = discarded(theory, state, rule, idx)
        if app and dis:
            raise EngineError(
                f"rule {rule.label!r} both applicable and discarded at {idx}"
            )
        if app:
            return True
        if dis:
            return False
        return None

    def try_plus(mode: Mode, lit: Literal) -> Verdict | None:
        if mode is Mode.C:
            if delta[lit] is Sign.PLUS:
                reason = "fact" if lit in theory.facts else "definitely proved"
                return Verdict(VerdictStatus.PROVED_PLUS, reason=reason)
            if delta[complement(lit)] is not Sign.MINUS:
                return None
        witness = None
        for rule, idx in witnesses(mode, lit):
            if usable(rule, idx) is True:
                witness = rule
                break
        if witness is None:
            return None
        beaten: list[str] = []
        for opp, j in opponents(mode, lit):
            if usable(opp, j) is False:
                continue
            for champ, k in defenders(mode, lit):
                if theory.beats(champ.label, opp.label) and usable(champ, k) is True:
                    beaten.append(opp.label)
                    break
            else:
                return None
        return Verdict(
            VerdictStatus.PROVED_PLUS, witness=witness.label, defeated=tuple(beaten)
        )

    def try_minus(mode: Mode, lit: Literal) -> Verdict | None:
        if mode is Mode.C:
            if delta[lit] is not Sign.MINUS:
                return None
            if delta[complement(lit)] is Sign.PLUS:
                return Verdict(
                    VerdictStatus.PROVED_MINUS, reason="complement definitely proved"
                )
        # an applicable opponent that no defender beats refutes the literal
        for opp, j in opponents(mode, lit):
            if usable(opp, j) is not True:
                continue
            unbeaten = True
            for champ, k in defenders(mode, lit):
                if not theory.beats(champ.label, opp.label):
                    continue
                status = usable(champ, k)
                if status is None or status is True:
                    unbeaten = False  # still might beat it; not settled
                    break
            if unbeaten:
                return Verdict(
                    VerdictStatus.PROVED_MINUS,
                    reason=f"undefeated opposing rule {opp.label}",
                )
        # or every potential witness is discarded
        pool = witnesses(mode, lit)
        if all(usable(rule, idx) is False for rule, idx in pool):
            reason = (
                "no supporting rule" if not pool else "all supporting rules discarded"
            )
            return Verdict(VerdictStatus.PROVED_MINUS, reason=reason)
        return None

    open_pairs = [(mode, lit) for mode in Mode for lit in universe]
    changed = True
    while changed:
        changed = False
        still_open: list[tuple[Mode, Literal]] = []
        for mode, lit in open_pairs:
            plus = try_plus(mode, lit)
            if plus is not None:
                settle(mode, lit, Sign.PLUS, plus)
                changed = True
                continue
            minus = try_minus(mode, lit)
            if minus is not None:
                settle(mode, lit, Sign.MINUS, minus)
                changed = True
                continue
            still_open.append((mode, lit))
        open_pairs = still_open

    undetermined = set(open_pairs)
    mentioned_set = set(mentioned)
    extension = Extension(
        plus_definite=frozenset(l for l in mentioned if delta[l] is Sign.PLUS),
        minus_definite=frozenset(l for l in mentioned if delta[l] is Sign.MINUS),
        plus_defeasible={
            mode: frozenset(
                l
                for l in mentioned
                if state.has(Sign.PLUS, Tag.DEFEASIBLE, mode, l)
            )
            for mode in Mode
        },
        minus_defeasible={
            mode: frozenset(
                l
                for l in mentioned
                if state.has(Sign.MINUS, Tag.DEFEASIBLE, mode, l)
            )
            for mode in Mode
        },
        undetermined=frozenset(
            (mode, l) for mode, l in undetermined if l in mentioned_set
        ),
    )
    _check_coherence(extension)

    reported = {
        (mode, lit): verdicts.get(
            (mode, lit), Verdict(VerdictStatus.UNDETERMINED, reason="unsettled")
        )
        for mode in Mode
        for lit in mentioned
    }
    return Derivation(extension, reported)


def _check_coherence(extension: Extension) -> None:
    clashes = extension.plus_definite & extension.minus_definite
    for mode in Mode:
        clashes |= extension.plus_defeasible[mode] & extension.minus_defeasible[mode]
    if clashes:
        raise EngineError(
            "incoherent extension: " + ", ".join(str(l) for l in sorted(clashes, key=literal_key))
        )


def merge(background: Theory, scenario: Scenario) -> Theory:
    """Union the case into the background; rules keep declaration order.

    Colliding scenario rule labels get an ``sc_`` prefix.  The merged
    theory is validated; errors are raised as :class:`EngineError`.
    """
    taken = {rule.label for rule in background.rules}
    renamed: list[Rule] = []
    for rule in scenario.rules:
        if rule.label in taken:
            rule = replace(rule, label=f"sc_{rule.label}")
        renamed.append(rule)
    merged = Theory(
        facts=background.facts | scenario.facts,
        rules=background.rules + tuple(renamed),
        superiority=background.superiority,
    )
    diagnostics = validate_theory(merged)
    if has_errors(diagnostics):
        raise EngineError(
            "background and scenario do not merge cleanly: "
            + "; ".join(str(d) for d in diagnostics if d.severity.value == "error"),
            diagnostics,
        )
    return merged


def derive(background: Theory, scenario: Scenario) -> Derivation:
    """Extension of the background theory combined with a case."""
    return compute_extension(merge(background, scenario))
