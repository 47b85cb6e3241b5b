"""Brute-force reference reasoner for small, chain-free theories.

A deliberately naive second implementation: conclusions are bare tuples
accumulated in a set, every proof condition is re-checked from scratch
against the whole rule list on every pass, and nothing is indexed or
memoised.  Only the data model is shared with the package; any
behavioural divergence between this and the engine is a bug in one of
them.
"""

from __future__ import annotations

from ddlkit.core import (
    Literal,
    Modality,
    Mode,
    Rule,
    RuleKind,
    Theory,
    complement,
)

# conclusion encoding: (sign, tag, mode, literal) with sign in "+-",
# tag in "delta partial", mode a Mode value string
Conclusion = tuple[str, str, str, Literal]


def _universe(theory: Theory) -> set[Literal]:
    lits: set[Literal] = set(theory.facts)
    for rule in theory.rules:
        for entry in rule.body:
            lits.add(entry.literal)
        lits.update(rule.head.elements)
    return lits | {complement(l) for l in lits}


def _head(rule: Rule) -> Literal:
    assert len(rule.head) == 1, "oracle only covers chain-free theories"
    return rule.head.elements[0]


def _applicable(rule: Rule, proven: set[Conclusion]) -> bool:
    for entry in rule.body:
        if entry.modality is Modality.NONE:
            need = ("+", "partial", "C", entry.literal)
        else:
            mode = "O" if entry.modality is Modality.OBLIGATION else "P"
            sign = "-" if entry.modality_negated else "+"
            need = (sign, "partial", mode, entry.literal)
        if need not in proven:
            return False
    return True


def _discarded(rule: Rule, proven: set[Conclusion]) -> bool:
    for entry in rule.body:
        if entry.modality is Modality.NONE:
            hit = ("-", "partial", "C", entry.literal)
        else:
            mode = "O" if entry.modality is Modality.OBLIGATION else "P"
            sign = "+" if entry.modality_negated else "-"
            hit = (sign, "partial", mode, entry.literal)
        if hit in proven:
            return True
    return False


def brute_force_extension(theory: Theory) -> set[Conclusion]:
    """Every derivable tagged conclusion, found by exhaustive passes."""
    universe = sorted(_universe(theory), key=lambda l: (l.atom, l.negated))
    strict = [r for r in theory.rules if r.kind is RuleKind.STRICT]
    proven: set[Conclusion] = set()

    # definite conclusions, constitutive only
    for _ in range(len(universe) + 2):
        for lit in universe:
            if ("+", "delta", "C", lit) in proven:
                continue
            if lit in theory.facts:
                proven.add(("+", "delta", "C", lit))
                continue
            for rule in strict:
                if _head(rule) != lit:
                    continue
                if any(e.modality is not Modality.NONE for e in rule.body):
                    continue
                if all(("+", "delta", "C", e.literal) in proven for e in rule.body):
                    proven.add(("+", "delta", "C", lit))
                    break
    for _ in range(len(universe) + 2):
        for lit in universe:
            if ("-", "delta", "C", lit) in proven or lit in theory.facts:
                continue
            blocked = True
            for rule in strict:
                if _head(rule) != lit:
                    continue
                rule_blocked = False
                for entry in rule.body:
                    if entry.modality is not Modality.NONE:
                        rule_blocked = True
                    elif ("-", "delta", "C", entry.literal) in proven:
                        rule_blocked = True
                if not rule_blocked:
                    blocked = False
            if blocked:
                proven.add(("-", "delta", "C", lit))

    def witness_rules(mode: Mode, lit: Literal) -> list[Rule]:
        kinds = (
            (RuleKind.STRICT, RuleKind.DEFEASIBLE)
            if mode is Mode.C
            else (RuleKind.DEFEASIBLE,)
        )
        return [
            r
            for r in theory.rules
            if r.mode is mode and r.kind in kinds and _head(r) == lit
        ]

    def all_rules(mode: Mode, lit: Literal) -> list[Rule]:
        return [r for r in theory.rules if r.mode is mode and _head(r) == lit]

    def attackers(mode: Mode, lit: Literal) -> list[Rule]:
        comp = complement(lit)
        if mode is Mode.C:
            return all_rules(Mode.C, comp)
        if mode is Mode.O:
            return all_rules(Mode.O, comp) + all_rules(Mode.P, comp)
        return all_rules(Mode.O, comp)

    def defenders(mode: Mode, lit: Literal) -> list[Rule]:
        if mode is Mode.C:
            return all_rules(Mode.C, lit)
        if mode is Mode.O:
            return all_rules(Mode.O, lit)
        return all_rules(Mode.P, lit) + all_rules(Mode.O, lit)

    def plus_holds(mode: Mode, lit: Literal) -> bool:
        if mode is Mode.C:
            if ("+", "delta", "C", lit) in proven:
                return True
            if ("-", "delta", "C", complement(lit)) not in proven:
                return False
        if not any(_applicable(r, proven) for r in witness_rules(mode, lit)):
            return False
        for attacker in attackers(mode, lit):
            if _discarded(attacker, proven):
                continue
            beaten = any(
                _applicable(champ, proven)
                and (champ.label, attacker.label) in theory.superiority
                for champ in defenders(mode, lit)
            )
            if not beaten:
                return False
        return True

    def minus_holds(mode: Mode, lit: Literal) -> bool:
        if mode is Mode.C:
            if ("-", "delta", "C", lit) not in proven:
                return False
            if ("+", "delta", "C", complement(lit)) in proven:
                return True
        pool = witness_rules(mode, lit)
        if all(_discarded(r, proven) for r in pool):
            return True
        for attacker in attackers(mode, lit):
            if not _applicable(attacker, proven):
                continue
            resisted = False
            for champ in defenders(mode, lit):
                if (champ.label, attacker.label) not in theory.superiority:
                    continue
                if not _discarded(champ, proven):
                    resisted = True
                    break
            if not resisted:
                return True
        return False

    for _ in range(6 * len(universe) + 2):
        before = len(proven)
        for mode in Mode:
            for lit in universe:
                key_plus = ("+", "partial", mode.value, lit)
                key_minus = ("-", "partial", mode.value, lit)
                if key_plus in proven or key_minus in proven:
                    continue
                if plus_holds(mode, lit):
                    proven.add(key_plus)
                elif minus_holds(mode, lit):
                    proven.add(key_minus)
        if len(proven) == before:
            break
    return proven


def partial_sets(theory: Theory, mode: Mode) -> tuple[set[Literal], set[Literal]]:
    """(+, -) defeasible conclusion sets restricted to mentioned literals."""
    proven = brute_force_extension(theory)
    mentioned: set[Literal] = set(theory.facts)
    for rule in theory.rules:
        mentioned.update(e.literal for e in rule.body)
        mentioned.update(rule.head.elements)
    plus = {l for l in mentioned if ("+", "partial", mode.value, l) in proven}
    minus = {l for l in mentioned if ("-", "partial", mode.value, l) in proven}
    return plus, minus
