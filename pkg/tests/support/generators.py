"""Seeded random builders for well-formed theories.

Two flavours: chain-free theories for engine / oracle comparison, and
full-featured theories (reparation chains, payload assignments, modal
bodies) for parser round trips.  Both construct valid theories by
design: unique labels, superiority only between declared rules, chains
only on defeasible obligation rules.
"""

from __future__ import annotations

import random

from ddlkit.core import (
    Chain,
    Literal,
    Modality,
    ModalLiteral,
    Mode,
    Payload,
    Rule,
    RuleKind,
    Theory,
)

_ATOMS = ["a", "b", "c", "d", "e", "f"]


def _literal(rng: random.Random, atoms: list[str]) -> Literal:
    return Literal(rng.choice(atoms), rng.random() < 0.4)


def _body(rng: random.Random, atoms: list[str], modal: bool) -> tuple[ModalLiteral, ...]:
    entries = []
    for _ in range(rng.randint(0, 3)):
        lit = _literal(rng, atoms)
        if modal and rng.random() < 0.25:
            modality = rng.choice([Modality.OBLIGATION, Modality.PERMISSION])
            entries.append(ModalLiteral(lit, modality, rng.random() < 0.3))
        else:
            entries.append(ModalLiteral(lit))
    return tuple(entries)


def random_chain_free_theory(
    rng: random.Random, max_atoms: int = 6, max_rules: int = 8
) -> Theory:
    atoms = _ATOMS[: rng.randint(1, max_atoms)]
    rules = []
    for i in range(rng.randint(0, max_rules)):
        kind = rng.choices(
            [RuleKind.STRICT, RuleKind.DEFEASIBLE, RuleKind.DEFEATER],
            weights=[2, 6, 2],
        )[0]
        if kind is RuleKind.STRICT:
            mode = Mode.C
        else:
            mode = rng.choices([Mode.C, Mode.O, Mode.P], weights=[5, 3, 2])[0]
        rules.append(
            Rule(
                label=f"r{i}",
                kind=kind,
                mode=mode,
                body=_body(rng, atoms, modal=kind is not RuleKind.STRICT),
                head=Chain((_literal(rng, atoms),)),
            )
        )
    facts = frozenset(_literal(rng, atoms) for _ in range(rng.randint(0, 4)))
    sups = set()
    if rules:
        for _ in range(rng.randint(0, 3)):
            stronger, weaker = rng.choice(rules).label, rng.choice(rules).label
            if stronger != weaker:
                sups.add((stronger, weaker))
    return Theory(facts, tuple(rules), frozenset(sups))


_UNITS = ["", "years", "months", "eur"]
_VALUES = [0.0, 1.0, 2.0, 21.0, 3.5, 0.25]


def _payload_literal(rng: random.Random, atoms: list[str]) -> Literal:
    return Literal(
        rng.choice(atoms), False, Payload(rng.choice(_VALUES), rng.choice(_UNITS))
    )


def random_theory(rng: random.Random) -> Theory:
    """Full-featured theory: chains, payload heads and facts, modal bodies."""
    atoms = [f"atom_{ch}" for ch in _ATOMS[: rng.randint(2, 6)]]
    rules = []
    for i in range(rng.randint(0, 10)):
        kind = rng.choices(
            [RuleKind.STRICT, RuleKind.DEFEASIBLE, RuleKind.DEFEATER],
            weights=[2, 6, 2],
        )[0]
        mode = Mode.C if kind is RuleKind.STRICT else rng.choice(list(Mode))
        if kind is RuleKind.DEFEASIBLE and mode is Mode.O and rng.random() < 0.5:
            pool = [Literal(a, n) for a in atoms for n in (False, True)]
            rng.shuffle(pool)
            head = Chain(tuple(pool[: rng.randint(2, 3)]))
        elif mode is Mode.C and kind is RuleKind.DEFEASIBLE and rng.random() < 0.2:
            head = Chain((_payload_literal(rng, atoms),))
        else:
            head = Chain((_literal(rng, atoms),))
        rules.append(
            Rule(
                label=f"r{i}",
                kind=kind,
                mode=mode,
                body=_body(rng, atoms, modal=True),
                head=head,
            )
        )
    facts: set[Literal] = set()
    for _ in range(rng.randint(0, 5)):
        if rng.random() < 0.2:
            facts.add(_payload_literal(rng, atoms))
        else:
            facts.add(_literal(rng, atoms))
    sups = set()
    if rules:
        for _ in range(rng.randint(0, 4)):
            stronger, weaker = rng.choice(rules).label, rng.choice(rules).label
            if stronger != weaker:
                sups.add((stronger, weaker))
    return Theory(frozenset(facts), tuple(rules), frozenset(sups))
