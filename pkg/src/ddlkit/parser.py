"""Text format for theories (``.ddl``) and case scenarios (``.case``).

The surface syntax is plain ASCII.  One statement per line is the
canonical layout, although the grammar itself is whitespace-insensitive:

    # comment until end of line
    fact Mario_buys_Arsenic.
    fact ~at_home.
    r575: => O(~death @ basic_punishment).
    r575b: basic_punishment => imprisonment := 21years.
    poison: poisonous_means =>O ~death @ life_imprisonment.
    s1: sale -> contract.
    blocker: c ~> ~l.
    poison > r575.

Arrows select the rule kind and mode: ``->`` strict (constitutive),
``=>`` defeasible constitutive, ``=>O`` / ``=>P`` defeasible obligation /
permission, ``~>`` defeater (``~>O``, ``~>P`` for deontic defeaters).
Writing the modality around the head, as in ``=> O(x)``, is accepted as
an equivalent spelling of ``=>O x``; the printer always emits the arrow
form.  ``@`` separates the elements of a reparation chain and is legal
only on defeasible obligation rules.  Body literals may carry a modal
wrapper: ``O(x)``, ``P(x)``, ``!O(x)``, ``!P(x)``.

Scenario files use the same fact and rule statements (constitutive rules
only, no superiority) plus expectations:

    expect +defeasible O life_imprisonment.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Chain,
    Literal,
    Modality,
    ModalLiteral,
    Mode,
    Payload,
    Rule,
    RuleKind,
    Sign,
    Tag,
    TaggedConclusion,
    Theory,
    has_errors,
    literal_key,
    validate_theory,
)

THEORY_EXTENSION = ".ddl"
SCENARIO_EXTENSION = ".case"


@dataclass(frozen=True)
class SourceSpan:
    """1-based position of a token inside the input text."""

    line: int
    column: int
    length: int = 1

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1 or self.length < 1:
            raise ValueError("spans are 1-based with positive length")

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(Exception):
    """Syntax or structure error, pointing at the offending token."""

    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


@dataclass(frozen=True)
class Scenario:
    """A case: facts plus constitutive rules plus expected conclusions."""

    name: str
    facts: frozenset[Literal] = frozenset()
    rules: tuple[Rule, ...] = ()
    expectations: tuple[TaggedConclusion, ...] = ()


# --- lexer -------------------------------------------------------------

_ARROW_TEXTS = {"->", "=>", "=>O", "=>P", "~>", "~>O", "~>P"}

_PUNCT = {
    ":": "COLON",
    ".": "DOT",
    ",": "COMMA",
    "@": "AT",
    ">": "GT",
    "(": "LPAREN",
    ")": "RPAREN",
    "~": "TILDE",
    "!": "BANG",
    "+": "PLUS",
    "-": "MINUS",
}


@dataclass(frozen=True)
class _Token:
    type: str  # IDENT NUMBER ARROW ASSIGN or a _PUNCT name or EOF
    text: str
    span: SourceSpan


def _is_ident_start(ch: str) -> bool:
    return ch.isascii() and (ch.isalpha() or ch == "_")


def _is_ident_char(ch: str) -> bool:
    return ch.isascii() and (ch.isalnum() or ch == "_")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)

    def emit(kind: str, start: int, end: int, start_col: int) -> None:
        tokens.append(
            _Token(kind, text[start:end], SourceSpan(line, start_col, end - start))
        )

    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start, start_col = i, col
        if _is_ident_start(ch):
            while i < n and _is_ident_char(text[i]):
                i += 1
            emit("IDENT", start, i, start_col)
        elif ch.isdigit():
            while i < n and text[i].isdigit():
                i += 1
            if i + 1 < n and text[i] == "." and text[i + 1].isdigit():
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
            emit("NUMBER", start, i, start_col)
        elif ch in "=~-" and i + 1 < n and text[i + 1] == ">":
            i += 2
            # a trailing O or P belongs to the arrow unless it starts a name
            if (
                ch != "-"
                and i < n
                and text[i] in "OP"
                and (i + 1 >= n or not _is_ident_char(text[i + 1]))
            ):
                i += 1
            arrow = text[start:i]
            if arrow not in _ARROW_TEXTS:
                raise ParseError(
                    f"unknown token {arrow!r}", SourceSpan(line, start_col, i - start)
                )
            emit("ARROW", start, i, start_col)
        elif ch == ":" and i + 1 < n and text[i + 1] == "=":
            i += 2
            emit("ASSIGN", start, i, start_col)
        elif ch in _PUNCT:
            i += 1
            emit(_PUNCT[ch], start, i, start_col)
        else:
            raise ParseError(f"unknown token {ch!r}", SourceSpan(line, start_col, 1))
        col += i - start
    tokens.append(_Token("EOF", "", SourceSpan(line, col, 1)))
    return tokens


# --- parser ------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def here(self) -> _Token:
        return self.tokens[self.pos]

    def peek(self, ahead: int = 1) -> _Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.here
        if tok.type != "EOF":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        if self.here.type != kind:
            self.fail(f"expected {what}")
        return self.advance()

    def fail(self, message: str) -> None:
        tok = self.here
        shown = f", found {tok.text!r}" if tok.type != "EOF" else ", found end of input"
        raise ParseError(message + shown, tok.span)

    # literals

    def parse_literal(self) -> Literal:
        negated = False
        neg_span = None
        if self.here.type == "TILDE":
            negated = True
            neg_span = self.advance().span
        name = self.expect("IDENT", "an atom")
        payload = None
        if self.here.type == "ASSIGN":
            assign = self.advance()
            if negated:
                raise ParseError(
                    "malformed assignment: assignment literals cannot be negated",
                    neg_span or assign.span,
                )
            number = self.expect("NUMBER", "a number after ':='")
            unit = ""
            if self.here.type == "IDENT":
                unit = self.advance().text
            payload = Payload(float(number.text), unit)
        return Literal(name.text, negated, payload)

    def parse_modal_literal(self) -> ModalLiteral:
        negated_mod = False
        if self.here.type == "BANG":
            self.advance()
            negated_mod = True
            if not (self.here.type == "IDENT" and self.here.text in ("O", "P")):
                self.fail("expected 'O(' or 'P(' after '!'")
        if (
            self.here.type == "IDENT"
            and self.here.text in ("O", "P")
            and self.peek().type == "LPAREN"
        ):
            mode_tok = self.advance()
            self.advance()  # (
            lit = self.parse_literal()
            self.expect("RPAREN", "')'")
            modality = (
                Modality.OBLIGATION if mode_tok.text == "O" else Modality.PERMISSION
            )
            return ModalLiteral(lit, modality, negated_mod)
        if negated_mod:
            self.fail("expected 'O(' or 'P(' after '!'")
        return ModalLiteral(self.parse_literal())

    # statements

    def parse_fact(self) -> Literal:
        self.advance()  # 'fact'
        lit = self.parse_literal()
        self.expect("DOT", "'.' after fact")
        return lit

    def parse_rule(self, labels_seen: set[str]) -> Rule:
        label_tok = self.expect("IDENT", "a rule label")
        if label_tok.text in labels_seen:
            raise ParseError(
                f"duplicate label {label_tok.text!r}", label_tok.span
            )
        self.expect("COLON", "':'")
        body: list[ModalLiteral] = []
        if self.here.type != "ARROW":
            body.append(self.parse_modal_literal())
            while self.here.type == "COMMA":
                self.advance()
                body.append(self.parse_modal_literal())
        arrow_tok = self.expect("ARROW", "an arrow")
        kind, mode = _ARROW_MEANING[arrow_tok.text]

        # modality written around the head: '=> O(x)' means '=>O x'
        wrapped = False
        if (
            mode is Mode.C
            and kind is not RuleKind.STRICT
            and self.here.type == "IDENT"
            and self.here.text in ("O", "P")
            and self.peek().type == "LPAREN"
        ):
            mode = Mode.O if self.here.text == "O" else Mode.P
            self.advance()
            self.advance()  # (
            wrapped = True

        elements = [self.parse_literal()]
        while self.here.type == "AT":
            at_tok = self.advance()
            if not (kind is RuleKind.DEFEASIBLE and mode is Mode.O):
                raise ParseError(
                    "reparation chain is only allowed after '=>O'", at_tok.span
                )
            elements.append(self.parse_literal())
        if wrapped:
            self.expect("RPAREN", "')'")
        self.expect("DOT", "'.' after rule")
        try:
            head = Chain(tuple(elements))
        except ValueError as exc:
            raise ParseError(str(exc), arrow_tok.span) from exc
        return Rule(label_tok.text, kind, mode, tuple(body), head)

    def parse_sup(self) -> tuple[str, str, SourceSpan]:
        stronger = self.expect("IDENT", "a rule label")
        self.expect("GT", "'>'")
        weaker = self.expect("IDENT", "a rule label")
        self.expect("DOT", "'.' after superiority")
        if stronger.text == weaker.text:
            raise ParseError(
                f"rule {stronger.text!r} cannot be superior to itself", stronger.span
            )
        return stronger.text, weaker.text, stronger.span

    def parse_expectation(self) -> TaggedConclusion:
        self.advance()  # 'expect'
        if self.here.type == "PLUS":
            sign = Sign.PLUS
        elif self.here.type == "MINUS":
            sign = Sign.MINUS
        else:
            self.fail("expected '+' or '-'")
        self.advance()
        tag_tok = self.expect("IDENT", "'definite' or 'defeasible'")
        if tag_tok.text == "definite":
            tag = Tag.DEFINITE
        elif tag_tok.text == "defeasible":
            tag = Tag.DEFEASIBLE
        else:
            raise ParseError("expected 'definite' or 'defeasible'", tag_tok.span)
        mode_tok = self.expect("IDENT", "a mode: C, O or P")
        if mode_tok.text not in ("C", "O", "P"):
            raise ParseError("expected a mode: C, O or P", mode_tok.span)
        mode = Mode(mode_tok.text)
        if tag is Tag.DEFINITE and mode is not Mode.C:
            raise ParseError(
                "definite expectations are restricted to mode C", mode_tok.span
            )
        lit = self.parse_literal()
        self.expect("DOT", "'.' after expectation")
        return TaggedConclusion(sign, tag, mode, lit)


_ARROW_MEANING = {
    "->": (RuleKind.STRICT, Mode.C),
    "=>": (RuleKind.DEFEASIBLE, Mode.C),
    "=>O": (RuleKind.DEFEASIBLE, Mode.O),
    "=>P": (RuleKind.DEFEASIBLE, Mode.P),
    "~>": (RuleKind.DEFEATER, Mode.C),
    "~>O": (RuleKind.DEFEATER, Mode.O),
    "~>P": (RuleKind.DEFEATER, Mode.P),
}


def parse_theory(text: str) -> Theory:
    """Parse theory text, raising :class:`ParseError` on any defect.

    The returned theory is validated: structural errors (dangling
    superiority and the like) surface as parse errors with a position.
    """
    p = _Parser(text)
    facts: list[Literal] = []
    rules: list[Rule] = []
    labels: set[str] = set()
    sups: list[tuple[str, str]] = []
    sup_spans: list[SourceSpan] = []

    while p.here.type != "EOF":
        tok = p.here
        if tok.type != "IDENT":
            p.fail("expected a statement (fact, rule or superiority)")
        nxt = p.peek()
        if nxt.type == "COLON":
            rule = p.parse_rule(labels)
            labels.add(rule.label)
            rules.append(rule)
        elif nxt.type == "GT":
            stronger, weaker, span = p.parse_sup()
            sups.append((stronger, weaker))
            sup_spans.append(span)
        elif tok.text == "fact":
            facts.append(p.parse_fact())
        elif tok.text == "expect":
            raise ParseError(
                "expectations are only allowed in scenario files", tok.span
            )
        else:
            p.fail("expected ':' (rule), '>' (superiority) or the 'fact' keyword")

    for (stronger, weaker), span in zip(sups, sup_spans):
        for label in (stronger, weaker):
            if label not in labels:
                raise ParseError(
                    f"superiority references unknown rule {label!r}", span
                )

    theory = Theory(frozenset(facts), tuple(rules), frozenset(sups))
    diagnostics = validate_theory(theory)
    if has_errors(diagnostics):
        first = next(d for d in diagnostics if d.severity.value == "error")
        raise ParseError(first.message, SourceSpan(1, 1))
    return theory


def parse_scenario(text: str, name: str = "scenario") -> Scenario:
    """Parse a case file: facts, constitutive rules and expectations.

    Deontic rules, defeaters and superiority statements are rejected so
    that the normative background and the case stay cleanly separated.
    """
    p = _Parser(text)
    facts: list[Literal] = []
    rules: list[Rule] = []
    labels: set[str] = set()
    expectations: list[TaggedConclusion] = []

    while p.here.type != "EOF":
        tok = p.here
        if tok.type != "IDENT":
            p.fail("expected a statement (fact, rule or expect)")
        nxt = p.peek()
        if nxt.type == "COLON":
            rule = p.parse_rule(labels)
            if rule.mode is not Mode.C or rule.kind is RuleKind.DEFEATER:
                raise ParseError(
                    "scenarios allow only constitutive '->' and '=>' rules",
                    tok.span,
                )
            labels.add(rule.label)
            rules.append(rule)
        elif nxt.type == "GT":
            raise ParseError("superiority is not allowed in scenarios", tok.span)
        elif tok.text == "fact":
            facts.append(p.parse_fact())
        elif tok.text == "expect":
            expectations.append(p.parse_expectation())
        else:
            p.fail("expected ':' (rule), 'fact' or 'expect'")

    return Scenario(name, frozenset(facts), tuple(rules), tuple(expectations))


# --- printer -----------------------------------------------------------


def print_theory(theory: Theory) -> str:
    """Canonical text for a theory; ``parse_theory`` inverts it exactly.

    Facts and superiority pairs are emitted sorted, rules keep their
    declaration order.  The empty theory prints as the empty string.
    """
    lines = [f"fact {lit}." for lit in sorted(theory.facts, key=literal_key)]
    lines += [f"{rule}." for rule in theory.rules]
    lines += [f"{s} > {w}." for s, w in sorted(theory.superiority)]
    return "\n".join(lines) + ("\n" if lines else "")


def print_scenario(scenario: Scenario) -> str:
    """Canonical text for a scenario; inverse of ``parse_scenario``."""
    lines = [f"fact {lit}." for lit in sorted(scenario.facts, key=literal_key)]
    lines += [f"{rule}." for rule in scenario.rules]
    lines += [
        f"expect {e.sign.value}{e.tag.value} {e.mode.value} {e.literal}."
        for e in scenario.expectations
    ]
    return "\n".join(lines) + ("\n" if lines else "")
