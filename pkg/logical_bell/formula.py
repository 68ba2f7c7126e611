"""
Propositional formulas over atoms "variable = outcome"

Text syntax (loosest binding last):

    primary  := ATOM | "true" | "false" | "(" formula ")"
    unary    := "!" unary | primary
    conj     := unary ("&" unary)*
    disj     := conj ("|" conj)*
    formula  := disj (("->" | "<->" | "(+)") formula)?

ATOM is NAME "=" LABEL with NAME matching [A-Za-z_][A-Za-z0-9_.]* and
LABEL matching [+-]?[A-Za-z0-9_.]+, so signed outcomes such as -1 can be
written. Names and labels with other characters cannot appear in formulas.
The arrow level is right-associative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

BINARY_OPERATORS = ("&", "|", "->", "<->", "(+)")

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<xor>\(\+\))|(?P<iff><->)|(?P<implies>->)|(?P<symbol>[()!&|])"
    r"|(?P<atom>[A-Za-z_][A-Za-z0-9_.]*\s*=\s*[+-]?[A-Za-z0-9_.]+)"
    r"|(?P<const>\btrue\b|\bfalse\b)"
    r")"
)


class PropositionError(ValueError):
    """Raised for malformed formulas or propositions."""


@dataclass(frozen=True)
class Atom:
    variable: str
    outcome: str


@dataclass(frozen=True)
class Constant:
    value: bool


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class Binary:
    operator: str
    left: "Formula"
    right: "Formula"

    def __post_init__(self):
        if self.operator not in BINARY_OPERATORS:
            raise PropositionError(f"unknown connective {self.operator!r}")


Formula = Union[Atom, Constant, Not, Binary]


def evaluate(formula: Formula, values: Mapping[str, str]) -> bool:
    """Truth value of a formula under an assignment of outcomes."""
    if isinstance(formula, Atom):
        return values[formula.variable] == formula.outcome
    if isinstance(formula, Constant):
        return formula.value
    if isinstance(formula, Not):
        return not evaluate(formula.operand, values)
    left = evaluate(formula.left, values)
    right = evaluate(formula.right, values)
    if formula.operator == "&":
        return left and right
    if formula.operator == "|":
        return left or right
    if formula.operator == "->":
        return (not left) or right
    if formula.operator == "<->":
        return left == right
    return left != right


def atoms(formula: Formula) -> Iterator[Atom]:
    if isinstance(formula, Atom):
        yield formula
    elif isinstance(formula, Not):
        yield from atoms(formula.operand)
    elif isinstance(formula, Binary):
        yield from atoms(formula.left)
        yield from atoms(formula.right)


def format_formula(formula: Formula) -> str:
    """Render a formula in the text syntax, parenthesizing every compound operand."""
    if isinstance(formula, Atom):
        return f"{formula.variable}={formula.outcome}"
    if isinstance(formula, Constant):
        return "true" if formula.value else "false"
    if isinstance(formula, Not):
        inner = format_formula(formula.operand)
        return f"!{inner}" if isinstance(formula.operand, (Atom, Constant, Not)) else f"!({inner})"

    def side(part: Formula) -> str:
        text = format_formula(part)
        return f"({text})" if isinstance(part, Binary) else text

    return f"{side(formula.left)} {formula.operator} {side(formula.right)}"


def conjunction(parts: list[Formula]) -> Formula:
    if not parts:
        return Constant(True)
    result = parts[0]
    for part in parts[1:]:
        result = Binary("&", result, part)
    return result


def disjunction(parts: list[Formula]) -> Formula:
    if not parts:
        return Constant(False)
    result = parts[0]
    for part in parts[1:]:
        result = Binary("|", result, part)
    return result


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None or match.end() == position:
            raise PropositionError(f"unexpected input at position {position}: {text[position:]!r}")
        kind = match.lastgroup
        value = match.group(kind)
        if kind == "atom":
            name, _, label = value.partition("=")
            tokens.append(("atom", f"{name.strip()}={label.strip()}"))
        elif kind == "symbol":
            tokens.append((value, value))
        elif kind in ("xor", "iff", "implies"):
            tokens.append(("binary", value))
        else:
            tokens.append(("const", value))
        position = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        token = self.peek()
        if token is None:
            raise PropositionError(f"unexpected end of formula {self.text!r}")
        self.index += 1
        return token

    def formula(self) -> Formula:
        left = self.disjunction()
        token = self.peek()
        if token is not None and token[0] == "binary":
            self.take()
            return Binary(token[1], left, self.formula())
        return left

    def disjunction(self) -> Formula:
        result = self.conjunction()
        while self.peek() == ("|", "|"):
            self.take()
            result = Binary("|", result, self.conjunction())
        return result

    def conjunction(self) -> Formula:
        result = self.unary()
        while self.peek() == ("&", "&"):
            self.take()
            result = Binary("&", result, self.unary())
        return result

    def unary(self) -> Formula:
        if self.peek() == ("!", "!"):
            self.take()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        kind, value = self.take()
        if kind == "atom":
            variable, _, outcome = value.partition("=")
            return Atom(variable, outcome)
        if kind == "const":
            return Constant(value == "true")
        if kind == "(":
            inner = self.formula()
            if self.take()[0] != ")":
                raise PropositionError(f"missing ')' in {self.text!r}")
            return inner
        raise PropositionError(f"unexpected {value!r} in {self.text!r}")


def parse_formula(text: str) -> Formula:
    """
    Parse a formula in the text syntax

    Args:
        text (str): e.g. "a1=0 <-> b1=0" or "!(a2=0 & b2=1)"

    Returns:
        Formula: The syntax tree
    """
    parser = _Parser(text)
    result = parser.formula()
    if parser.peek() is not None:
        raise PropositionError(f"trailing input {parser.peek()[1]!r} in {text!r}")
    return result
