"""
Core Logical Bell functionality

This module evaluates propositions against model rows, checks joint
satisfiability of proposition families and computes the logical Bell
inequality sum(p_i) <= N - 1 with its violation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from distribution.core import SemiringTag, format_fraction
from model.core import EmpiricalModel
from scenario.core import GlobalAssignment, MeasurementScenario, ScenarioError, enumerate_assignments

from .formula import (
    Atom,
    Formula,
    PropositionError,
    atoms,
    conjunction,
    disjunction,
    evaluate,
    format_formula,
    parse_formula,
)

# Set up logging
logger = logging.getLogger(__name__)


class LogicalBellError(ValueError):
    """Raised when a proposition cannot be evaluated against a model."""


@dataclass(frozen=True)
class Proposition:
    """A formula whose atoms all live in one context."""

    context: tuple[str, ...]
    formula: Formula

    @property
    def text(self) -> str:
        return format_formula(self.formula)

    def holds(self, values: Mapping[str, str]) -> bool:
        return evaluate(self.formula, values)


@dataclass(frozen=True)
class BellResult:
    propositions: list[Proposition]
    probabilities: list[Fraction]
    sum: Fraction
    bound: int
    violation: Fraction
    satisfiable: bool
    satisfying_assignment: GlobalAssignment | None = None

    def to_json(self) -> dict:
        return {
            "propositions": [
                {"context": ",".join(p.context), "formula": p.text} for p in self.propositions
            ],
            "probabilities": [format_fraction(p) for p in self.probabilities],
            "sum": format_fraction(self.sum),
            "bound": self.bound,
            "violation": format_fraction(self.violation),
            "satisfiable": self.satisfiable,
            "satisfying_assignment": (
                self.satisfying_assignment.describe() if self.satisfying_assignment is not None else None
            ),
        }


def new_proposition(
    scenario: MeasurementScenario, context: Iterable[str], formula: Formula
) -> Proposition:
    """
    Create a proposition, checking its atoms against the scenario

    Args:
        scenario (MeasurementScenario): The scenario
        context (Iterable[str]): Variables the formula talks about
        formula (Formula): The formula

    Returns:
        Proposition: The validated proposition
    """
    try:
        context = scenario.canonical(context)
    except ScenarioError as e:
        raise PropositionError(str(e)) from None
    for atom in atoms(formula):
        if atom.variable not in context:
            raise PropositionError(
                f"atom {atom.variable}={atom.outcome} is outside context {{{','.join(context)}}}"
            )
        if atom.outcome not in scenario.outcomes[atom.variable]:
            raise PropositionError(f"{atom.outcome!r} is not an outcome of {atom.variable!r}")
    return Proposition(context, formula)


def parse_proposition(
    scenario: MeasurementScenario, text: str, context: Union[str, Iterable[str], None] = None
) -> Proposition:
    """
    Parse a proposition from text

    Without an explicit context, the first maximal context containing every
    atom's variable is used.

    Args:
        scenario (MeasurementScenario): The scenario
        text (str): Formula text
        context (optional): "a1,b1" or an iterable of variables

    Returns:
        Proposition: The validated proposition
    """
    formula = parse_formula(text)
    if isinstance(context, str):
        context = context.split(",")
    if context is None:
        names = {atom.variable for atom in atoms(formula)}
        if not names:
            raise PropositionError(f"formula {text!r} has no atoms; give its context explicitly")
        context = next((c for c in scenario.contexts if names <= set(c)), None)
        if context is None:
            raise PropositionError(f"no context contains all variables of {text!r}")
    return new_proposition(scenario, context, formula)


def eval_probability(model: EmpiricalModel, proposition: Proposition) -> Fraction:
    """
    Probability that a proposition holds on its context's row

    Args:
        model (EmpiricalModel): A rational model
        proposition (Proposition): Proposition over a maximal context

    Returns:
        Fraction: Sum of the row's weights over satisfying assignments
    """
    if model.semiring is not SemiringTag.NONNEG_RATIONAL:
        raise LogicalBellError("propositions are evaluated against rational models")
    if proposition.context not in model.tables:
        raise LogicalBellError(
            f"context {{{','.join(proposition.context)}}} is not a maximal context of the model"
        )
    table = model.tables[proposition.context]
    return sum(
        (w for s, w in table.weights.items() if proposition.holds(s.as_dict())),
        Fraction(0),
    )


def jointly_satisfiable(
    propositions: Sequence[Proposition], scenario: MeasurementScenario
) -> GlobalAssignment | None:
    """
    Search O^X for an assignment satisfying every proposition

    Args:
        propositions (Sequence[Proposition]): The family
        scenario (MeasurementScenario): Scenario the propositions live in

    Returns:
        GlobalAssignment: The first satisfying assignment, or None
    """
    for g in enumerate_assignments(scenario, scenario.variables):
        values = g.as_dict()
        if all(p.holds(values) for p in propositions):
            return g
    return None


def logical_bell(model: EmpiricalModel, propositions: Sequence[Proposition]) -> BellResult:
    """
    Evaluate the logical Bell inequality for a family of propositions

    The bound N - 1 only applies to jointly unsatisfiable families, so the
    violation is reported as 0 for satisfiable ones.

    Args:
        model (EmpiricalModel): A rational model
        propositions (Sequence[Proposition]): One proposition per listed context

    Returns:
        BellResult: Probabilities, sum, bound and violation
    """
    probabilities = [eval_probability(model, p) for p in propositions]
    total = sum(probabilities, Fraction(0))
    bound = len(propositions) - 1
    witness = jointly_satisfiable(propositions, model.scenario)
    satisfiable = witness is not None
    violation = Fraction(0) if satisfiable else max(Fraction(0), total - bound)
    logger.info(
        f"Logical Bell: sum {format_fraction(total)}, bound {bound}, violation {format_fraction(violation)}"
    )
    return BellResult(list(propositions), probabilities, total, bound, violation, satisfiable, witness)


def canonical_support_propositions(model: EmpiricalModel) -> list[Proposition]:
    """
    Per context, the disjunction of the assignments in that row's support

    Args:
        model (EmpiricalModel): A model (rational or boolean)

    Returns:
        list: One proposition per maximal context, each with probability 1
    """
    propositions = []
    for context in model.scenario.contexts:
        table = model.table(context)
        terms: list[Formula] = [
            conjunction([Atom(v, x) for v, x in zip(s.context, s.values)])
            for s in enumerate_assignments(model.scenario, context)
            if s in table.weights
        ]
        propositions.append(Proposition(context, disjunction(terms)))
    return propositions
