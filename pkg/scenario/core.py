"""
Core Scenario functionality

This module contains the measurement scenario type and the assignment
operations that every other part of the toolkit is fibred over.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

# Set up logging
logger = logging.getLogger(__name__)


class ScenarioError(ValueError):
    """Raised when a scenario or an assignment is malformed."""


@dataclass(frozen=True)
class LocalAssignment:
    """
    A joint outcome for a context: one outcome per variable of the context.

    ``context`` is kept in the scenario's canonical variable order and
    ``values`` is aligned with it.
    """

    context: tuple[str, ...]
    values: tuple[str, ...]

    def __post_init__(self):
        if len(self.context) != len(self.values):
            raise ScenarioError(
                f"assignment over {self.context} has {len(self.values)} values"
            )
        if len(set(self.context)) != len(self.context):
            raise ScenarioError(f"repeated variable in assignment context {self.context}")

    def __getitem__(self, variable: str) -> str:
        try:
            return self.values[self.context.index(variable)]
        except ValueError:
            raise KeyError(variable) from None

    def as_dict(self) -> dict[str, str]:
        return dict(zip(self.context, self.values))

    @property
    def key(self) -> str:
        """Comma-joined outcomes, the cell key used in model files."""
        return ",".join(self.values)

    def describe(self) -> str:
        return ",".join(f"{var}={val}" for var, val in zip(self.context, self.values))

    def __str__(self) -> str:
        return "{" + self.describe() + "}"


# A global assignment is a local assignment whose context is the whole of X.
GlobalAssignment = LocalAssignment


@dataclass(frozen=True)
class MeasurementScenario:
    """
    A measurement scenario (X, Cont, O).

    Contexts are stored by their maximal elements only; every subset of a
    maximal context is implicitly a context too.
    """

    variables: tuple[str, ...]
    contexts: tuple[tuple[str, ...], ...]
    outcomes: dict[str, tuple[str, ...]]
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def index(self, variable: str) -> int:
        try:
            return self.variables.index(variable)
        except ValueError:
            raise ScenarioError(f"unknown variable {variable!r}") from None

    def canonical(self, context: Iterable[str]) -> tuple[str, ...]:
        """
        Put a set of variables into canonical order

        Args:
            context (Iterable[str]): Variable names, any order

        Returns:
            tuple: The same variables in scenario order, without repeats
        """
        names = set(context)
        unknown = sorted(names.difference(self.variables))
        if unknown:
            raise ScenarioError(f"unknown variable(s) in context: {', '.join(unknown)}")
        return tuple(v for v in self.variables if v in names)

    def is_maximal(self, context: Iterable[str]) -> bool:
        return self.canonical(context) in self.contexts

    def assignment_count(self, context: Iterable[str]) -> int:
        count = 1
        for variable in self.canonical(context):
            count *= len(self.outcomes[variable])
        return count

    @property
    def global_count(self) -> int:
        """Size of O^X."""
        return self.assignment_count(self.variables)

    def assignment(self, values: Mapping[str, str]) -> LocalAssignment:
        """
        Build a validated local assignment from a variable-to-outcome map

        Args:
            values (Mapping[str, str]): Outcome per variable

        Returns:
            LocalAssignment: The assignment in canonical order
        """
        context = self.canonical(values)
        for variable in context:
            if str(values[variable]) not in self.outcomes[variable]:
                raise ScenarioError(
                    f"outcome {values[variable]!r} is not valid for variable {variable!r}"
                )
        return LocalAssignment(context, tuple(str(values[v]) for v in context))

    def order_key(self, assignment: LocalAssignment) -> tuple[int, ...]:
        """Sort key reproducing enumeration order (first variable fastest)."""
        return tuple(
            self.outcomes[var].index(val)
            for var, val in zip(reversed(assignment.context), reversed(assignment.values))
        )

    def context_label(self, context: Iterable[str]) -> str:
        return ",".join(self.canonical(context))


def new_scenario(
    variables: Sequence[str],
    maximal_contexts: Iterable[Iterable[str]],
    outcomes: Mapping[str, Iterable[str]],
) -> MeasurementScenario:
    """
    Create a validated measurement scenario

    Contexts contained in other contexts are dropped with a warning, and the
    remaining family is sorted lexicographically by variable position.

    Args:
        variables (Sequence[str]): Variable names in canonical order
        maximal_contexts (Iterable): Families of jointly measurable variables
        outcomes (Mapping): Outcome labels per variable

    Returns:
        MeasurementScenario: The normalized scenario
    """
    variables = tuple(str(v) for v in variables)
    if not variables:
        raise ScenarioError("a scenario needs at least one variable")
    if len(set(variables)) != len(variables):
        raise ScenarioError("variable names must be distinct")
    if any(not v or "," in v for v in variables):
        raise ScenarioError("variable names must be nonempty and free of commas")
    position = {v: i for i, v in enumerate(variables)}

    outcome_sets: dict[str, tuple[str, ...]] = {}
    extra = sorted(set(map(str, outcomes)).difference(variables))
    if extra:
        raise ScenarioError(f"outcomes given for unknown variable(s): {', '.join(extra)}")
    for variable in variables:
        if variable not in outcomes:
            raise ScenarioError(f"variable {variable!r} has no outcome set")
        labels = tuple(str(o) for o in outcomes[variable])
        if not labels:
            raise ScenarioError(f"variable {variable!r} has an empty outcome set")
        if len(set(labels)) != len(labels):
            raise ScenarioError(f"variable {variable!r} has repeated outcome labels")
        if any(not o or "," in o for o in labels):
            raise ScenarioError(f"outcome labels of {variable!r} must be nonempty and free of commas")
        outcome_sets[variable] = labels

    contexts: list[tuple[str, ...]] = []
    for raw in maximal_contexts:
        if isinstance(raw, str) or not isinstance(raw, Iterable):
            raise ScenarioError(f"context {raw!r} is not a collection of variable names")
        names = [str(v) for v in raw]
        if not names:
            raise ScenarioError("contexts must be nonempty")
        unknown = sorted(set(names).difference(variables))
        if unknown:
            raise ScenarioError(f"context mentions unknown variable(s): {', '.join(unknown)}")
        context = tuple(sorted(set(names), key=position.__getitem__))
        if context not in contexts:
            contexts.append(context)

    # Antichain normalization: larger contexts first, drop anything they contain.
    warnings = []
    kept: list[tuple[str, ...]] = []
    for context in sorted(contexts, key=len, reverse=True):
        container = next((k for k in kept if set(context) <= set(k)), None)
        if container is None:
            kept.append(context)
        else:
            message = (
                f"context {{{','.join(context)}}} is contained in "
                f"{{{','.join(container)}}} and was removed"
            )
            logger.warning(message)
            warnings.append(message)

    covered = set(itertools.chain.from_iterable(kept))
    missing = [v for v in variables if v not in covered]
    if missing:
        raise ScenarioError(f"variable(s) in no context: {', '.join(missing)}")

    kept.sort(key=lambda c: tuple(position[v] for v in c))
    logger.info(f"Created scenario with {len(variables)} variables and {len(kept)} contexts")
    return MeasurementScenario(variables, tuple(kept), outcome_sets, tuple(warnings))


def enumerate_assignments(
    scenario: MeasurementScenario, context: Iterable[str]
) -> list[LocalAssignment]:
    """
    List every joint outcome O^C of a context

    The first variable of the context varies fastest, which matches the
    column order of the usual Alice-Bob tables.

    Args:
        scenario (MeasurementScenario): The scenario
        context (Iterable[str]): Any subset of the variables

    Returns:
        list: All assignments in enumeration order
    """
    ordered = scenario.canonical(context)
    pools = [scenario.outcomes[v] for v in reversed(ordered)]
    return [
        LocalAssignment(ordered, tuple(reversed(combo)))
        for combo in itertools.product(*pools)
    ]


def restrict_assignment(assignment: LocalAssignment, subcontext: Iterable[str]) -> LocalAssignment:
    """
    Restrict an assignment to a subset of its context (function restriction)

    Args:
        assignment (LocalAssignment): Assignment over C
        subcontext (Iterable[str]): Variables D with D a subset of C

    Returns:
        LocalAssignment: The assignment over D
    """
    names = set(subcontext)
    outside = names.difference(assignment.context)
    if outside:
        raise ScenarioError(
            f"cannot restrict assignment over {{{','.join(assignment.context)}}} "
            f"to variables {sorted(outside)} outside it"
        )
    pairs = [(v, x) for v, x in zip(assignment.context, assignment.values) if v in names]
    return LocalAssignment(tuple(v for v, _ in pairs), tuple(x for _, x in pairs))


def context_overlap(first: Iterable[str], second: Iterable[str]) -> tuple[str, ...]:
    """Intersection of two contexts, in the order of the first."""
    other = set(second)
    return tuple(v for v in first if v in other)


def scenario_to_json(scenario: MeasurementScenario) -> dict:
    return {
        "variables": list(scenario.variables),
        "contexts": [list(c) for c in scenario.contexts],
        "outcomes": {v: list(scenario.outcomes[v]) for v in scenario.variables},
    }


def _is_string_list(value) -> bool:
    return isinstance(value, list) and all(isinstance(item, str) for item in value)


def scenario_from_json(data: Mapping) -> MeasurementScenario:
    """
    Parse the scenario JSON object

    Args:
        data (Mapping): Object with "variables", "contexts" and "outcomes"

    Returns:
        MeasurementScenario: The validated scenario
    """
    try:
        variables = data["variables"]
        contexts = data["contexts"]
        outcomes = data["outcomes"]
    except (KeyError, TypeError) as e:
        raise ScenarioError(f"scenario object is missing field {e}") from None
    if not _is_string_list(variables):
        raise ScenarioError("scenario 'variables' must be a list of strings")
    if not isinstance(contexts, list) or not all(_is_string_list(c) for c in contexts):
        raise ScenarioError("scenario 'contexts' must be a list of lists of variable names")
    if not isinstance(outcomes, Mapping):
        raise ScenarioError("scenario 'outcomes' must be an object")
    for variable, labels in outcomes.items():
        if not _is_string_list(labels):
            raise ScenarioError(f"outcomes of {variable!r} must be a list of strings")
    return new_scenario(variables, contexts, outcomes)
