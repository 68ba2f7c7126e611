"""
Core Model functionality

This module contains the empirical model type and the operations on whole
families of tables: validation, compatibility, collapse and serialization.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

import pandas as pd

from distribution.core import (
    DistributionError,
    RDistribution,
    SemiringTag,
    marginalize,
    mixture,
    new_distribution,
    support,
)
from scenario.core import (
    LocalAssignment,
    MeasurementScenario,
    ScenarioError,
    context_overlap,
    enumerate_assignments,
    new_scenario,
    scenario_from_json,
    scenario_to_json,
)

# Set up logging
logger = logging.getLogger(__name__)

ContextKey = Union[str, Iterable[str]]


class ModelError(ValueError):
    """Raised for malformed empirical models or invalid model operations."""


class IncompatibleModelError(ModelError):
    """Raised when an operation needs a no-signalling model and gets a signalling one."""

    def __init__(self, report: "CompatibilityReport"):
        self.report = report
        pairs = "; ".join(v.describe() for v in report.violations)
        super().__init__(f"model is not compatible: {pairs}")


@dataclass(frozen=True)
class EmpiricalModel:
    """
    One distribution per maximal context of a scenario.

    Compatibility of the family is a checked property, not an invariant.
    """

    scenario: MeasurementScenario
    semiring: SemiringTag
    tables: dict[tuple[str, ...], RDistribution]

    @property
    def contexts(self) -> tuple[tuple[str, ...], ...]:
        return self.scenario.contexts

    def table(self, context: ContextKey) -> RDistribution:
        key = _context_key(self.scenario, context)
        if key not in self.tables:
            raise ModelError(f"model has no table for context {{{','.join(key)}}}")
        return self.tables[key]

    def weight(self, context: ContextKey, values: Union[str, Sequence[str]]) -> object:
        """Cell lookup by context and comma-joined (or listed) outcomes."""
        key = _context_key(self.scenario, context)
        labels = values.split(",") if isinstance(values, str) else [str(v) for v in values]
        return self.table(key).weight(LocalAssignment(key, tuple(labels)))


@dataclass(frozen=True)
class ModelViolation:
    kind: str
    context: tuple[str, ...] | None
    message: str

    def describe(self) -> str:
        where = f"context {','.join(self.context)}: " if self.context is not None else ""
        return f"[{self.kind}] {where}{self.message}"


@dataclass(frozen=True)
class CompatibilityViolation:
    context_c: tuple[str, ...]
    context_d: tuple[str, ...]
    overlap: tuple[str, ...]
    marginal_c: RDistribution
    marginal_d: RDistribution

    def describe(self) -> str:
        return (
            f"{{{','.join(self.context_c)}}} and {{{','.join(self.context_d)}}} "
            f"disagree on {{{','.join(self.overlap)}}}"
        )


@dataclass(frozen=True)
class CompatibilityReport:
    compatible: bool
    violations: list[CompatibilityViolation] = field(default_factory=list)


def _context_key(scenario: MeasurementScenario, context: ContextKey) -> tuple[str, ...]:
    names = context.split(",") if isinstance(context, str) else context
    try:
        return scenario.canonical(names)
    except ScenarioError as e:
        raise ModelError(str(e)) from None


def _row_assignment(scenario, context, key) -> LocalAssignment:
    if isinstance(key, LocalAssignment):
        return key
    labels = key.split(",") if isinstance(key, str) else [str(k) for k in key]
    if len(labels) != len(context):
        raise ModelError(
            f"cell key {key!r} has {len(labels)} outcomes, context {{{','.join(context)}}} "
            f"has {len(context)} variables"
        )
    for variable, label in zip(context, labels):
        if label not in scenario.outcomes[variable]:
            raise ModelError(f"outcome {label!r} is not valid for variable {variable!r}")
    return LocalAssignment(context, tuple(labels))


def new_model(
    scenario: MeasurementScenario,
    rows: Mapping[ContextKey, Union[Sequence, Mapping]],
    semiring: SemiringTag = SemiringTag.NONNEG_RATIONAL,
) -> EmpiricalModel:
    """
    Build an empirical model from raw rows

    Each row is either a list of weights in enumeration order, or a mapping
    from cell keys ("0,1", a tuple of outcomes, or a LocalAssignment) to
    weights. Missing cells have weight 0.

    Args:
        scenario (MeasurementScenario): The scenario
        rows (Mapping): Row per context ("a1,b1" or a tuple of variables)
        semiring (SemiringTag): Semiring of every table

    Returns:
        EmpiricalModel: The model (run validate() to check it)
    """
    tables: dict[tuple[str, ...], RDistribution] = {}
    for context_name, row in rows.items():
        context = _context_key(scenario, context_name)
        if isinstance(row, Mapping):
            cells = {_row_assignment(scenario, context, k): v for k, v in row.items()}
        else:
            assignments = enumerate_assignments(scenario, context)
            if len(row) != len(assignments):
                raise ModelError(
                    f"row for {{{','.join(context)}}} has {len(row)} entries, "
                    f"expected {len(assignments)}"
                )
            cells = dict(zip(assignments, row))
        try:
            tables[context] = new_distribution(semiring, context, cells)
        except DistributionError as e:
            raise ModelError(f"context {','.join(context)}: {e}") from None
    return EmpiricalModel(scenario, semiring, tables)


def validate(model: EmpiricalModel) -> list[ModelViolation]:
    """
    Check every type invariant of a model

    Args:
        model (EmpiricalModel): Model to check

    Returns:
        list: Structured violations, empty when the model is valid
    """
    violations: list[ModelViolation] = []
    scenario = model.scenario
    for context in scenario.contexts:
        if context not in model.tables:
            violations.append(ModelViolation("coverage", context, "no table for maximal context"))
    for key, table in model.tables.items():
        if key not in scenario.contexts:
            violations.append(ModelViolation("context", key, "table for a context that is not maximal"))
        if table.context != key:
            violations.append(
                ModelViolation("context", key, f"table has domain {{{','.join(table.context)}}}")
            )
        if table.semiring is not model.semiring:
            violations.append(
                ModelViolation("semiring", key, f"table is {table.semiring.value}, model is {model.semiring.value}")
            )
        for assignment in table.weights:
            for variable, value in zip(assignment.context, assignment.values):
                if variable not in scenario.outcomes or value not in scenario.outcomes[variable]:
                    violations.append(
                        ModelViolation("outcome", key, f"invalid outcome {value!r} for {variable!r}")
                    )
        problem = table.normalization_violation()
        if problem is not None:
            kind = "support" if table.semiring is SemiringTag.BOOLEAN else "normalization"
            violations.append(ModelViolation(kind, key, problem))
    if violations:
        logger.warning(f"Model validation found {len(violations)} violation(s)")
    return violations


def check_compatibility(model: EmpiricalModel) -> CompatibilityReport:
    """
    Compare the marginals of every pair of tables on their overlap

    Args:
        model (EmpiricalModel): A valid model

    Returns:
        CompatibilityReport: All failing pairs, in context order
    """
    violations = []
    contexts = [c for c in model.scenario.contexts if c in model.tables]
    for first, second in itertools.combinations(contexts, 2):
        overlap = context_overlap(first, second)
        left = marginalize(model.tables[first], overlap)
        right = marginalize(model.tables[second], overlap)
        if left.weights != right.weights:
            violations.append(CompatibilityViolation(first, second, overlap, left, right))
    if violations:
        logger.info(f"Found {len(violations)} incompatible context pair(s)")
    return CompatibilityReport(not violations, violations)


def possibilistic_collapse(model: EmpiricalModel) -> EmpiricalModel:
    """
    Replace every table by its support

    Args:
        model (EmpiricalModel): A rational model

    Returns:
        EmpiricalModel: The boolean model of supports
    """
    if model.semiring is not SemiringTag.NONNEG_RATIONAL:
        raise ModelError("possibilistic collapse needs a rational model")
    return EmpiricalModel(
        model.scenario,
        SemiringTag.BOOLEAN,
        {context: support(table) for context, table in model.tables.items()},
    )


def from_global(scenario: MeasurementScenario, global_dist: RDistribution) -> EmpiricalModel:
    """
    Build the model whose tables are the marginals of a global distribution

    Args:
        scenario (MeasurementScenario): The scenario
        global_dist (RDistribution): Distribution over all of X

    Returns:
        EmpiricalModel: A compatible, non-contextual model
    """
    if global_dist.context != scenario.variables:
        raise ModelError(
            f"global distribution is over {{{','.join(global_dist.context)}}}, "
            f"not over all variables"
        )
    tables = {context: marginalize(global_dist, context) for context in scenario.contexts}
    return EmpiricalModel(scenario, global_dist.semiring, tables)


def mix_models(models: Sequence[EmpiricalModel], weights: Sequence[object]) -> EmpiricalModel:
    """Convex mixture of rational models over the same scenario."""
    if not models:
        raise ModelError("mix_models needs at least one model")
    scenario = models[0].scenario
    for item in models:
        if item.scenario != scenario:
            raise ModelError("cannot mix models over different scenarios")
        if item.semiring is not SemiringTag.NONNEG_RATIONAL:
            raise ModelError("only rational models can be mixed")
    try:
        tables = {
            context: mixture([m.tables[context] for m in models], weights)
            for context in scenario.contexts
        }
    except DistributionError as e:
        raise ModelError(str(e)) from None
    return EmpiricalModel(scenario, SemiringTag.NONNEG_RATIONAL, tables)


def rename_variables(
    model: EmpiricalModel,
    mapping: Mapping[str, str],
    order: Sequence[str] | None = None,
) -> EmpiricalModel:
    """
    Rename variables, optionally fixing the new canonical variable order

    Args:
        model (EmpiricalModel): Source model
        mapping (Mapping[str, str]): Old name to new name (unlisted names are kept)
        order (Sequence[str], optional): New names in the desired order

    Returns:
        EmpiricalModel: The relabeled model
    """
    old = model.scenario
    renamed = {v: mapping.get(v, v) for v in old.variables}
    if len(set(renamed.values())) != len(renamed):
        raise ModelError("variable renaming is not injective")
    variables = list(order) if order is not None else [renamed[v] for v in old.variables]
    if sorted(variables) != sorted(renamed.values()):
        raise ModelError("new variable order does not list exactly the renamed variables")
    scenario = new_scenario(
        variables,
        [[renamed[v] for v in c] for c in old.contexts],
        {renamed[v]: old.outcomes[v] for v in old.variables},
    )
    tables = {}
    for context, table in model.tables.items():
        new_context = scenario.canonical(renamed[v] for v in context)
        cells = {}
        for assignment, value in table.weights.items():
            values = {renamed[v]: x for v, x in zip(assignment.context, assignment.values)}
            cells[LocalAssignment(new_context, tuple(values[v] for v in new_context))] = value
        tables[new_context] = RDistribution(table.semiring, new_context, cells)
    return EmpiricalModel(scenario, model.semiring, tables)


def model_to_json(model: EmpiricalModel) -> dict:
    """
    Serialize a model to the model JSON object

    Args:
        model (EmpiricalModel): The model

    Returns:
        dict: JSON-ready object with canonical ordering throughout
    """
    tables = {}
    for context in model.scenario.contexts:
        if context not in model.tables:
            continue
        table = model.tables[context]
        tables[",".join(context)] = {
            assignment.key: model.semiring.format(value)
            for assignment, value in table.sorted_items(model.scenario)
        }
    return {
        "scenario": scenario_to_json(model.scenario),
        "semiring": model.semiring.value,
        "tables": tables,
    }


def model_from_json(data: Mapping) -> EmpiricalModel:
    """
    Parse the model JSON object

    Args:
        data (Mapping): Object with "scenario", "semiring" and "tables"

    Returns:
        EmpiricalModel: The parsed model (not yet validated)
    """
    if not isinstance(data, Mapping):
        raise ModelError("model file must contain a JSON object")
    for name in ("scenario", "semiring", "tables"):
        if name not in data:
            raise ModelError(f"model object is missing field '{name}'")
    try:
        semiring = SemiringTag(data["semiring"])
    except ValueError:
        raise ModelError(f"unknown semiring tag {data['semiring']!r}") from None
    try:
        scenario = scenario_from_json(data["scenario"])
    except ScenarioError as e:
        raise ModelError(f"invalid scenario: {e}") from None
    if not isinstance(data["tables"], Mapping):
        raise ModelError("model 'tables' must be an object")
    for key, row in data["tables"].items():
        if not isinstance(row, Mapping):
            raise ModelError(f"table for context {key!r} must be an object")
    return new_model(scenario, data["tables"], semiring)


def to_frame(model: EmpiricalModel) -> pd.DataFrame:
    """
    Render a model as a table: one row per context, one column per joint outcome

    Args:
        model (EmpiricalModel): The model

    Returns:
        pandas.DataFrame: Cells as exact strings ("3/8") or 0/1 for boolean models
    """
    rows = {}
    columns: list[str] = []
    for context in model.scenario.contexts:
        row = {}
        table = model.tables.get(context)
        for assignment in enumerate_assignments(model.scenario, context):
            if assignment.key not in columns:
                columns.append(assignment.key)
            value = table.weight(assignment) if table is not None else model.semiring.zero
            row[assignment.key] = model.semiring.format(value)
        rows[",".join(context)] = row
    frame = pd.DataFrame.from_dict(rows, orient="index").reindex(columns=columns)
    frame = frame.fillna("")
    frame.index.name = "context"
    return frame
