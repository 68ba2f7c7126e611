"""
Core Analysis functionality

This module decides contextuality at the three levels: existence of a
probabilistic global section (exact phase-one simplex), extendability of
supported local sections (possibilistic), and existence of any consistent
global assignment (strong). It also finds signed global sections.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

import numpy as np
import pandas as pd

from distribution.core import RDistribution, SemiringTag, format_fraction
from model.core import (
    EmpiricalModel,
    IncompatibleModelError,
    check_compatibility,
    possibilistic_collapse,
)
from scenario.core import (
    GlobalAssignment,
    LocalAssignment,
    context_overlap,
    enumerate_assignments,
    restrict_assignment,
)

from .simplex import phase_one, residual, solve_linear_system

# Set up logging
logger = logging.getLogger(__name__)

DEFAULT_COLUMN_CAP = 2**20
ENUMERATION_LIMIT = 2**16
COLUMN_CAP_ENV = "CTX_COLUMN_CAP"


class AnalysisError(ValueError):
    """Raised when an analysis cannot be carried out on the given model."""


class ColumnCapExceeded(AnalysisError):
    def __init__(self, required: int, cap: int):
        self.required = required
        self.cap = cap
        super().__init__(
            f"incidence system needs {required} global assignments, above the cap of {cap} "
            f"(set {COLUMN_CAP_ENV} to raise it)"
        )


def column_cap() -> int:
    """The incidence column cap, overridable through CTX_COLUMN_CAP."""
    raw = os.environ.get(COLUMN_CAP_ENV)
    if raw is None:
        return DEFAULT_COLUMN_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise AnalysisError(f"{COLUMN_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise AnalysisError(f"{COLUMN_CAP_ENV} must be positive")
    return cap


@dataclass(frozen=True)
class IncidenceSystem:
    """
    The marginal equations of a model as a 0/1 matrix.

    Row (C, s) of column g is 1 exactly when g restricted to C is s.
    """

    rows: list[tuple[tuple[str, ...], LocalAssignment]]
    columns: list[GlobalAssignment]
    matrix: np.ndarray
    rhs: list[Fraction]

    def rational_matrix(self) -> list[list[Fraction]]:
        return [[Fraction(int(x)) for x in row] for row in self.matrix]

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(
            self.matrix,
            index=[f"{','.join(c)}:{s.key}" for c, s in self.rows],
            columns=[g.key for g in self.columns],
        )
        frame["rhs"] = [format_fraction(b) for b in self.rhs]
        return frame


@dataclass(frozen=True)
class ContextualityReport:
    probabilistically_contextual: bool
    possibilistically_contextual: bool
    strongly_contextual: bool
    global_section: RDistribution | None
    witness_section: tuple[tuple[str, ...], LocalAssignment] | None
    consistent_global_count: int

    @property
    def level(self) -> str:
        if self.strongly_contextual:
            return "strong"
        if self.possibilistically_contextual:
            return "possibilistic"
        if self.probabilistically_contextual:
            return "probabilistic"
        return "none"

    def to_json(self, model: EmpiricalModel) -> dict:
        section = None
        if self.global_section is not None:
            section = {
                a.key: self.global_section.semiring.format(w)
                for a, w in self.global_section.sorted_items(model.scenario)
            }
        witness = None
        if self.witness_section is not None:
            context, assignment = self.witness_section
            witness = {"context": ",".join(context), "assignment": assignment.key}
        return {
            "level": self.level,
            "probabilistically_contextual": self.probabilistically_contextual,
            "possibilistically_contextual": self.possibilistically_contextual,
            "strongly_contextual": self.strongly_contextual,
            "variables": list(model.scenario.variables),
            "global_section": section,
            "witness_section": witness,
            "consistent_global_count": self.consistent_global_count,
        }


def _require_compatible(model: EmpiricalModel) -> None:
    report = check_compatibility(model)
    if not report.compatible:
        logger.error(f"Model has {len(report.violations)} incompatible context pair(s)")
        raise IncompatibleModelError(report)


def _require_rational(model: EmpiricalModel, operation: str) -> None:
    if model.semiring is not SemiringTag.NONNEG_RATIONAL:
        raise AnalysisError(f"{operation} needs a rational model")


def _as_boolean(model: EmpiricalModel) -> EmpiricalModel:
    if model.semiring is SemiringTag.NONNEG_RATIONAL:
        return possibilistic_collapse(model)
    return model


def build_incidence(model: EmpiricalModel, cap: int | None = None) -> IncidenceSystem:
    """
    Encode the global-section equations of a model

    Args:
        model (EmpiricalModel): A compatible model
        cap (int, optional): Column cap; defaults to column_cap()

    Returns:
        IncidenceSystem: Rows per (context, assignment), columns per global assignment
    """
    scenario = model.scenario
    cap = column_cap() if cap is None else cap
    required = scenario.global_count
    if required > cap:
        logger.error(f"Incidence system needs {required} columns, cap is {cap}")
        raise ColumnCapExceeded(required, cap)

    rows = [
        (context, assignment)
        for context in scenario.contexts
        for assignment in enumerate_assignments(scenario, context)
    ]
    row_index = {row: i for i, row in enumerate(rows)}
    columns = enumerate_assignments(scenario, scenario.variables)
    matrix = np.zeros((len(rows), len(columns)), dtype=np.int8)
    for j, column in enumerate(columns):
        for context in scenario.contexts:
            matrix[row_index[(context, restrict_assignment(column, context))], j] = 1
    rhs = [Fraction(model.table(context).weight(assignment)) for context, assignment in rows]
    logger.info(f"Built incidence system with {len(rows)} rows and {len(columns)} columns")
    return IncidenceSystem(rows, columns, matrix, rhs)


def probabilistic_global_section(model: EmpiricalModel) -> RDistribution | None:
    """
    Find a probability distribution on O^X marginalizing to every table

    Args:
        model (EmpiricalModel): A compatible rational model

    Returns:
        RDistribution: A global section, or None when the model is contextual
    """
    _require_rational(model, "probabilistic_global_section")
    _require_compatible(model)
    system = build_incidence(model)
    solution = phase_one(system.rational_matrix(), system.rhs)
    if solution is None:
        logger.info("No probabilistic global section: model is contextual")
        return None
    weights = {g: x for g, x in zip(system.columns, solution) if x != 0}
    return RDistribution(SemiringTag.NONNEG_RATIONAL, model.scenario.variables, weights)


def signed_global_section(model: EmpiricalModel) -> dict[GlobalAssignment, Fraction] | None:
    """
    Find a signed solution of the marginal equations

    Args:
        model (EmpiricalModel): A compatible rational model

    Returns:
        dict: Nonzero signed weight per global assignment, or None if the
            linear system is inconsistent
    """
    _require_rational(model, "signed_global_section")
    _require_compatible(model)
    system = build_incidence(model)
    matrix = system.rational_matrix()
    solution = solve_linear_system(matrix, system.rhs)
    if solution is None:
        logger.error("no signed solution: marginal equations are inconsistent")
        return None
    if any(residual(matrix, solution, system.rhs)):
        raise ArithmeticError("signed solution does not satisfy the marginal equations")
    return {g: x for g, x in zip(system.columns, solution) if x != 0}


def verify_global_section(model: EmpiricalModel, weights: Mapping[GlobalAssignment, object]) -> bool:
    """
    Check that (possibly signed) global weights reproduce every table exactly

    Args:
        model (EmpiricalModel): The model
        weights (Mapping): Weight per global assignment

    Returns:
        bool: True when every marginal equals its table
    """
    for context in model.scenario.contexts:
        marginal: dict[LocalAssignment, Fraction] = {}
        for g, w in weights.items():
            s = restrict_assignment(g, context)
            marginal[s] = marginal.get(s, Fraction(0)) + Fraction(w)
        table = model.table(context)
        for s in enumerate_assignments(model.scenario, context):
            if marginal.get(s, Fraction(0)) != Fraction(table.weight(s)):
                return False
    return True


def _search(model: EmpiricalModel, seed: Mapping[str, str] | None = None) -> Iterator[GlobalAssignment]:
    """Depth-first search over variables in canonical order, pruning closed contexts."""
    scenario = model.scenario
    variables = scenario.variables
    seed = dict(seed or {})
    for variable, value in seed.items():
        if variable not in scenario.outcomes:
            raise AnalysisError(f"seed mentions unknown variable {variable!r}")
        if value not in scenario.outcomes[variable]:
            raise AnalysisError(f"seed value {value!r} is not an outcome of {variable!r}")

    position = {v: i for i, v in enumerate(variables)}
    supports = {c: {s.values for s in model.table(c).weights} for c in scenario.contexts}
    closing: dict[str, list[tuple[tuple[str, ...], list[int]]]] = {v: [] for v in variables}
    for context in scenario.contexts:
        closing[context[-1]].append((context, [position[v] for v in context]))
    domains = [[seed[v]] if v in seed else list(scenario.outcomes[v]) for v in variables]

    partial: list[str] = []

    def extend(depth: int) -> Iterator[GlobalAssignment]:
        if depth == len(variables):
            yield LocalAssignment(variables, tuple(partial))
            return
        for value in domains[depth]:
            partial.append(value)
            if all(
                tuple(partial[i] for i in indices) in supports[context]
                for context, indices in closing[variables[depth]]
            ):
                yield from extend(depth + 1)
            partial.pop()

    yield from extend(0)


def first_consistent_global(
    model: EmpiricalModel, seed: Mapping[str, str] | None = None
) -> GlobalAssignment | None:
    """
    First global assignment consistent with every support, optionally extending a seed

    Args:
        model (EmpiricalModel): Model (rational models are collapsed first)
        seed (Mapping, optional): Values some variables must take

    Returns:
        GlobalAssignment: The first consistent global assignment, or None
    """
    return next(_search(_as_boolean(model), seed), None)


def consistent_globals(model: EmpiricalModel, method: str = "auto") -> list[GlobalAssignment]:
    """
    Compute S_e(X), the global assignments consistent with every support

    Args:
        model (EmpiricalModel): Model (rational models are collapsed first)
        method (str): "auto", "enumerate" or "backtrack"; auto enumerates
            when O^X has at most ENUMERATION_LIMIT elements

    Returns:
        list: Consistent global assignments in enumeration order
    """
    model = _as_boolean(model)
    scenario = model.scenario
    if method == "auto":
        method = "enumerate" if scenario.global_count <= ENUMERATION_LIMIT else "backtrack"
    if method == "enumerate":
        supports = {c: model.table(c).support_set for c in scenario.contexts}
        found = [
            g
            for g in enumerate_assignments(scenario, scenario.variables)
            if all(restrict_assignment(g, c) in supports[c] for c in scenario.contexts)
        ]
    elif method == "backtrack":
        found = sorted(_search(model), key=scenario.order_key)
    else:
        raise AnalysisError(f"unknown search method {method!r}")
    logger.info(f"Found {len(found)} consistent global assignment(s) by {method}")
    return found


def possibilistic_contextuality(
    model: EmpiricalModel,
) -> tuple[tuple[str, ...], LocalAssignment] | None:
    """
    Find a supported local section that no consistent global assignment extends

    Args:
        model (EmpiricalModel): Model (rational models are collapsed first)

    Returns:
        tuple: (context, assignment) for the first such section, or None
    """
    model = _as_boolean(model)
    scenario = model.scenario
    globals_ = consistent_globals(model)
    for context in scenario.contexts:
        covered = {restrict_assignment(g, context) for g in globals_}
        for assignment in enumerate_assignments(scenario, context):
            if assignment in model.table(context).weights and assignment not in covered:
                logger.info(f"Section {assignment} over {context} does not extend")
                return context, assignment
    return None


def strong_contextuality(model: EmpiricalModel) -> bool:
    """True when no global assignment is consistent with the supports."""
    return first_consistent_global(model) is None


def family_of(model: EmpiricalModel, assignment: GlobalAssignment) -> dict[tuple[str, ...], LocalAssignment]:
    """The family of local sections {g|_C} induced by a global assignment."""
    return {c: restrict_assignment(assignment, c) for c in model.scenario.contexts}


def compatible_families(model: EmpiricalModel) -> list[dict[tuple[str, ...], LocalAssignment]]:
    """
    Enumerate compatible families {s_C} with s_C in S_e(C)

    Families are built context by context, keeping only choices that agree
    with every earlier choice on the overlap.

    Args:
        model (EmpiricalModel): Model (rational models are collapsed first)

    Returns:
        list: Every compatible family, as a map from context to section
    """
    model = _as_boolean(model)
    scenario = model.scenario
    contexts = list(scenario.contexts)
    options = [
        [s for s in enumerate_assignments(scenario, c) if s in model.table(c).weights]
        for c in contexts
    ]
    families = []
    chosen: list[LocalAssignment] = []

    def extend(depth: int) -> None:
        if depth == len(contexts):
            families.append(dict(zip(contexts, chosen)))
            return
        for candidate in options[depth]:
            if all(
                restrict_assignment(candidate, overlap) == restrict_assignment(previous, overlap)
                for previous in chosen
                for overlap in [context_overlap(candidate.context, previous.context)]
            ):
                chosen.append(candidate)
                extend(depth + 1)
                chosen.pop()

    extend(0)
    return families


def classify(model: EmpiricalModel) -> ContextualityReport:
    """
    Classify a model in the hierarchy probabilistic < possibilistic < strong

    Boolean models are probabilistically contextual exactly when they are
    possibilistically contextual; their global section is the boolean
    distribution on S_e(X).

    Args:
        model (EmpiricalModel): A compatible model

    Returns:
        ContextualityReport: Verdicts at all three levels, with witnesses
    """
    _require_compatible(model)
    possibilistic_model = _as_boolean(model)
    globals_ = consistent_globals(possibilistic_model)
    witness = possibilistic_contextuality(possibilistic_model)
    strong = not globals_

    if model.semiring is SemiringTag.NONNEG_RATIONAL:
        section = probabilistic_global_section(model)
    elif witness is None:
        section = RDistribution(SemiringTag.BOOLEAN, model.scenario.variables, {g: 1 for g in globals_})
    else:
        section = None

    report = ContextualityReport(
        probabilistically_contextual=section is None,
        possibilistically_contextual=witness is not None,
        strongly_contextual=strong,
        global_section=section,
        witness_section=witness,
        consistent_global_count=len(globals_),
    )
    if report.strongly_contextual and not report.possibilistically_contextual:
        raise AnalysisError("strongly contextual model has no possibilistic witness")
    if report.possibilistically_contextual and not report.probabilistically_contextual:
        raise AnalysisError("possibilistically contextual model has a global section")
    logger.info(f"Classified model: contextuality level {report.level}")
    return report