"""
Core Corpus functionality

This module builds the canonical example models: the Bell table, the Hardy
and PR supports, the GHZ support, the Specker triangle and Liar cycles as
systems of boolean equations, plus submodel extraction.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from analysis.core import consistent_globals
from distribution.core import RDistribution, SemiringTag
from model.core import (
    EmpiricalModel,
    from_global,
    mix_models,
    new_model,
    possibilistic_collapse,
)
from quantum.core import SettingTable, bell_state, generate_model, ghz_state
from scenario.core import LocalAssignment, ScenarioError, new_scenario

# Set up logging
logger = logging.getLogger(__name__)

BINARY = ("0", "1")

BELL_VARIABLES = ("a1", "a2", "b1", "b2")
BELL_CONTEXTS = (("a1", "b1"), ("a1", "b2"), ("a2", "b1"), ("a2", "b2"))

# Rows in enumeration order (0,0),(1,0),(0,1),(1,1).
BELL_TABLE = {
    "a1,b1": ["1/2", 0, 0, "1/2"],
    "a1,b2": ["3/8", "1/8", "1/8", "3/8"],
    "a2,b1": ["3/8", "1/8", "1/8", "3/8"],
    "a2,b2": ["1/8", "3/8", "3/8", "1/8"],
}

HARDY_TABLE = {
    "a1,b1": [1, 1, 1, 1],
    "a1,b2": [0, 1, 1, 1],
    "a2,b1": [0, 1, 1, 1],
    "a2,b2": [1, 1, 1, 0],
}

PR_TABLE = {
    "a1,b1": [1, 0, 0, 1],
    "a1,b2": [1, 0, 0, 1],
    "a2,b1": [1, 0, 0, 1],
    "a2,b2": [0, 1, 1, 0],
}

# The PR box with the roles of a1b1 and a2b2 swapped; mixed with local
# models it yields exactly the Hardy support.
PR_PRIME_TABLE = {
    "a1,b1": ["1/2", 0, 0, "1/2"],
    "a1,b2": [0, "1/2", "1/2", 0],
    "a2,b1": [0, "1/2", "1/2", 0],
    "a2,b2": [0, "1/2", "1/2", 0],
}

BELL_PROPOSITIONS = (
    "a1=0 <-> b1=0",
    "a1=0 <-> b2=0",
    "a2=0 <-> b1=0",
    "a2=0 (+) b2=0",
)

# Derived once by derive_bell_settings(); pinned here.
BELL_SETTINGS = SettingTable(({"a1": 0.0, "a2": math.pi / 3}, {"b1": 0.0, "b2": math.pi / 3}))

GHZ_VARIABLES = ("a1", "a2", "b1", "b2", "c1", "c2")
# XXX, XYY, YXY, YYX
GHZ_CONTEXTS = (("a1", "b1", "c1"), ("a1", "b2", "c2"), ("a2", "b1", "c2"), ("a2", "b2", "c1"))
GHZ_SETTINGS = SettingTable(
    (
        {"a1": 0.0, "a2": math.pi / 2},
        {"b1": 0.0, "b2": math.pi / 2},
        {"c1": 0.0, "c2": math.pi / 2},
    )
)

BUILTIN_NAMES = ("bell", "hardy", "pr", "ghz", "specker", "liar:N")


class CorpusError(ValueError):
    """Raised for unknown builtins and malformed equation systems."""


@dataclass(frozen=True)
class BooleanEquation:
    """x = y, or x = not y when negated."""

    left: str
    right: str
    negated: bool = False

    def __post_init__(self):
        if self.left == self.right:
            raise CorpusError(f"equation relates {self.left!r} to itself")

    def allowed(self) -> set[tuple[str, str]]:
        """Satisfying (left, right) value pairs."""
        if self.negated:
            return {("0", "1"), ("1", "0")}
        return {("0", "0"), ("1", "1")}

    def __str__(self) -> str:
        return f"{self.left} = {'!' if self.negated else ''}{self.right}"


def bell_scenario():
    return new_scenario(BELL_VARIABLES, BELL_CONTEXTS, {v: BINARY for v in BELL_VARIABLES})


def ghz_scenario():
    return new_scenario(GHZ_VARIABLES, GHZ_CONTEXTS, {v: BINARY for v in GHZ_VARIABLES})


def bell_model() -> EmpiricalModel:
    return new_model(bell_scenario(), BELL_TABLE, SemiringTag.NONNEG_RATIONAL)


def hardy_support() -> EmpiricalModel:
    return new_model(bell_scenario(), HARDY_TABLE, SemiringTag.BOOLEAN)


def pr_box() -> EmpiricalModel:
    return new_model(bell_scenario(), PR_TABLE, SemiringTag.BOOLEAN)


def ghz_model() -> EmpiricalModel:
    """The rational GHZ model under X/Y measurements."""
    return generate_model(ghz_state(3), GHZ_SETTINGS, ghz_scenario())


def equation_system(equations: Sequence[BooleanEquation]) -> EmpiricalModel:
    """
    Boolean model with one two-variable context per equation

    Equations over the same pair of variables share a context, whose support
    is the intersection of their satisfying pairs.

    Args:
        equations (Sequence[BooleanEquation]): The equations

    Returns:
        EmpiricalModel: Boolean model over binary variables
    """
    if not equations:
        raise CorpusError("equation system needs at least one equation")
    variables: list[str] = []
    for equation in equations:
        for name in (equation.left, equation.right):
            if name not in variables:
                variables.append(name)
    try:
        scenario = new_scenario(
            variables,
            [(e.left, e.right) for e in equations],
            {v: BINARY for v in variables},
        )
    except ScenarioError as e:
        raise CorpusError(str(e)) from None

    allowed: dict[tuple[str, ...], set[LocalAssignment]] = {}
    for equation in equations:
        context = scenario.canonical((equation.left, equation.right))
        cells = set()
        for left, right in equation.allowed():
            values = {equation.left: left, equation.right: right}
            cells.add(LocalAssignment(context, tuple(values[v] for v in context)))
        allowed[context] = allowed[context] & cells if context in allowed else cells
        if not allowed[context]:
            raise CorpusError(
                f"equations over {{{','.join(context)}}} have no common solution"
            )
    logger.info(f"Built equation system with {len(equations)} equations over {len(variables)} variables")
    return new_model(scenario, {c: {s: 1 for s in cells} for c, cells in allowed.items()}, SemiringTag.BOOLEAN)


def liar_cycle(n: int) -> EmpiricalModel:
    """
    The Liar cycle x1 = x2, ..., x(n-1) = xn, xn = not x1

    Args:
        n (int): Cycle length, at least 3

    Returns:
        EmpiricalModel: A strongly contextual boolean model
    """
    if n < 3:
        raise CorpusError(
            "Liar cycles need n >= 3: shorter cycles put contradictory equations on one context"
        )
    names = [f"x{i}" for i in range(1, n + 1)]
    equations = [BooleanEquation(names[i], names[i + 1]) for i in range(n - 1)]
    equations.append(BooleanEquation(names[-1], names[0], negated=True))
    return equation_system(equations)


def specker_triangle() -> EmpiricalModel:
    return equation_system(
        [
            BooleanEquation("x1", "x2", negated=True),
            BooleanEquation("x2", "x3", negated=True),
            BooleanEquation("x3", "x1", negated=True),
        ]
    )


def drop_context(model: EmpiricalModel, context: Iterable[str]) -> EmpiricalModel:
    """
    Remove one maximal context and any variable left in no context

    Args:
        model (EmpiricalModel): The model
        context (Iterable[str]): A maximal context of the model

    Returns:
        EmpiricalModel: The submodel on the remaining contexts
    """
    old = model.scenario
    try:
        target = old.canonical(context)
    except ScenarioError as e:
        raise CorpusError(str(e)) from None
    if target not in old.contexts:
        raise CorpusError(f"{{{','.join(target)}}} is not a maximal context")
    remaining = [c for c in old.contexts if c != target]
    if not remaining:
        raise CorpusError("cannot drop the last context")
    used = {v for c in remaining for v in c}
    variables = [v for v in old.variables if v in used]
    scenario = new_scenario(variables, remaining, {v: old.outcomes[v] for v in variables})
    tables = {c: model.tables[c] for c in remaining if c in model.tables}
    return EmpiricalModel(scenario, model.semiring, tables)


def derive_bell_settings() -> SettingTable:
    """
    Search the sign choices of the pi/3 settings for the Bell table

    Alice measures a1 at 0 and a2 at +-pi/3, Bob b1 at 0 and b2 at +-pi/3;
    the first choice whose generated model equals the Bell table wins.

    Returns:
        SettingTable: The matching settings
    """
    target = bell_model()
    scenario = target.scenario
    for sign_a in (1, -1):
        for sign_b in (1, -1):
            settings = SettingTable(
                ({"a1": 0.0, "a2": sign_a * math.pi / 3}, {"b1": 0.0, "b2": sign_b * math.pi / 3})
            )
            if generate_model(bell_state(), settings, scenario) == target:
                logger.info(f"Bell settings derived with signs ({sign_a}, {sign_b})")
                return settings
    raise CorpusError("no sign choice reproduces the Bell table")


def hardy_model(
    pr_weight: object = Fraction(1, 2), local_weights: Sequence[object] | None = None
) -> EmpiricalModel:
    """
    A rational no-signalling model whose support is exactly the Hardy table

    Mixes a PR-type box (a1b1 equal; a1b2, a2b1, a2b2 different) with a
    distribution over the global assignments consistent with the Hardy
    support.

    Args:
        pr_weight: Weight of the PR-type box, strictly between 0 and 1
        local_weights (Sequence, optional): Positive weights over the
            consistent global assignments in enumeration order (uniform by default)

    Returns:
        EmpiricalModel: The rational Hardy model
    """
    pr_weight = SemiringTag.NONNEG_RATIONAL.coerce(pr_weight)
    if not 0 < pr_weight < 1:
        raise CorpusError("pr_weight must lie strictly between 0 and 1")
    scenario = bell_scenario()
    globals_ = consistent_globals(hardy_support())
    if local_weights is None:
        local_weights = [Fraction(1, len(globals_))] * len(globals_)
    if len(local_weights) != len(globals_):
        raise CorpusError(f"need {len(globals_)} local weights, got {len(local_weights)}")
    weights = [SemiringTag.NONNEG_RATIONAL.coerce(w) for w in local_weights]
    if any(w == 0 for w in weights) or sum(weights) != 1:
        raise CorpusError("local weights must be positive and sum to 1")
    local = from_global(
        scenario,
        RDistribution(SemiringTag.NONNEG_RATIONAL, scenario.variables, dict(zip(globals_, weights))),
    )
    box = new_model(scenario, PR_PRIME_TABLE, SemiringTag.NONNEG_RATIONAL)
    return mix_models([box, local], [pr_weight, 1 - pr_weight])


def builtin(name: str) -> EmpiricalModel:
    """
    Look up a canonical model by name

    Args:
        name (str): bell, hardy, pr, ghz, specker or liar:N

    Returns:
        EmpiricalModel: The model
    """
    if name.startswith("liar:"):
        try:
            n = int(name[5:])
        except ValueError:
            raise CorpusError(f"malformed Liar cycle length in {name!r}") from None
        return liar_cycle(n)
    constructors = {
        "bell": bell_model,
        "hardy": hardy_support,
        "pr": pr_box,
        "ghz": lambda: possibilistic_collapse(ghz_model()),
        "specker": specker_triangle,
    }
    if name not in constructors:
        raise CorpusError(f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    logger.info(f"Building builtin model {name}")
    return constructors[name]()
