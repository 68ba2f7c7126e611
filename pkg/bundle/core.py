"""
Core Bundle functionality

This module builds bundle diagrams for rank-2 scenarios, searches them for
univocal closed paths, propagates values along the base cycle and renders
diagrams as Graphviz DOT text.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from analysis.core import first_consistent_global
from distribution.core import RDistribution, SemiringTag
from model.core import EmpiricalModel, possibilistic_collapse
from scenario.core import GlobalAssignment, LocalAssignment, ScenarioError, new_scenario

# Set up logging
logger = logging.getLogger(__name__)

Edge = tuple[str, str]
Highlight = Union[LocalAssignment, str]


class BundleError(ValueError):
    """Raised for non rank-2 scenarios, disconnected bases and unknown edges."""


@dataclass(frozen=True)
class BundleDiagram:
    """
    Base graph of variables, a fibre of outcomes above each vertex, and an
    edge between outcomes in adjacent fibres wherever the joint outcome is
    possible.
    """

    base_vertices: tuple[str, ...]
    base_edges: tuple[Edge, ...]
    fibres: dict[str, tuple[str, ...]]
    bundle_edges: dict[Edge, tuple[tuple[str, str], ...]]

    @property
    def edge_count(self) -> int:
        return sum(len(pairs) for pairs in self.bundle_edges.values())

    def base_edge(self, variables: Iterable[str]) -> Edge:
        """The base edge joining two variables, in diagram orientation."""
        names = set(variables)
        for edge in self.base_edges:
            if set(edge) == names:
                return edge
        raise BundleError(f"no base edge joins {sorted(names)}")

    def neighbours(self, variable: str) -> list[str]:
        """Adjacent base vertices in base-edge order."""
        return [edge[1] if edge[0] == variable else edge[0] for edge in self.base_edges if variable in edge]


def build_bundle(model: EmpiricalModel) -> BundleDiagram:
    """
    Build the bundle diagram of a rank-2 model

    Args:
        model (EmpiricalModel): Boolean model, or a rational one to collapse

    Returns:
        BundleDiagram: The diagram, base edges in context order
    """
    if model.semiring is SemiringTag.NONNEG_RATIONAL:
        model = possibilistic_collapse(model)
    scenario = model.scenario
    if any(len(context) != 2 for context in scenario.contexts):
        logger.error("Bundle requested for a scenario with a context of size other than 2")
        raise BundleError("bundle view requires rank-2 scenarios")
    bundle_edges = {}
    for context in scenario.contexts:
        table = model.table(context)
        bundle_edges[context] = tuple((s.values[0], s.values[1]) for s, _ in table.sorted_items(scenario))
    diagram = BundleDiagram(scenario.variables, scenario.contexts, dict(scenario.outcomes), bundle_edges)
    logger.info(f"Built bundle with {len(diagram.base_edges)} base edges and {diagram.edge_count} bundle edges")
    return diagram


def _as_model(diagram: BundleDiagram) -> EmpiricalModel:
    scenario = new_scenario(diagram.base_vertices, diagram.base_edges, diagram.fibres)
    tables = {}
    for edge, pairs in diagram.bundle_edges.items():
        context = scenario.canonical(edge)
        cells = {}
        for pair in pairs:
            values = dict(zip(edge, pair))
            cells[LocalAssignment(context, tuple(values[v] for v in context))] = 1
        tables[context] = RDistribution(SemiringTag.BOOLEAN, context, cells)
    return EmpiricalModel(scenario, SemiringTag.BOOLEAN, tables)


def _require_connected(diagram: BundleDiagram) -> None:
    start = diagram.base_vertices[0]
    seen = {start}
    queue = deque([start])
    while queue:
        for other in diagram.neighbours(queue.popleft()):
            if other not in seen:
                seen.add(other)
                queue.append(other)
    if len(seen) != len(diagram.base_vertices):
        missing = [v for v in diagram.base_vertices if v not in seen]
        raise BundleError(f"base graph is disconnected: {', '.join(missing)} unreachable from {start}")


def find_univocal_cycle(diagram: BundleDiagram) -> GlobalAssignment | None:
    """
    Find a closed path through every fibre exactly once

    Args:
        diagram (BundleDiagram): Diagram over a connected base

    Returns:
        GlobalAssignment: The path as one value per variable, or None
    """
    _require_connected(diagram)
    found = first_consistent_global(_as_model(diagram))
    if found is None:
        logger.info("Bundle has no univocal closed path")
    return found


def extend_edge(diagram: BundleDiagram, base_edge: Sequence[str], outcome_pair: Sequence[str]) -> GlobalAssignment | None:
    """
    Find a univocal closed path through a given bundle edge

    Args:
        diagram (BundleDiagram): Diagram over a connected base
        base_edge (Sequence[str]): The two variables
        outcome_pair (Sequence[str]): Their outcomes, aligned with base_edge

    Returns:
        GlobalAssignment: A path through the edge, or None
    """
    if len(base_edge) != 2 or len(outcome_pair) != 2:
        raise BundleError("an edge is given by two variables and two outcomes")
    edge = diagram.base_edge(base_edge)
    values = dict(zip(base_edge, outcome_pair))
    pair = (values[edge[0]], values[edge[1]])
    if pair not in diagram.bundle_edges[edge]:
        raise BundleError(f"{edge[0]}={pair[0]},{edge[1]}={pair[1]} is not a bundle edge")
    _require_connected(diagram)
    return first_consistent_global(_as_model(diagram), values)


def propagate_values(diagram: BundleDiagram, variable: str, outcome: str) -> list[tuple[str, str]]:
    """
    Follow forced values around the base cycle from a seed

    The walk leaves the seed along its first base edge and stops when it
    comes back to the seed variable, or when a value is not forced.

    Args:
        diagram (BundleDiagram): Diagram whose base is a cycle
        variable (str): Seed variable
        outcome (str): Seed value

    Returns:
        list: (variable, value) steps, starting with the seed
    """
    if variable not in diagram.fibres:
        raise BundleError(f"unknown variable {variable!r}")
    if outcome not in diagram.fibres[variable]:
        raise BundleError(f"{outcome!r} is not in the fibre of {variable!r}")
    if any(len(diagram.neighbours(v)) != 2 for v in diagram.base_vertices):
        raise BundleError("value propagation needs a base that is a single cycle")

    trace = [(variable, outcome)]
    previous, current, value = None, variable, outcome
    for _ in range(len(diagram.base_vertices)):
        step = next(v for v in diagram.neighbours(current) if v != previous)
        edge = diagram.base_edge((current, step))
        forced = sorted(
            {pair[edge.index(step)] for pair in diagram.bundle_edges[edge] if pair[edge.index(current)] == value}
        )
        if len(forced) != 1:
            logger.warning(f"Value of {step} is not forced by {current}={value}")
            break
        previous, current, value = current, step, forced[0]
        trace.append((current, value))
        if current == variable:
            break
    return trace


def _quote(text: str) -> str:
    """A double-quoted DOT ID with quotes and backslashes escaped."""
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _node(variable: str, outcome: str) -> str:
    return _quote(f"{variable}_{outcome}")


class DotRenderer:
    """
    Renders bundle diagrams as Graphviz DOT text
    """

    def __init__(self, highlight_width: int = 3):
        self.highlight_width = highlight_width
        logger.info("DotRenderer initialized")

    def _highlighted_edges(self, diagram: BundleDiagram, highlights: Iterable[Highlight]) -> set[tuple[Edge, tuple[str, str]]]:
        marked = set()
        for item in highlights:
            if isinstance(item, str):
                item = parse_highlight(item)
            if len(item.context) == 2:
                edges = [diagram.base_edge(item.context)]
            elif set(item.context) == set(diagram.base_vertices):
                edges = list(diagram.base_edges)
            else:
                raise BundleError(f"highlight {item} is neither a bundle edge nor a path")
            for edge in edges:
                pair = (item[edge[0]], item[edge[1]])
                if pair not in diagram.bundle_edges[edge]:
                    raise BundleError(f"{edge[0]}={pair[0]},{edge[1]}={pair[1]} is not a bundle edge")
                marked.add((edge, pair))
        return marked

    def render(self, diagram: BundleDiagram, highlights: Iterable[Highlight] = ()) -> str:
        """
        Render a diagram

        Args:
            diagram (BundleDiagram): The diagram
            highlights (Iterable): Bundle edges ("a1=0,b1=0" or LocalAssignment)
                or whole univocal paths (GlobalAssignment) to draw thick

        Returns:
            str: DOT text, identical for identical inputs
        """
        try:
            marked = self._highlighted_edges(diagram, highlights)
        except (KeyError, ScenarioError) as e:
            raise BundleError(f"highlight does not name a bundle edge: {e}") from None

        lines = ["graph bundle {", "  rankdir=BT;", "  node [shape=circle];"]
        lines.append("  subgraph base {")
        for variable in diagram.base_vertices:
            lines.append(f"    {_quote('base_' + variable)} [label={_quote(variable)}, shape=box];")
        for u, v in diagram.base_edges:
            lines.append(f"    {_quote('base_' + u)} -- {_quote('base_' + v)} [style=dashed];")
        lines.append("  }")
        for variable in diagram.base_vertices:
            lines.append(f"  subgraph {_quote('cluster_' + variable)} {{")
            lines.append(f"    label={_quote(variable)};")
            for outcome in diagram.fibres[variable]:
                lines.append(f"    {_node(variable, outcome)} [label={_quote(outcome)}];")
            lines.append("  }")
        for edge in diagram.base_edges:
            u, v = edge
            for pair in diagram.bundle_edges[edge]:
                style = f" [penwidth={self.highlight_width}]" if (edge, pair) in marked else ""
                lines.append(f"  {_node(u, pair[0])} -- {_node(v, pair[1])}{style};")
        lines.append("}")
        logger.info(f"Rendered DOT with {diagram.edge_count} bundle edges, {len(marked)} highlighted")
        return "\n".join(lines) + "\n"


def parse_highlight(text: str) -> LocalAssignment:
    """Parse "a1=0,b1=0" into an assignment over the named variables."""
    pairs = []
    for part in text.split(","):
        name, sep, value = part.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise BundleError(f"malformed highlight {text!r}; expected var=outcome,var=outcome")
        pairs.append((name.strip(), value.strip()))
    try:
        return LocalAssignment(tuple(n for n, _ in pairs), tuple(v for _, v in pairs))
    except ScenarioError as e:
        raise BundleError(str(e)) from None


def emit_dot(diagram: BundleDiagram, highlights: Iterable[Highlight] = ()) -> str:
    """
    Main function to render a bundle diagram as DOT

    Args:
        diagram (BundleDiagram): The diagram
        highlights (Iterable): Edges or paths to highlight

    Returns:
        str: DOT text
    """
    return DotRenderer().render(diagram, highlights)
