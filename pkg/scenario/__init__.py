"""
Scenario Module for the Contextuality Toolkit

This module defines measurement scenarios, local and global assignments,
and the restriction maps between them.
"""

from .core import (
    GlobalAssignment,
    LocalAssignment,
    MeasurementScenario,
    ScenarioError,
    context_overlap,
    enumerate_assignments,
    new_scenario,
    restrict_assignment,
    scenario_from_json,
    scenario_to_json,
)

__version__ = "1.0.0"
__author__ = "Contextuality Toolkit"
__all__ = [
    "GlobalAssignment",
    "LocalAssignment",
    "MeasurementScenario",
    "ScenarioError",
    "context_overlap",
    "enumerate_assignments",
    "new_scenario",
    "restrict_assignment",
    "scenario_from_json",
    "scenario_to_json",
]
