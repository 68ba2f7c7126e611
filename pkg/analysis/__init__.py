"""
Analysis Module for the Contextuality Toolkit

This module decides probabilistic, possibilistic and strong contextuality
of empirical models and finds signed global sections.
"""

from .core import (
    AnalysisError,
    ColumnCapExceeded,
    ContextualityReport,
    IncidenceSystem,
    build_incidence,
    classify,
    column_cap,
    compatible_families,
    consistent_globals,
    family_of,
    first_consistent_global,
    possibilistic_contextuality,
    probabilistic_global_section,
    signed_global_section,
    strong_contextuality,
    verify_global_section,
)

__version__ = "1.0.0"
__author__ = "Contextuality Toolkit"
__all__ = [
    "AnalysisError",
    "ColumnCapExceeded",
    "ContextualityReport",
    "IncidenceSystem",
    "build_incidence",
    "classify",
    "column_cap",
    "compatible_families",
    "consistent_globals",
    "family_of",
    "first_consistent_global",
    "possibilistic_contextuality",
    "probabilistic_global_section",
    "signed_global_section",
    "strong_contextuality",
    "verify_global_section",
]
