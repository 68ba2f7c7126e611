"""
Corpus Module for the Contextuality Toolkit

This module ships the canonical example models (Bell, Hardy, PR box, GHZ,
Specker triangle, Liar cycles) and boolean-equation systems.
"""

from .core import (
    BELL_PROPOSITIONS,
    BELL_SETTINGS,
    BUILTIN_NAMES,
    GHZ_SETTINGS,
    BooleanEquation,
    CorpusError,
    bell_scenario,
    builtin,
    derive_bell_settings,
    drop_context,
    equation_system,
    ghz_model,
    ghz_scenario,
    hardy_model,
    liar_cycle,
)

__version__ = "1.0.0"
__author__ = "Contextuality Toolkit"
__all__ = [
    "BELL_PROPOSITIONS",
    "BELL_SETTINGS",
    "BUILTIN_NAMES",
    "GHZ_SETTINGS",
    "BooleanEquation",
    "CorpusError",
    "bell_scenario",
    "builtin",
    "derive_bell_settings",
    "drop_context",
    "equation_system",
    "ghz_model",
    "ghz_scenario",
    "hardy_model",
    "liar_cycle",
]
