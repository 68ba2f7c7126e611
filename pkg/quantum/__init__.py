"""
Quantum Module for the Contextuality Toolkit

This module generates empirical models from pure states and XY-plane
measurements via the Born rule, snapping probabilities to exact rationals.
"""

from .core import (
    QuantumError,
    SettingTable,
    SnapError,
    StateVector,
    basis_state,
    bell_state,
    born_probability,
    born_table,
    generate_model,
    ghz_state,
    load_state,
    new_state,
    rationalize,
    settings_from_json,
)

__version__ = "1.0.0"
__author__ = "Contextuality Toolkit"
__all__ = [
    "QuantumError",
    "SettingTable",
    "SnapError",
    "StateVector",
    "basis_state",
    "bell_state",
    "born_probability",
    "born_table",
    "generate_model",
    "ghz_state",
    "load_state",
    "new_state",
    "rationalize",
    "settings_from_json",
]
