"""
Model Module for the Contextuality Toolkit

This module provides empirical models (one distribution per maximal context),
their validation, no-signalling compatibility checks, the possibilistic
collapse and the JSON wire format.
"""

from .core import (
    CompatibilityReport,
    CompatibilityViolation,
    EmpiricalModel,
    IncompatibleModelError,
    ModelError,
    ModelViolation,
    check_compatibility,
    from_global,
    mix_models,
    model_from_json,
    model_to_json,
    new_model,
    possibilistic_collapse,
    rename_variables,
    to_frame,
    validate,
)

__version__ = "1.0.0"
__author__ = "Contextuality Toolkit"
__all__ = [
    "CompatibilityReport",
    "CompatibilityViolation",
    "EmpiricalModel",
    "IncompatibleModelError",
    "ModelError",
    "ModelViolation",
    "check_compatibility",
    "from_global",
    "mix_models",
    "model_from_json",
    "model_to_json",
    "new_model",
    "possibilistic_collapse",
    "rename_variables",
    "to_frame",
    "validate",
]
