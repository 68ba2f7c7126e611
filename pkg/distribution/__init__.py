"""
Distribution Module for the Contextuality Toolkit

This module provides semiring-valued distributions of finite support,
with marginalization, push-forward and the support map.
"""

from .core import (
    DistributionError,
    RDistribution,
    SemiringTag,
    format_fraction,
    marginalize,
    mixture,
    new_distribution,
    parse_fraction,
    point_mass,
    push_forward,
    support,
    uniform,
)

__version__ = "1.0.0"
__author__ = "Contextuality Toolkit"
__all__ = [
    "DistributionError",
    "RDistribution",
    "SemiringTag",
    "format_fraction",
    "marginalize",
    "mixture",
    "new_distribution",
    "parse_fraction",
    "point_mass",
    "push_forward",
    "support",
    "uniform",
]
