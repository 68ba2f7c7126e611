"""
Bundle Module for the Contextuality Toolkit

This module draws rank-2 empirical models as bundle diagrams, finds
univocal closed paths and emits Graphviz DOT.
"""

from .core import (
    BundleDiagram,
    BundleError,
    DotRenderer,
    build_bundle,
    emit_dot,
    extend_edge,
    find_univocal_cycle,
    parse_highlight,
    propagate_values,
)

__version__ = "1.0.0"
__author__ = "Contextuality Toolkit"
__all__ = [
    "BundleDiagram",
    "BundleError",
    "DotRenderer",
    "build_bundle",
    "emit_dot",
    "extend_edge",
    "find_univocal_cycle",
    "parse_highlight",
    "propagate_values",
]
