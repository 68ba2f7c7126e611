"""
Logical Bell Module for the Contextuality Toolkit

This module provides propositions over measurement outcomes and the logical
Bell inequality: for jointly unsatisfiable propositions, sum(p_i) <= N - 1.
"""

from .core import (
    BellResult,
    LogicalBellError,
    Proposition,
    canonical_support_propositions,
    eval_probability,
    jointly_satisfiable,
    logical_bell,
    new_proposition,
    parse_proposition,
)
from .formula import Atom, Binary, Constant, Not, PropositionError, format_formula, parse_formula

__version__ = "1.0.0"
__author__ = "Contextuality Toolkit"
__all__ = [
    "Atom",
    "Binary",
    "Constant",
    "Not",
    "BellResult",
    "LogicalBellError",
    "Proposition",
    "PropositionError",
    "canonical_support_propositions",
    "eval_probability",
    "format_formula",
    "jointly_satisfiable",
    "logical_bell",
    "new_proposition",
    "parse_formula",
    "parse_proposition",
]
