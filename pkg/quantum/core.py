"""
Core Quantum functionality

This module generates empirical models from small pure states measured in
the XY plane of the Bloch sphere. Floating-point complex arithmetic stays
inside this module; every generated cell is snapped to an exact rational.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from distribution.core import SemiringTag
from model.core import EmpiricalModel, new_model
from scenario.core import LocalAssignment, MeasurementScenario, enumerate_assignments

# Set up logging
logger = logging.getLogger(__name__)

NORM_TOL = 1e-12
DEFAULT_MAX_DENOMINATOR = 64
DEFAULT_SNAP_TOL = 1e-9


class QuantumError(ValueError):
    """Raised for invalid states, settings or scenarios in model generation."""


class SnapError(QuantumError):
    """Raised when a Born probability has no nearby small-denominator rational."""

    def __init__(self, context: tuple[str, ...], assignment: LocalAssignment, value: float):
        self.context = context
        self.assignment = assignment
        self.value = value
        super().__init__(
            f"cell {assignment} of context {{{','.join(context)}}} has probability {value!r}, "
            f"which does not snap to a rational"
        )


@dataclass(frozen=True, eq=False)
class StateVector:
    """A pure n-qubit state; qubit 0 is the most significant bit of the index."""

    qubit_count: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if amplitudes.shape != (2**self.qubit_count,):
            raise QuantumError(
                f"a {self.qubit_count}-qubit state needs {2**self.qubit_count} amplitudes, "
                f"got {amplitudes.size}"
            )
        norm = float(np.sum(np.abs(amplitudes) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise QuantumError(f"state is not normalized: squared norm {norm!r}")
        object.__setattr__(self, "amplitudes", amplitudes)


@dataclass(frozen=True)
class SettingTable:
    """Per party, the XY-plane angle (radians) of each of its variables."""

    parties: tuple[dict[str, float], ...]

    def __post_init__(self):
        seen: set[str] = set()
        for party in self.parties:
            for variable, angle in party.items():
                if variable in seen:
                    raise QuantumError(f"variable {variable!r} belongs to more than one party")
                if not math.isfinite(angle):
                    raise QuantumError(f"angle for {variable!r} is not finite")
                seen.add(variable)

    def party_of(self, variable: str) -> int:
        for index, party in enumerate(self.parties):
            if variable in party:
                return index
        raise QuantumError(f"variable {variable!r} has no measurement setting")

    def angle(self, variable: str) -> float:
        return self.parties[self.party_of(variable)][variable]


def new_state(amplitudes: Sequence) -> StateVector:
    """
    Build a state from complex amplitudes or [re, im] pairs

    Args:
        amplitudes (Sequence): 2^n amplitudes

    Returns:
        StateVector: The validated state
    """
    values = [complex(a[0], a[1]) if isinstance(a, (list, tuple)) else complex(a) for a in amplitudes]
    count = len(values).bit_length() - 1
    if len(values) == 0 or 2**count != len(values):
        raise QuantumError(f"amplitude count {len(values)} is not a power of two")
    return StateVector(count, np.array(values, dtype=complex))


def bell_state() -> StateVector:
    """(|00> + |11>)/sqrt(2)."""
    return ghz_state(2)


def ghz_state(n: int) -> StateVector:
    """(|0...0> + |1...1>)/sqrt(2) on n >= 2 qubits."""
    if n < 2:
        raise QuantumError("GHZ states need at least two qubits")
    amplitudes = np.zeros(2**n, dtype=complex)
    amplitudes[0] = amplitudes[-1] = 1 / math.sqrt(2)
    return StateVector(n, amplitudes)


def basis_state(bits: Sequence[int]) -> StateVector:
    """The computational basis state |b_0 b_1 ... b_{n-1}>."""
    if not bits:
        raise QuantumError("basis state needs at least one qubit")
    amplitudes = np.zeros(2 ** len(bits), dtype=complex)
    amplitudes[int("".join(str(int(b)) for b in bits), 2)] = 1
    return StateVector(len(bits), amplitudes)


def _basis_vector(angle: float, outcome: int) -> np.ndarray:
    # outcome 0: (|0> + e^{i phi}|1>)/sqrt(2); outcome 1: (|0> - e^{i phi}|1>)/sqrt(2)
    sign = 1 if outcome == 0 else -1
    return np.array([1, sign * np.exp(1j * angle)], dtype=complex) / math.sqrt(2)


def born_probability(state: StateVector, chosen_settings: Sequence[float], joint_outcome: Sequence[int]) -> float:
    """
    Probability of a joint outcome for one XY-plane setting per party

    Args:
        state (StateVector): The state
        chosen_settings (Sequence[float]): Angle per party
        joint_outcome (Sequence[int]): Outcome bit per party

    Returns:
        float: Squared magnitude of the projected amplitude
    """
    n = state.qubit_count
    if len(chosen_settings) != n or len(joint_outcome) != n:
        raise QuantumError(f"need one setting and one outcome for each of the {n} parties")
    bra = np.ones(1, dtype=complex)
    for angle, outcome in zip(chosen_settings, joint_outcome):
        if outcome not in (0, 1):
            raise QuantumError(f"outcome must be 0 or 1, got {outcome!r}")
        bra = np.kron(bra, _basis_vector(angle, outcome))
    amplitude = np.vdot(bra, state.amplitudes)
    return float(abs(amplitude) ** 2)


def rationalize(value: float, max_denominator: int = DEFAULT_MAX_DENOMINATOR, tol: float = DEFAULT_SNAP_TOL) -> Fraction | None:
    """
    Nearest rational with bounded denominator, if it lies within tol

    Args:
        value (float): Finite float
        max_denominator (int): Largest allowed denominator
        tol (float): Maximum allowed distance

    Returns:
        Fraction: The snapped value, or None
    """
    if not math.isfinite(value):
        return None
    candidate = Fraction(value).limit_denominator(max_denominator)
    if abs(value - candidate.numerator / candidate.denominator) <= tol:
        return candidate
    return None


def born_table(
    state: StateVector, setting_table: SettingTable, scenario: MeasurementScenario
) -> dict[tuple[str, ...], list[tuple[LocalAssignment, float]]]:
    """
    Raw Born probabilities for every cell of every context

    Args:
        state (StateVector): The state
        setting_table (SettingTable): Angles per party
        scenario (MeasurementScenario): Contexts picking one variable per party

    Returns:
        dict: Per context, (assignment, probability) in enumeration order
    """
    n = state.qubit_count
    if len(setting_table.parties) != n:
        raise QuantumError(f"setting table has {len(setting_table.parties)} parties, state has {n} qubits")
    table = {}
    for context in scenario.contexts:
        parties = [setting_table.party_of(v) for v in context]
        if sorted(parties) != list(range(n)):
            raise QuantumError(
                f"context {{{','.join(context)}}} does not pick exactly one variable per party"
            )
        for variable in context:
            if set(scenario.outcomes[variable]) != {"0", "1"}:
                raise QuantumError(f"variable {variable!r} must have outcomes 0 and 1")
        cells = []
        for assignment in enumerate_assignments(scenario, context):
            angles = [0.0] * n
            bits = [0] * n
            for variable, value, party in zip(context, assignment.values, parties):
                angles[party] = setting_table.angle(variable)
                bits[party] = int(value)
            cells.append((assignment, born_probability(state, angles, bits)))
        total = sum(p for _, p in cells)
        if abs(total - 1.0) > 4 * NORM_TOL:
            raise QuantumError(f"context {{{','.join(context)}}} probabilities sum to {total!r}")
        table[context] = cells
    return table


def generate_model(
    state: StateVector,
    setting_table: SettingTable,
    scenario: MeasurementScenario,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
    snap_tol: float = DEFAULT_SNAP_TOL,
) -> EmpiricalModel:
    """
    Empirical model of a state under XY-plane measurements, snapped to rationals

    Args:
        state (StateVector): The state
        setting_table (SettingTable): Angles per party
        scenario (MeasurementScenario): Contexts picking one variable per party
        max_denominator (int): Largest denominator when snapping
        snap_tol (float): Largest distance when snapping

    Returns:
        EmpiricalModel: An exact rational model
    """
    rows = {}
    for context, cells in born_table(state, setting_table, scenario).items():
        row = {}
        for assignment, probability in cells:
            snapped = rationalize(probability, max_denominator, snap_tol)
            if snapped is None:
                logger.error(f"Could not snap {probability!r} in context {context}")
                raise SnapError(context, assignment, probability)
            row[assignment] = snapped
        if sum(row.values()) != 1:
            raise QuantumError(f"snapped row for {{{','.join(context)}}} does not sum to 1")
        rows[context] = row
    logger.info(f"Generated model with {len(rows)} contexts from a {state.qubit_count}-qubit state")
    return new_model(scenario, rows, SemiringTag.NONNEG_RATIONAL)


def load_state(spec: str) -> StateVector:
    """
    Resolve a state spec: "bell", "ghz:N", or a JSON file of [re, im] pairs

    Args:
        spec (str): The spec

    Returns:
        StateVector: The state
    """
    if spec == "bell":
        return bell_state()
    if spec.startswith("ghz:"):
        try:
            return ghz_state(int(spec[4:]))
        except ValueError:
            raise QuantumError(f"malformed GHZ spec {spec!r}") from None
    path = Path(spec)
    if not path.exists():
        raise QuantumError(f"unknown state {spec!r}: not a named state or a file")
    try:
        return new_state(json.loads(path.read_text(encoding="utf-8")))
    except (json.JSONDecodeError, TypeError, IndexError) as e:
        raise QuantumError(f"cannot read amplitudes from {spec}: {e}") from None


def settings_from_json(data: Sequence[Mapping[str, object]]) -> SettingTable:
    """Parse a list (one object per party) of variable-to-angle entries."""
    if not isinstance(data, list):
        raise QuantumError("angles file must contain a list with one object per party")
    parties = []
    for party in data:
        if not isinstance(party, Mapping):
            raise QuantumError("each party entry must map variables to angles")
        try:
            parties.append({str(k): float(v) for k, v in party.items()})
        except (TypeError, ValueError) as e:
            raise QuantumError(f"invalid angle: {e}") from None
    return SettingTable(tuple(parties))
