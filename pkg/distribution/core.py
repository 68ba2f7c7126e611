"""
Core Distribution functionality

This module contains the two shipped semirings and the R-distributions of
finite support over the assignments of a context.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

from scenario.core import LocalAssignment, MeasurementScenario, enumerate_assignments, restrict_assignment

# Set up logging
logger = logging.getLogger(__name__)

Weight = Union[Fraction, int]


class DistributionError(ValueError):
    """Raised for malformed distributions or invalid distribution operations."""


class SemiringTag(Enum):
    """The commutative semirings distributions can take values in."""

    NONNEG_RATIONAL = "rational"
    BOOLEAN = "boolean"

    @property
    def zero(self) -> Weight:
        return Fraction(0) if self is SemiringTag.NONNEG_RATIONAL else 0

    @property
    def one(self) -> Weight:
        return Fraction(1) if self is SemiringTag.NONNEG_RATIONAL else 1

    def add(self, a: Weight, b: Weight) -> Weight:
        if self is SemiringTag.BOOLEAN:
            return a | b
        return a + b

    def mul(self, a: Weight, b: Weight) -> Weight:
        if self is SemiringTag.BOOLEAN:
            return a & b
        return a * b

    def sum(self, values: Iterable[Weight]) -> Weight:
        total = self.zero
        for value in values:
            total = self.add(total, value)
        return total

    def coerce(self, value) -> Weight:
        """
        Convert a raw value into this semiring

        Args:
            value: Fraction, int, bool or "p/q" string

        Returns:
            Fraction or int: The value in the semiring's representation
        """
        if self is SemiringTag.BOOLEAN:
            if isinstance(value, bool) or value in (0, 1):
                return int(value)
            raise DistributionError(f"boolean weight must be 0 or 1, got {value!r}")
        if isinstance(value, float):
            raise DistributionError(f"floating point weight {value!r} is not exact; use 'p/q'")
        try:
            number = parse_fraction(value) if isinstance(value, str) else Fraction(value)
        except TypeError:
            raise DistributionError(f"weight {value!r} is not a number or a 'p/q' string") from None
        if number < 0:
            raise DistributionError(f"negative weight {value!r}")
        return number

    def format(self, value: Weight) -> Union[str, int]:
        return int(value) if self is SemiringTag.BOOLEAN else format_fraction(value)


def parse_fraction(text: Union[str, int, Fraction]) -> Fraction:
    """Parse "p/q" or an integer literal into a Fraction."""
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    try:
        numerator, _, denominator = str(text).strip().partition("/")
        return Fraction(int(numerator), int(denominator) if denominator else 1)
    except (ValueError, ZeroDivisionError):
        raise DistributionError(f"invalid rational literal {text!r}") from None


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class RDistribution:
    """
    A finite-support distribution over the assignments of one context.

    Zero weights are never stored.
    """

    semiring: SemiringTag
    context: tuple[str, ...]
    weights: dict[LocalAssignment, Weight]

    def weight(self, assignment: LocalAssignment) -> Weight:
        return self.weights.get(assignment, self.semiring.zero)

    def total(self) -> Weight:
        return self.semiring.sum(self.weights.values())

    @property
    def support_set(self) -> frozenset[LocalAssignment]:
        return frozenset(self.weights)

    def normalization_violation(self) -> str | None:
        """Describe why the distribution is not normalized, or None."""
        if self.semiring is SemiringTag.BOOLEAN:
            if not self.weights:
                return "boolean distribution has empty support"
            return None
        total = self.total()
        if total != 1:
            return f"weights sum to {format_fraction(total)}, not 1"
        return None

    def sorted_items(self, scenario: MeasurementScenario) -> list[tuple[LocalAssignment, Weight]]:
        return sorted(self.weights.items(), key=lambda item: scenario.order_key(item[0]))


def new_distribution(
    semiring: SemiringTag,
    context: Sequence[str],
    weights: Mapping[LocalAssignment, object],
) -> RDistribution:
    """
    Create a distribution, coercing weights and dropping zero entries

    Args:
        semiring (SemiringTag): Value semiring
        context (Sequence[str]): The context, in canonical order
        weights (Mapping): Weight per assignment over the context

    Returns:
        RDistribution: The sparse distribution (normalization is not enforced here)
    """
    context = tuple(context)
    cleaned: dict[LocalAssignment, Weight] = {}
    for assignment, raw in weights.items():
        if assignment.context != context:
            raise DistributionError(
                f"assignment {assignment} does not have domain {{{','.join(context)}}}"
            )
        value = semiring.coerce(raw)
        if value != semiring.zero:
            cleaned[assignment] = semiring.add(cleaned.get(assignment, semiring.zero), value)
    return RDistribution(semiring, context, cleaned)


def point_mass(assignment: LocalAssignment, semiring: SemiringTag = SemiringTag.NONNEG_RATIONAL) -> RDistribution:
    return RDistribution(semiring, assignment.context, {assignment: semiring.one})


def uniform(assignments: Sequence[LocalAssignment]) -> RDistribution:
    """Uniform rational distribution over a nonempty list of assignments."""
    if not assignments:
        raise DistributionError("uniform distribution needs at least one assignment")
    share = Fraction(1, len(assignments))
    return new_distribution(SemiringTag.NONNEG_RATIONAL, assignments[0].context, {a: share for a in assignments})


def marginalize(dist: RDistribution, subcontext: Iterable[str]) -> RDistribution:
    """
    Marginalize a distribution onto a subcontext

    Args:
        dist (RDistribution): Distribution over C
        subcontext (Iterable[str]): Variables D contained in C

    Returns:
        RDistribution: Distribution over D, each weight the semiring sum of its fibre
    """
    names = set(subcontext)
    if not names <= set(dist.context):
        raise DistributionError(
            f"cannot marginalize {{{','.join(dist.context)}}} onto {sorted(names)}"
        )
    target = tuple(v for v in dist.context if v in names)
    ring = dist.semiring
    result: dict[LocalAssignment, Weight] = {}
    for assignment, value in dist.weights.items():
        image = restrict_assignment(assignment, names)
        result[image] = ring.add(result.get(image, ring.zero), value)
    return RDistribution(ring, target, {a: w for a, w in result.items() if w != ring.zero})


def _observed_domain(context: tuple[str, ...], assignments: Iterable[LocalAssignment]) -> list[LocalAssignment]:
    """Every assignment over the context built from labels seen in the given assignments."""
    labels: dict[str, list[str]] = {v: [] for v in context}
    for assignment in assignments:
        if assignment.context != context:
            continue
        for variable, value in zip(assignment.context, assignment.values):
            if value not in labels[variable]:
                labels[variable].append(value)
    return [LocalAssignment(context, values) for values in itertools.product(*(labels[v] for v in context))]


def push_forward(
    dist: RDistribution,
    outcome_relabeling: Union[Mapping[LocalAssignment, LocalAssignment], Callable[[LocalAssignment], LocalAssignment]],
    domain: Iterable[LocalAssignment] | None = None,
    scenario: MeasurementScenario | None = None,
) -> RDistribution:
    """
    Push a distribution forward along a map of assignments

    The relabeling must be total on the domain: the given assignments, else
    O^C of the scenario, else (for a mapping) every assignment built from the
    outcome labels that occur in the mapping and the support.

    Args:
        dist (RDistribution): Source distribution
        outcome_relabeling: Mapping or callable sending assignments to assignments
        domain (Iterable, optional): Full assignment set to check totality on
        scenario (MeasurementScenario, optional): Scenario whose O^C is the domain

    Returns:
        RDistribution: Distribution whose weight at t is the weight of the preimage of t
    """
    if domain is not None:
        domain = list(domain)
    elif scenario is not None:
        domain = enumerate_assignments(scenario, dist.context)
    elif isinstance(outcome_relabeling, Mapping):
        domain = _observed_domain(dist.context, list(outcome_relabeling) + list(dist.weights))
    else:
        domain = []

    if isinstance(outcome_relabeling, Mapping):
        table = outcome_relabeling

        def relabel(assignment):
            if assignment not in table:
                raise DistributionError(f"relabeling is not total: no image for {assignment}")
            return table[assignment]
    else:
        relabel = outcome_relabeling

    images = {}
    for assignment in domain + list(dist.weights):
        image = relabel(assignment)
        if not isinstance(image, LocalAssignment):
            raise DistributionError(f"relabeling is not total: no image for {assignment}")
        images[assignment] = image

    contexts = {image.context for image in images.values()}
    if len(contexts) > 1:
        raise DistributionError("relabeling images do not share one context")
    target = contexts.pop() if contexts else dist.context

    ring = dist.semiring
    result: dict[LocalAssignment, Weight] = {}
    for assignment, value in dist.weights.items():
        image = images[assignment]
        result[image] = ring.add(result.get(image, ring.zero), value)
    return RDistribution(ring, target, result)


def support(dist: RDistribution) -> RDistribution:
    """
    Apply the semiring homomorphism from nonnegative rationals to booleans

    Args:
        dist (RDistribution): A rational distribution

    Returns:
        RDistribution: Boolean distribution with weight 1 exactly on the support
    """
    return RDistribution(SemiringTag.BOOLEAN, dist.context, {a: 1 for a in dist.weights})


def mixture(dists: Sequence[RDistribution], rational_weights: Sequence[object]) -> RDistribution:
    """
    Convex combination of rational distributions over one context

    Args:
        dists (Sequence[RDistribution]): Distributions sharing a context
        rational_weights (Sequence): Mixing weights summing to 1

    Returns:
        RDistribution: The pointwise mixture
    """
    if not dists or len(dists) != len(rational_weights):
        raise DistributionError("mixture needs one weight per distribution")
    ring = SemiringTag.NONNEG_RATIONAL
    coefficients = [ring.coerce(w) for w in rational_weights]
    if sum(coefficients) != 1:
        raise DistributionError(f"mixture weights sum to {format_fraction(sum(coefficients))}, not 1")
    context = dists[0].context
    for dist in dists:
        if dist.context != context:
            raise DistributionError("mixture of distributions over different contexts")
        if dist.semiring is not ring:
            raise DistributionError("mixtures are only defined for rational distributions")
    result: dict[LocalAssignment, Fraction] = {}
    for dist, coefficient in zip(dists, coefficients):
        for assignment, value in dist.weights.items():
            result[assignment] = result.get(assignment, Fraction(0)) + coefficient * value
    return RDistribution(ring, context, {a: w for a, w in result.items() if w != 0})
