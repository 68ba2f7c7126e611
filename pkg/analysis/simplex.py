"""
Exact linear algebra over the rationals

Phase-one simplex (Bland's rule) for feasibility of Ax = b, x >= 0, and
Gauss-Jordan elimination for a particular solution of Ax = b with x free.
All arithmetic is on fractions.Fraction, so verdicts carry no tolerance.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Sequence

# Set up logging
logger = logging.getLogger(__name__)

Matrix = Sequence[Sequence[Fraction]]


def _pivot(rows: list[list[Fraction]], cost: list[Fraction], row: int, col: int) -> None:
    pivot_row = rows[row]
    value = pivot_row[col]
    if value != 1:
        rows[row] = pivot_row = [entry / value for entry in pivot_row]
    for index, other in enumerate(rows):
        if index == row:
            continue
        factor = other[col]
        if factor != 0:
            rows[index] = [a - factor * b for a, b in zip(other, pivot_row)]
    factor = cost[col]
    if factor != 0:
        cost[:] = [a - factor * b for a, b in zip(cost, pivot_row)]


def phase_one(matrix: Matrix, rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """
    Decide feasibility of Ax = b, x >= 0 with the phase-one simplex method

    One artificial variable per row; the sum of artificials is minimized,
    with Bland's smallest-index rule for entering and leaving variables.

    Args:
        matrix (Matrix): m x n coefficient rows
        rhs (Sequence[Fraction]): Right-hand side of length m

    Returns:
        list: A feasible x of length n, or None if the system is infeasible
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    rows: list[list[Fraction]] = []
    for i, (coefficients, b) in enumerate(zip(matrix, rhs)):
        sign = -1 if b < 0 else 1
        row = [Fraction(sign * a) for a in coefficients]
        row.extend(Fraction(1) if k == i else Fraction(0) for k in range(m))
        row.append(Fraction(sign * b))
        rows.append(row)
    basis = [n + i for i in range(m)]

    cost = [Fraction(0)] * (n + m + 1)
    for row in rows:
        for j in range(n):
            cost[j] -= row[j]
        cost[-1] -= row[-1]

    iterations = 0
    while True:
        entering = next((j for j in range(n + m) if cost[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for i, row in enumerate(rows):
            if row[entering] > 0:
                ratio = row[-1] / row[entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        if leaving is None:
            # Phase one is bounded below by zero, so this cannot happen.
            raise ArithmeticError("phase-one objective unbounded")
        _pivot(rows, cost, leaving, entering)
        basis[leaving] = entering
        iterations += 1

    residual = -cost[-1]
    logger.info(f"Phase one finished after {iterations} pivots with residual {residual}")
    if residual > 0:
        return None
    solution = [Fraction(0)] * n
    for i, variable in enumerate(basis):
        if variable < n:
            solution[variable] = rows[i][-1]
    return solution


def solve_linear_system(matrix: Matrix, rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """
    Particular solution of Ax = b by Gauss-Jordan elimination

    Pivot columns are taken left to right and free variables are set to 0.

    Args:
        matrix (Matrix): m x n coefficient rows
        rhs (Sequence[Fraction]): Right-hand side of length m

    Returns:
        list: A solution of length n, or None if the system is inconsistent
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    rows = [[Fraction(a) for a in coefficients] + [Fraction(b)] for coefficients, b in zip(matrix, rhs)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(n):
        if r == m:
            break
        found = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if found is None:
            continue
        rows[r], rows[found] = rows[found], rows[r]
        value = rows[r][col]
        rows[r] = [entry / value for entry in rows[r]]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append((r, col))
        r += 1
    for i in range(r, m):
        if rows[i][-1] != 0:
            return None
    solution = [Fraction(0)] * n
    for row, col in pivots:
        solution[col] = rows[row][-1]
    return solution


def residual(matrix: Matrix, solution: Sequence[Fraction], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Ax - b, computed exactly."""
    return [
        sum((Fraction(a) * x for a, x in zip(row, solution)), Fraction(0)) - b
        for row, b in zip(matrix, rhs)
    ]
