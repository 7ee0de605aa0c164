"""
Exact linear solving over the rationals.

Rows are scaled to integers and reduced with Bareiss' fraction-free
elimination; back-substitution then runs in ``Fraction``.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence

from kovacic_aim.errors import DimensionMismatch
from kovacic_aim.params import Number

logger = logging.getLogger(__name__)

Matrix = Sequence[Sequence[Number]]


@dataclass(frozen=True)
class LinearSolution:
    consistent: bool
    particular: Optional[List[Fraction]] = None
    kernel: List[List[Fraction]] = field(default_factory=list)
    rank: int = 0


def _integer_row(row: Sequence[Fraction]) -> List[int]:
    den = 1
    for v in row:
        den = den * v.denominator // gcd(den, v.denominator)
    return [int(v * den) for v in row]


def _echelon(rows: List[List[int]], ncols: int):
    """Fraction-free row echelon form in place; returns pivot columns."""
    m = len(rows)
    prev: Number = 1
    r = 0
    pivots: List[int] = []
    for col in range(ncols):
        if r == m:
            break
        pivot_row = next((i for i in range(r, m) if rows[i][col]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        p = rows[r][col]
        for i in range(r + 1, m):
            a = rows[i][col]
            for j in range(col + 1, len(rows[i])):
                q = Fraction(p * rows[i][j] - a * rows[r][j]) / prev
                rows[i][j] = q.numerator if q.denominator == 1 else q
            rows[i][col] = 0
        prev = p
        pivots.append(col)
        r += 1
    return pivots


def _back_substitute(rows, pivots: List[int], ncols: int, rhs: List[Fraction], free_values) -> List[Fraction]:
    x = [Fraction(0)] * ncols
    for col, value in free_values.items():
        x[col] = Fraction(value)
    for k in reversed(range(len(pivots))):
        pc = pivots[k]
        acc = Fraction(rhs[k])
        for j in range(pc + 1, ncols):
            if rows[k][j] and x[j]:
                acc -= rows[k][j] * x[j]
        x[pc] = acc / rows[k][pc]
    return x


def solve_linear(matrix: Matrix, rhs: Optional[Sequence[Number]] = None) -> LinearSolution:
    """
    Solve ``matrix @ c = rhs`` exactly.

    With ``rhs=None`` the system is homogeneous and only the kernel basis is
    computed. Kernel vectors are scaled so their first nonzero entry is 1.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if any(len(row) != n for row in matrix):
        raise DimensionMismatch("matrix rows have different lengths")
    if rhs is not None and len(rhs) != m:
        raise DimensionMismatch(f"right-hand side has {len(rhs)} entries for {m} rows")

    homogeneous = rhs is None
    b = [Fraction(0)] * m if homogeneous else [Fraction(v) for v in rhs]
    rows = [_integer_row([Fraction(v) for v in matrix[i]] + [b[i]]) for i in range(m)]
    pivots = _echelon(rows, n)
    rank = len(pivots)

    consistent = all(not rows[i][n] for i in range(rank, m))
    free = [c for c in range(n) if c not in pivots]

    kernel = []
    zero_rhs = [Fraction(0)] * rank
    for fc in free:
        values = {c: (1 if c == fc else 0) for c in free}
        vec = _back_substitute(rows, pivots, n, zero_rhs, values)
        lead = next(v for v in vec if v)
        kernel.append([v / lead for v in vec])

    particular = None
    if consistent:
        particular = _back_substitute(rows, pivots, n, [Fraction(rows[k][n]) for k in range(rank)],
                                      {c: 0 for c in free})
    logger.debug("solved %dx%d system: rank %d, consistent=%s", m, n, rank, consistent)
    return LinearSolution(consistent=consistent, particular=particular, kernel=kernel, rank=rank)
