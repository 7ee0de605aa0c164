from fractions import Fraction

import pytest

from kovacic_aim.errors import DimensionMismatch
from kovacic_aim.linalg import solve_linear


def check(matrix, rhs, x):
    for row, value in zip(matrix, rhs):
        assert sum(Fraction(a) * b for a, b in zip(row, x)) == value


def test_unique_solution():
    matrix = [[2, 1], [1, 3]]
    rhs = [3, 5]
    sol = solve_linear(matrix, rhs)
    assert sol.consistent and sol.rank == 2 and not sol.kernel
    assert sol.particular == [Fraction(4, 5), Fraction(7, 5)]
    check(matrix, rhs, sol.particular)


def test_rational_entries():
    matrix = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), -1]]
    rhs = [1, Fraction(1, 6)]
    sol = solve_linear(matrix, rhs)
    assert sol.consistent
    check(matrix, rhs, sol.particular)


def test_inconsistent():
    sol = solve_linear([[1, 1], [2, 2]], [1, 3])
    assert not sol.consistent
    assert sol.particular is None
    assert sol.rank == 1


def test_kernel_is_scaled():
    sol = solve_linear([[1, 1], [2, 2]])
    assert sol.kernel == [[1, -1]]
    assert sol.rank == 1


def test_overdetermined_consistent():
    matrix = [[1, 0], [0, 1], [1, 1], [2, -1]]
    rhs = [1, 2, 3, 0]
    sol = solve_linear(matrix, rhs)
    assert sol.consistent
    assert sol.particular == [1, 2]


def test_zero_pivot_column_is_skipped():
    matrix = [[0, 1, 2], [0, 2, 5]]
    sol = solve_linear(matrix, [1, 3])
    assert sol.consistent
    check(matrix, [1, 3], sol.particular)
    assert sol.kernel == [[1, 0, 0]]


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve_linear([[1, 2], [3]], [1, 2])
    with pytest.raises(DimensionMismatch):
        solve_linear([[1, 2]], [1, 2])
