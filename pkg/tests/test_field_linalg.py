import numpy as np
import pytest

from utils.errors import InconsistentSystemError
from utils.field_linalg import (FMatrix, PrimeField, complement_basis, in_span, kernel_basis, prime_field,
                                quotient_projection, rank_kernel, solve_affine)


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        PrimeField(4)


def test_inverse_of_zero_raises(f3):
    with pytest.raises(ZeroDivisionError):
        f3.inv(0)
    assert f3.inv(2) == 2


def test_rank_and_kernel(f2):
    m = FMatrix.from_rows(f2, [[1, 1, 0], [0, 1, 1]])
    rank, kernel = rank_kernel(m)
    assert rank == 2
    assert kernel.shape == (3, 1)
    assert (m @ kernel).is_zero()


def test_rank_depends_on_characteristic():
    rows = [[1, 1], [1, -1]]
    assert FMatrix.from_rows(prime_field(2), rows).rank() == 1
    assert FMatrix.from_rows(prime_field(3), rows).rank() == 2


def test_inverse_round_trip(f5):
    m = FMatrix.from_rows(f5, [[2, 1], [1, 1]])
    assert m @ m.inverse() == FMatrix.identity(f5, 2)


def test_singular_inverse_raises(f5):
    with pytest.raises(ZeroDivisionError):
        FMatrix.from_rows(f5, [[1, 2], [2, 4]]).inverse()


def test_solve_affine(f3):
    a = FMatrix.from_rows(f3, [[1, 1], [0, 1]])
    b = FMatrix.from_rows(f3, [[2], [1]])
    solution = solve_affine(a, b)
    assert a @ solution.particular == b
    assert solution.dimension == 0


def test_solve_affine_inconsistent(f3):
    a = FMatrix.from_rows(f3, [[1, 1], [1, 1]])
    b = FMatrix.from_rows(f3, [[0], [1]])
    with pytest.raises(InconsistentSystemError):
        solve_affine(a, b)


def test_complement_and_quotient(f2):
    sub = FMatrix.from_rows(f2, [[1], [1], [0]])
    comp = complement_basis(sub, 3)
    assert comp.cols == 2
    _, projection = quotient_projection(sub, 3)
    assert (projection @ sub).is_zero()
    assert projection.rank() == 2


def test_in_span(f3):
    basis = FMatrix.from_rows(f3, [[1, 0], [0, 1], [1, 1]])
    assert in_span(basis, np.array([2, 1, 0]))
    assert not in_span(basis, np.array([0, 0, 1]))


def test_empty_matrices(f2):
    empty = FMatrix.zeros(f2, 0, 3)
    assert empty.rank() == 0
    assert kernel_basis(empty).shape == (3, 3)
