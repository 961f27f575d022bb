"""
Row reduction, kernels, solving and inverses over F_p.
"""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exactla.field import FpScalar, check_prime, inv_mod, is_prime
from exactla.matrix import (
    FpMatrix,
    inverse_mod,
    is_invertible,
    kernel_basis,
    matmul_mod,
    nullspace,
    rank_mod,
    row_reduce,
    rref,
    solve,
    solve_mod,
)
from utils.errors import DimensionMismatchError, WorkbenchError

PRIMES = [2, 3, 5, 7, 101]


@st.composite
def fp_matrices(draw, max_rows=5, max_cols=5):
    p = draw(st.sampled_from(PRIMES))
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols))
    return np.array(entries, dtype=np.int64).reshape(rows, cols), p


def test_primes():
    assert [q for q in range(20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(WorkbenchError):
        check_prime(9)


def test_scalar_arithmetic():
    a = FpScalar(3, 7)
    assert int(a * a.inverse()) == 1
    assert int(a - 5) == 5
    assert a.signed() == 3
    assert int(FpScalar(6, 7)) == 6 and FpScalar(6, 7).signed() == -1
    with pytest.raises(ZeroDivisionError):
        inv_mod(0, 5)
    with pytest.raises(DimensionMismatchError):
        FpScalar(1, 3) + FpScalar(1, 5)


@given(fp_matrices())
@settings(max_examples=60, deadline=None)
def test_rref_is_reduced(data):
    a, p = data
    R, pivots = row_reduce(a, p)
    assert pivots == sorted(pivots)
    for i, c in enumerate(pivots):
        assert R[i, c] == 1
        assert np.count_nonzero(R[:, c]) == 1
    assert not np.any(R[len(pivots):])


@given(fp_matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(data):
    a, p = data
    K = nullspace(a, p)
    assert rank_mod(a, p) + K.shape[1] == a.shape[1]
    assert not np.any(matmul_mod(a, K, p))


@given(fp_matrices(), st.data())
@settings(max_examples=60, deadline=None)
def test_solve_consistent_systems(data, extra):
    a, p = data
    x = np.array(extra.draw(st.lists(st.integers(0, p - 1), min_size=a.shape[1], max_size=a.shape[1])), dtype=np.int64)
    b = matmul_mod(a, x, p)
    y = solve_mod(a, b, p)
    assert y is not None
    assert np.array_equal(matmul_mod(a, y, p), b)


def test_solve_inconsistent():
    a = np.array([[1, 1], [2, 2]], dtype=np.int64)
    assert solve_mod(a, np.array([1, 0]), 5) is None


def test_inverse():
    a = np.array([[1, 2], [3, 4]], dtype=np.int64)
    inv = inverse_mod(a, 5)
    assert np.array_equal(matmul_mod(a, inv, 5), np.eye(2, dtype=np.int64))
    assert not is_invertible(np.array([[1, 2], [2, 4]]), 5)
    with pytest.raises(WorkbenchError):
        inverse_mod(np.array([[1, 2], [2, 4]]), 5)


def test_shapes_are_checked():
    with pytest.raises(DimensionMismatchError):
        matmul_mod(np.zeros((2, 3), dtype=np.int64), np.zeros((2, 3), dtype=np.int64), 3)


def test_large_prime_products_do_not_overflow():
    p = 2**31 - 1
    a = np.full((1, 4), p - 1, dtype=np.int64)
    b = np.full((4, 1), p - 1, dtype=np.int64)
    assert matmul_mod(a, b, p)[0, 0] == 4 % p


def test_typed_matrix():
    m = FpMatrix.from_rows([[1, 1], [1, 1]], 2)
    assert m.rank() == 1
    (k,) = kernel_basis(m)
    assert not np.any(m.apply(k))


def test_typed_rref_and_solve():
    m = FpMatrix.from_rows([[2, 4, 1], [1, 2, 0]], 5)
    R, pivots = rref(m)
    assert pivots == [0, 2]
    assert R.entries.tolist() == [[1, 2, 0], [0, 0, 1]]
    x = solve(m, [3, 1])
    assert x is not None
    assert m.apply(x).tolist() == [3, 1]
    assert solve(FpMatrix.from_rows([[1, 1], [1, 1]], 3), [0, 1]) is None
    with pytest.raises(DimensionMismatchError):
        solve(m, [1, 2, 3])
