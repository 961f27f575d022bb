"""
Dense matrices over F_p.

Array-level helpers (``row_reduce``, ``nullspace``, ``solve_mod`` ...) work on
numpy int64 arrays with explicit reduction mod p and are what the other
packages call. ``FpMatrix`` and the functions ``rref``, ``kernel_basis`` and
``solve`` wrap them for callers that want a typed value.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from exactla.field import FpScalar, check_prime, inv_mod
from utils.errors import DimensionMismatchError, WorkbenchError

logger = logging.getLogger(__name__)

_INT64_LIMIT = 2**63


def as_fp(a, p: int) -> np.ndarray:
    """Copy ``a`` into a reduced int64 array."""
    return np.mod(np.asarray(a, dtype=np.int64), p)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product mod p; falls back to per-term reduction when a dot product could overflow."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    k = a.shape[-1]
    if k == 0:
        out_shape = a.shape[:-1] + b.shape[1:]
        return np.zeros(out_shape, dtype=np.int64)
    if (p - 1) ** 2 * k < _INT64_LIMIT:
        return np.mod(a @ b, p)
    acc = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    for j in range(k):
        acc = np.mod(acc + np.mod(np.multiply.outer(a[..., j], b[j]), p), p)
    return acc


def chain_mod(p: int, *factors: np.ndarray) -> np.ndarray:
    """Product of several factors, left to right."""
    out = factors[0]
    for f in factors[1:]:
        out = matmul_mod(out, f, p)
    return out


def row_reduce(a: np.ndarray, p: int, n_pivot_cols: Optional[int] = None) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over F_p.

    Args:
        a: matrix (m x n)
        p: prime modulus
        n_pivot_cols: only search for pivots in the first *n_pivot_cols*
            columns; row operations still act on the full width.

    Returns:
        (R, pivot_cols) with R reduced (pivots equal to 1, zeros above and
        below) and pivot_cols strictly increasing.
    """
    R = as_fp(a, p).copy()
    if R.ndim != 2:
        raise DimensionMismatchError(f"expected a matrix, got shape {R.shape}")
    m, n = R.shape
    if n_pivot_cols is None:
        n_pivot_cols = n

    pivot_cols: List[int] = []
    pivot_row = 0
    for col in range(n_pivot_cols):
        if pivot_row == m:
            break
        nonzero = np.nonzero(R[pivot_row:, col])[0]
        if nonzero.size == 0:
            continue
        found = pivot_row + int(nonzero[0])
        if found != pivot_row:
            R[[pivot_row, found]] = R[[found, pivot_row]]
        R[pivot_row] = np.mod(R[pivot_row] * inv_mod(int(R[pivot_row, col]), p), p)
        factors = R[:, col].copy()
        factors[pivot_row] = 0
        rows = np.nonzero(factors)[0]
        if rows.size:
            R[rows] = np.mod(R[rows] - np.mod(np.outer(factors[rows], R[pivot_row]), p), p)
        pivot_cols.append(col)
        pivot_row += 1
    return R, pivot_cols


def rank_mod(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(row_reduce(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : a x = 0} as the columns of an (n x k) array."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    if a.shape[0] == 0:
        return identity(n)
    R, pivots = row_reduce(a, p)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = zeros(n, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = (-R[i, f]) % p
    return basis


def solve_mod(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Some x with a x = b, or None.  ``b`` may be a vector or a matrix of right-hand sides."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.ndim != 2 or b.shape[0] != a.shape[0]:
        raise DimensionMismatchError(f"right-hand side of shape {b.shape} does not fit matrix {a.shape}")
    vector = b.ndim == 1
    rhs = b.reshape(b.shape[0], -1)
    m, n = a.shape
    if m == 0:
        x = zeros(n, rhs.shape[1])
        return x[:, 0] if vector else x
    R, pivots = row_reduce(np.hstack([a, rhs]), p, n_pivot_cols=n)
    r = len(pivots)
    if np.any(R[r:, n:]):
        return None
    x = zeros(n, rhs.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = R[i, n:]
    if not np.array_equal(matmul_mod(a, x, p), as_fp(rhs, p)):
        raise WorkbenchError("solution failed re-verification")
    return x[:, 0] if vector else x


def inverse_mod(a: np.ndarray, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionMismatchError(f"cannot invert non-square {a.shape}")
    R, pivots = row_reduce(np.hstack([a, identity(n)]), p, n_pivot_cols=n)
    if pivots != list(range(n)):
        raise WorkbenchError("matrix is singular")
    return R[:, n:].copy()


def is_invertible(a: np.ndarray, p: int) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank_mod(a, p) == a.shape[0]


def complement_columns(sub: np.ndarray, whole: np.ndarray, p: int) -> List[int]:
    """Indices j of columns of ``whole`` extending span(sub) greedily to span(sub + whole)."""
    sub = np.asarray(sub, dtype=np.int64).reshape(whole.shape[0], -1)
    if whole.shape[1] == 0:
        return []
    _, pivots = row_reduce(np.hstack([sub, whole]), p)
    k = sub.shape[1]
    return [j - k for j in pivots if j >= k]


def block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


@dataclass(frozen=True)
class FpMatrix:
    """A dense matrix over F_p."""

    entries: np.ndarray
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        arr = np.asarray(self.entries, dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatchError(f"FpMatrix needs a 2-d array, got shape {arr.shape}")
        arr = np.mod(arr, self.modulus)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, cols: Optional[int] = None) -> FpMatrix:
        if len(rows) == 0:
            return cls(zeros(0, cols or 0), p)
        return cls(np.array(rows, dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int) -> FpMatrix:
        return cls(identity(n), p)

    @classmethod
    def zero(cls, rows: int, cols: int, p: int) -> FpMatrix:
        return cls(zeros(rows, cols), p)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __getitem__(self, index: Tuple[int, int]) -> FpScalar:
        i, j = index
        return FpScalar(int(self.entries[i, j]), self.modulus)

    def __matmul__(self, other: FpMatrix) -> FpMatrix:
        if other.modulus != self.modulus:
            raise DimensionMismatchError("moduli differ")
        return FpMatrix(matmul_mod(self.entries, other.entries, self.modulus), self.modulus)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpMatrix)
            and other.modulus == self.modulus
            and np.array_equal(other.entries, self.entries)
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self.entries.shape, self.entries.tobytes()))

    def apply(self, v: Sequence[int]) -> np.ndarray:
        return matmul_mod(self.entries, np.asarray(v, dtype=np.int64), self.modulus)

    def rank(self) -> int:
        return rank_mod(self.entries, self.modulus)

    def inverse(self) -> FpMatrix:
        return FpMatrix(inverse_mod(self.entries, self.modulus), self.modulus)

    def __repr__(self) -> str:
        return f"FpMatrix({self.entries.tolist()}, p={self.modulus})"


def rref(m: FpMatrix) -> Tuple[FpMatrix, List[int]]:
    R, pivots = row_reduce(m.entries, m.modulus)
    return FpMatrix(R, m.modulus), pivots


def kernel_basis(m: FpMatrix) -> List[np.ndarray]:
    basis = nullspace(m.entries, m.modulus)
    return [basis[:, k].copy() for k in range(basis.shape[1])]


def solve(m: FpMatrix, b: Sequence[int]) -> Optional[np.ndarray]:
    b = np.asarray(b, dtype=np.int64)
    if b.ndim != 1 or b.shape[0] != m.rows:
        raise DimensionMismatchError(f"vector of length {b.shape} does not match {m.rows} rows")
    return solve_mod(m.entries, b, m.modulus)


def det_mod(a: np.ndarray, p: int) -> int:
    """Determinant over F_p by elimination."""
    R = as_fp(a, p).copy()
    n = R.shape[0]
    if R.shape != (n, n):
        raise DimensionMismatchError(f"determinant of non-square {R.shape}")
    det = 1
    for col in range(n):
        nonzero = np.nonzero(R[col:, col])[0]
        if nonzero.size == 0:
            return 0
        found = col + int(nonzero[0])
        if found != col:
            R[[col, found]] = R[[found, col]]
            det = -det
        pivot = int(R[col, col])
        det = (det * pivot) % p
        inv = inv_mod(pivot, p)
        for row in range(col + 1, n):
            if R[row, col]:
                factor = (int(R[row, col]) * inv) % p
                R[row] = np.mod(R[row] - factor * R[col], p)
    return det % p
