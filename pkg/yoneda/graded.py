"""
Finite-dimensional graded algebras and modules over F_p given by structure constants.

A module's action tensor has one (m x m) operator per algebra basis element:
for a right module x·e_a = action[a] @ x, for a left module e_a·x = action[a] @ x.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from exactla.matrix import (
    complement_columns,
    identity,
    inverse_mod,
    matmul_mod,
    nullspace,
    solve_mod,
    zeros,
)
from utils.errors import ModelError, StructureMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    """mult[a, b, c] is the coefficient of e_c in e_a e_b."""

    degrees: np.ndarray
    mult: np.ndarray
    unit: np.ndarray
    p: int
    labels: Tuple[str, ...] = ()
    name: str = "A"

    @property
    def dim(self) -> int:
        return int(self.degrees.shape[0])

    def dims(self) -> Dict[int, int]:
        values, counts = np.unique(self.degrees, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    def basis_in_degree(self, i: int) -> List[int]:
        return [int(a) for a in np.nonzero(self.degrees == i)[0]]

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("a,b,abc->c", x, y, self.mult) % self.p

    def left_operator(self, x: np.ndarray) -> np.ndarray:
        """Matrix of y ↦ x y."""
        return np.einsum("a,abc->cb", x, self.mult) % self.p

    def right_operator(self, x: np.ndarray) -> np.ndarray:
        """Matrix of y ↦ y x."""
        return np.einsum("b,abc->ca", x, self.mult) % self.p

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else f"e{a}"

    def validate(self) -> None:
        """Homogeneity, unit and associativity on all basis triples."""
        n, p = self.dim, self.p
        deg = self.degrees
        nz = np.argwhere(self.mult % p)
        for a, b, c in nz:
            if deg[a] + deg[b] != deg[c]:
                raise ModelError(f"{self.name}: product is not homogeneous", witness=(int(a), int(b), int(c)))
        eye = identity(n)
        if not (np.array_equal(self.left_operator(self.unit), eye) and np.array_equal(self.right_operator(self.unit), eye)):
            raise ModelError(f"{self.name}: unit does not act as identity")
        left = np.einsum("abx,xcy->abcy", self.mult, self.mult) % p
        right = np.einsum("bcx,axy->abcy", self.mult, self.mult) % p
        bad = np.argwhere(left != right)
        if bad.size:
            raise ModelError(f"{self.name}: not associative", witness=tuple(int(x) for x in bad[0][:3]))


@dataclass(frozen=True, eq=False)
class GradedModule:
    """A graded left or right module over ``algebra``."""

    algebra: GradedAlgebra
    side: str
    degrees: np.ndarray
    action: np.ndarray
    labels: Tuple[str, ...] = ()
    name: str = "M"

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise StructureMismatchError(f"side must be 'left' or 'right', got {self.side!r}")
        object.__setattr__(self, "degrees", np.asarray(self.degrees, dtype=np.int64))
        object.__setattr__(self, "action", np.asarray(self.action, dtype=np.int64) % self.algebra.p)

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return int(self.degrees.shape[0])

    def dims(self) -> Dict[int, int]:
        values, counts = np.unique(self.degrees, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    def basis_in_degree(self, i: int) -> List[int]:
        return [int(a) for a in np.nonzero(self.degrees == i)[0]]

    def operator(self, x: np.ndarray) -> np.ndarray:
        """Operator of an arbitrary algebra element."""
        return np.einsum("a,aij->ij", np.asarray(x, dtype=np.int64), self.action) % self.p

    def act(self, m: np.ndarray, x: np.ndarray) -> np.ndarray:
        return matmul_mod(self.operator(x), m, self.p)

    def validate(self) -> None:
        A, p = self.algebra, self.p
        if self.action.shape != (A.dim, self.dim, self.dim):
            raise ModelError(f"{self.name}: action tensor has shape {self.action.shape}")
        if not np.array_equal(self.operator(A.unit), identity(self.dim)):
            raise ModelError(f"{self.name}: unit does not act as identity")
        for a in range(A.dim):
            for i, j in np.argwhere(self.action[a]):
                if self.degrees[i] != self.degrees[j] + A.degrees[a]:
                    raise ModelError(f"{self.name}: action is not homogeneous", witness=(a, int(j)))
        # product operators: Σ_c mult[a,b,c] action[c]
        prod = np.einsum("abc,cij->abij", A.mult, self.action) % p
        if self.side == "right":
            comp = np.einsum("bik,akj->abij", self.action, self.action) % p
        else:
            comp = np.einsum("aik,bkj->abij", self.action, self.action) % p
        bad = np.argwhere(prod != comp)
        if bad.size:
            raise ModelError(f"{self.name}: not a {self.side} module", witness=tuple(int(x) for x in bad[0][:2]))


def regular_module(A: GradedAlgebra, side: str = "right") -> GradedModule:
    action = np.array(
        [A.right_operator(e) if side == "right" else A.left_operator(e) for e in identity(A.dim)],
        dtype=np.int64,
    )
    return GradedModule(A, side, A.degrees.copy(), action, A.labels, A.name)


def direct_sum(M: GradedModule, N: GradedModule) -> GradedModule:
    if M.algebra is not N.algebra or M.side != N.side:
        raise StructureMismatchError("direct sum of modules over different algebras or sides")
    m, n = M.dim, N.dim
    action = np.zeros((M.algebra.dim, m + n, m + n), dtype=np.int64)
    action[:, :m, :m] = M.action
    action[:, m:, m:] = N.action
    return GradedModule(M.algebra, M.side, np.concatenate([M.degrees, N.degrees]), action,
                        tuple(M.labels) + tuple(N.labels), f"{M.name}⊕{N.name}")


def shifted(M: GradedModule, k: int) -> GradedModule:
    """M with every degree raised by k."""
    return GradedModule(M.algebra, M.side, M.degrees + k, M.action, M.labels, f"{M.name}[{-k}]")


def _homogeneous_basis(vectors: np.ndarray, degrees: np.ndarray, p: int) -> np.ndarray:
    """Independent homogeneous columns spanning the span of homogeneous ``vectors``."""
    chosen = zeros(degrees.shape[0], 0)
    for i in sorted(set(int(d) for d in degrees)):
        rows = degrees == i
        cols = [v for v in vectors.T if np.any(v % p) and not np.any(v[~rows] % p)]
        if not cols:
            continue
        block = np.array(cols, dtype=np.int64).T
        keep = complement_columns(zeros(degrees.shape[0], 0), block, p)
        chosen = np.hstack([chosen, block[:, keep]])
    return chosen


def submodule(M: GradedModule, generators: np.ndarray) -> Tuple[GradedModule, np.ndarray]:
    """Submodule generated by homogeneous columns; returns (S, inclusion matrix)."""
    p = M.p
    gens = np.asarray(generators, dtype=np.int64).reshape(M.dim, -1) % p
    spanning = [matmul_mod(M.action[a], g, p) for a in range(M.algebra.dim) for g in gens.T]
    vectors = np.array(spanning, dtype=np.int64).T if spanning else zeros(M.dim, 0)
    basis = _homogeneous_basis(vectors, M.degrees, p)
    degrees = np.array([int(M.degrees[np.nonzero(col)[0][0]]) for col in basis.T], dtype=np.int64)
    action = np.zeros((M.algebra.dim, basis.shape[1], basis.shape[1]), dtype=np.int64)
    for a in range(M.algebra.dim):
        coords = solve_mod(basis, matmul_mod(M.action[a], basis, p), p)
        if coords is None:
            raise ModelError(f"generated span in {M.name} is not closed under the action")
        action[a] = coords
    S = GradedModule(M.algebra, M.side, degrees, action, name=f"sub({M.name})")
    return S, basis


def quotient(M: GradedModule, inclusion: np.ndarray) -> Tuple[GradedModule, np.ndarray]:
    """M / image(inclusion); returns (Q, projection matrix)."""
    p = M.p
    sub = np.asarray(inclusion, dtype=np.int64).reshape(M.dim, -1)
    extra = complement_columns(sub, identity(M.dim), p)
    comp = identity(M.dim)[:, extra]
    change = inverse_mod(np.hstack([sub, comp]), p)
    k = sub.shape[1]
    projection = change[k:, :]
    action = np.array([matmul_mod(projection, matmul_mod(M.action[a], comp, p), p) for a in range(M.algebra.dim)])
    degrees = M.degrees[extra] if extra else np.zeros(0, dtype=np.int64)
    Q = GradedModule(M.algebra, M.side, degrees, action.reshape(M.algebra.dim, len(extra), len(extra)), name=f"{M.name}/sub")
    return Q, projection


def module_hom_basis(source: GradedModule, target: GradedModule) -> List[np.ndarray]:
    """Degree-0 module maps source -> target, as (target.dim x source.dim) matrices."""
    if source.algebra is not target.algebra or source.side != target.side:
        raise StructureMismatchError("module maps need modules of the same side over the same algebra")
    p = source.p
    m, n = source.dim, target.dim
    allowed = [(i, j) for i in range(n) for j in range(m) if target.degrees[i] == source.degrees[j]]
    if not allowed:
        return []
    cols = [i * m + j for i, j in allowed]
    blocks = [
        ((np.kron(identity(n), source.action[a].T) - np.kron(target.action[a], identity(m))) % p)[:, cols]
        for a in range(source.algebra.dim)
    ]
    kernel = nullspace(np.vstack(blocks), p)
    out = []
    for k in range(kernel.shape[1]):
        phi = zeros(n, m)
        for (i, j), value in zip(allowed, kernel[:, k]):
            phi[i, j] = value
        out.append(phi)
    return out


def is_module_map(phi: np.ndarray, source: GradedModule, target: GradedModule) -> bool:
    p = source.p
    return all(
        np.array_equal(matmul_mod(phi, source.action[a], p), matmul_mod(target.action[a], phi, p))
        for a in range(source.algebra.dim)
    )


def exterior_algebra(d: int, p: int) -> GradedAlgebra:
    """Λ(y_1..y_d) with basis the increasing monomials, ordered by degree then lexicographically."""
    if d < 0:
        raise ModelError("exterior algebra needs d >= 0")
    subsets = [s for k in range(d + 1) for s in itertools.combinations(range(d), k)]
    index = {s: i for i, s in enumerate(subsets)}
    n = len(subsets)
    mult = np.zeros((n, n, n), dtype=np.int64)
    for a, s in enumerate(subsets):
        for b, t in enumerate(subsets):
            if set(s) & set(t):
                continue
            inversions = sum(1 for x in s for y in t if x > y)
            mult[a, b, index[tuple(sorted(s + t))]] = (-1) ** inversions % p
    unit = np.zeros(n, dtype=np.int64)
    unit[0] = 1
    labels = tuple("1" if not s else "∧".join(f"y{x + 1}" for x in s) for s in subsets)
    degrees = np.array([len(s) for s in subsets], dtype=np.int64)
    return GradedAlgebra(degrees, mult % p, unit, p, labels, f"Λ({d})")


def exterior_power_matrix(M: np.ndarray, p: int) -> np.ndarray:
    """The action on Λ(d) of the linear map M on Λ^1 (columns = images of y_j): minors."""
    from exactla.matrix import det_mod

    d = M.shape[0]
    subsets = [s for k in range(d + 1) for s in itertools.combinations(range(d), k)]
    n = len(subsets)
    out = zeros(n, n)
    for b, s in enumerate(subsets):
        for a, t in enumerate(subsets):
            if len(s) != len(t):
                continue
            out[a, b] = 1 if not s else det_mod(np.asarray(M)[np.ix_(t, s)], p)
    return out
