"""
The bimodules E*(n) = Λ(d) ⊗ k[C]^{⊗n}: left E*-module, n right E*-actions.

Basis λ ⊗ (c_1, …, c_n):
  (μ⊗g)·(λ⊗c⃗) = (μ ∧ gλ) ⊗ (gc_1, …, gc_n)
  (λ⊗c⃗)·_j(μ⊗g) = (λ ∧ c_j μ) ⊗ (…, c_j g, …)
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from exactla.matrix import identity, matmul_mod, zeros
from yoneda.graded import GradedAlgebra, GradedModule
from yoneda.model import CrossedModelDatum
from utils.errors import ModelError, WindowError

logger = logging.getLogger(__name__)

MAX_EXT_N_DIM = 4096


@dataclass(frozen=True, eq=False)
class GradedBimodule:
    """A left module with extra right actions, all over the same algebra."""

    algebra: GradedAlgebra
    degrees: np.ndarray
    left: np.ndarray
    rights: Tuple[np.ndarray, ...]
    labels: Tuple[str, ...] = ()
    name: str = "E(n)"

    @property
    def dim(self) -> int:
        return int(self.degrees.shape[0])

    @property
    def p(self) -> int:
        return self.algebra.p

    def left_module(self) -> GradedModule:
        return GradedModule(self.algebra, "left", self.degrees, self.left, self.labels, self.name)

    def right_module(self, j: int) -> GradedModule:
        return GradedModule(self.algebra, "right", self.degrees, self.rights[j], self.labels, f"{self.name}·{j + 1}")

    def validate(self) -> None:
        self.left_module().validate()
        for j in range(len(self.rights)):
            self.right_module(j).validate()
        defect = self.commutation_defect()
        if defect is not None:
            raise ModelError(f"{self.name}: actions do not commute", witness=defect)

    def commutation_defect(self) -> Optional[tuple]:
        """Left and right actions commute; right actions j ≠ k commute up to the Koszul sign."""
        A, p = self.algebra, self.p
        for j, R in enumerate(self.rights):
            for a, b in itertools.product(range(A.dim), repeat=2):
                if not np.array_equal(matmul_mod(R[b], self.left[a], p), matmul_mod(self.left[a], R[b], p)):
                    return ("left", j, a, b)
        for (j, R), (k, S) in itertools.combinations(enumerate(self.rights), 2):
            for a, b in itertools.product(range(A.dim), repeat=2):
                lhs = matmul_mod(S[b], R[a], p)
                rhs = matmul_mod(R[a], S[b], p)
                if (A.degrees[a] * A.degrees[b]) % 2:
                    rhs = (-rhs) % p
                if not np.array_equal(lhs, rhs):
                    return ("right", j, k, a, b)
        return None


def ext_n(model: CrossedModelDatum, n: int, E: GradedAlgebra) -> GradedBimodule:
    if n < 0:
        raise ModelError("E*(n) needs n >= 0")
    L, C, p = model.cohomology, model.C, model.p
    nl, nc = L.dim, model.c_order
    tuples = list(itertools.product(range(nc), repeat=n))
    size = nl * len(tuples)
    if size > MAX_EXT_N_DIM:
        raise WindowError(f"E*({n}) has dimension {size}, above the limit {MAX_EXT_N_DIM}")
    t_index = {t: i for i, t in enumerate(tuples)}

    def idx(s: int, t: tuple) -> int:
        return s * len(tuples) + t_index[t]

    wedge = L.mult
    act = model.lambda_actions
    left = np.zeros((E.dim, size, size), dtype=np.int64)
    rights = [np.zeros((E.dim, size, size), dtype=np.int64) for _ in range(n)]
    for m_s in range(nl):
        for g in range(nc):
            a = model.e_index(m_s, g)
            for s in range(nl):
                moved = act[g][:, s]
                for t in tuples:
                    gt = tuple(C.m(g, c) for c in t)
                    col = idx(s, t)
                    coeffs = np.einsum("w,wu->u", moved, wedge[m_s]) % p
                    for u in np.nonzero(coeffs)[0]:
                        left[a, idx(int(u), gt), col] = coeffs[u]
                    for j in range(n):
                        cj = t[j]
                        new_t = t[:j] + (C.m(cj, g),) + t[j + 1:]
                        coeffs_r = np.einsum("w,uw->u", act[cj][:, m_s], wedge[s].T) % p
                        for u in np.nonzero(coeffs_r)[0]:
                            rights[j][a, idx(int(u), new_t), col] = coeffs_r[u]
    degrees = np.repeat(L.degrees, len(tuples))
    labels = tuple(f"{L.labels[s]}⊗({','.join(f'c{c}' for c in t)})" for s in range(nl) for t in tuples)
    return GradedBimodule(E, degrees, left % p, tuple(r % p for r in rights), labels, f"E({n})")


def factor_swap(model: CrossedModelDatum, bimodule: GradedBimodule) -> np.ndarray:
    """ς on E*(2): λ⊗(c_1, c_2) ↦ λ⊗(c_2, c_1)."""
    nl, nc = model.cohomology.dim, model.c_order
    size = bimodule.dim
    out = zeros(size, size)
    for s in range(nl):
        for c1 in range(nc):
            for c2 in range(nc):
                out[s * nc * nc + c2 * nc + c1, s * nc * nc + c1 * nc + c2] = 1
    return out


def free_left_basis(model: CrossedModelDatum, bimodule: GradedBimodule) -> List[int]:
    """Indices of 1⊗(1, c): a free basis of E*(2) as a left E*-module."""
    nc = model.c_order
    e = model.C.identity
    return [e * nc + c for c in range(nc)]
