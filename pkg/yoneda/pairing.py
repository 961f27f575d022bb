"""
B* = Ext*(X_U ⊗ X_U, k) realized on the space of E* with the trace pairing
⟨f, e⟩ = t(f·e), where t picks the coefficient of y_1∧…∧y_d ⊗ 1.

Action #2 is right multiplication (predual of left multiplication on E*),
ς* is the pairing adjoint of 𝒥⊗χ_G, and action #1 is f·₁τ = ς*(ς*(f)·₂τ).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from exactla.matrix import identity, is_invertible, matmul_mod, solve_mod
from yoneda.graded import GradedAlgebra, GradedModule
from yoneda.model import CrossedModelDatum, build_E, twist_J_chi
from utils.errors import DimensionMismatchError, ModelError

logger = logging.getLogger(__name__)


def trace_functional(E: GradedAlgebra, model: CrossedModelDatum) -> np.ndarray:
    t = np.zeros(E.dim, dtype=np.int64)
    top = model.cohomology.dim - 1
    t[model.e_index(top, model.C.identity)] = 1
    return t


@dataclass(frozen=True, eq=False)
class YonedaBimodule:
    """B* with its two commuting right E*-actions and the pairing with E*."""

    model: CrossedModelDatum
    E: GradedAlgebra
    gram: np.ndarray
    twist: np.ndarray
    sigma: np.ndarray
    action1: np.ndarray
    action2: np.ndarray

    @property
    def p(self) -> int:
        return self.E.p

    @property
    def dim(self) -> int:
        return self.E.dim

    def first(self) -> GradedModule:
        return GradedModule(self.E, "right", self.E.degrees.copy(), self.action1, self.E.labels, "B*(#1)")

    def second(self) -> GradedModule:
        return GradedModule(self.E, "right", self.E.degrees.copy(), self.action2, self.E.labels, "B*(#2)")

    def degree_gram(self, i: int) -> np.ndarray:
        """Gram matrix B^i × E^{d−i}."""
        rows = self.E.basis_in_degree(i)
        cols = self.E.basis_in_degree(self.model.d - i)
        return self.gram[np.ix_(rows, cols)]


def bimodule_B(model: CrossedModelDatum, E: Optional[GradedAlgebra] = None) -> YonedaBimodule:
    E = E or build_E(model)
    p = E.p
    t = trace_functional(E, model)
    gram = np.einsum("abc,c->ab", E.mult, t) % p
    if not is_invertible(gram, p):
        raise ModelError(f"{model.name}: trace pairing is degenerate")
    twist = twist_J_chi(model)
    # ς^T G = G J  <=>  G^T ς = J^T G^T
    sigma = solve_mod(gram.T, matmul_mod(twist.T, gram.T, p), p)
    action2 = np.array([E.right_operator(e) for e in identity(E.dim)], dtype=np.int64)
    action1 = np.array([matmul_mod(sigma, matmul_mod(action2[a], sigma, p), p) for a in range(E.dim)])
    return YonedaBimodule(model, E, gram, twist, sigma, action1, action2)


def yoneda_pairing(B: YonedaBimodule, f: np.ndarray, e: np.ndarray) -> int:
    """⟨f, e⟩ for homogeneous f ∈ B^i, e ∈ E^{d−i}."""
    E, d = B.E, B.model.d
    f, e = np.asarray(f, dtype=np.int64), np.asarray(e, dtype=np.int64)
    deg_f = set(E.degrees[np.nonzero(f % B.p)[0]].tolist())
    deg_e = set(E.degrees[np.nonzero(e % B.p)[0]].tolist())
    if len(deg_f) > 1 or len(deg_e) > 1 or (deg_f and deg_e and deg_f.pop() + deg_e.pop() != d):
        raise DimensionMismatchError("pairing needs homogeneous arguments of complementary degrees")
    return int(f @ B.gram @ e % B.p)


def swap_sigma_star(B: YonedaBimodule) -> np.ndarray:
    return B.sigma


def linear_identity_defects(B: YonedaBimodule) -> Dict[str, Optional[dict]]:
    """First failure (if any) of

    (i)  ⟨f·₂τ, e⟩ = ⟨f, τ·e⟩
    (ii) ⟨f·₁τ, e⟩ = (−1)^{s(d−i−s)} ⟨f, e·(𝒥⊗χ_G)(τ)⟩

    over all homogeneous basis triples, and how often the sign was −1.
    """
    E, p, d = B.E, B.p, B.model.d
    eye = identity(E.dim)
    first: Optional[dict] = None
    second: Optional[dict] = None
    negative = 0
    checked = 0
    for f in range(E.dim):
        i = int(E.degrees[f])
        for tau in range(E.dim):
            s = int(E.degrees[tau])
            for e in E.basis_in_degree(d - i - s):
                lhs1 = yoneda_pairing(B, B.action2[tau] @ eye[f] % p, eye[e])
                rhs1 = yoneda_pairing(B, eye[f], E.multiply(eye[tau], eye[e]))
                if lhs1 != rhs1 and first is None:
                    first = {"at": [f, tau, e], "lhs": lhs1, "rhs": rhs1}
                sign = -1 if (s * (d - i - s)) % 2 else 1
                negative += sign == -1
                lhs2 = yoneda_pairing(B, B.action1[tau] @ eye[f] % p, eye[e])
                rhs2 = sign * yoneda_pairing(B, eye[f], E.multiply(eye[e], B.twist[:, tau])) % p
                if lhs2 != rhs2 and second is None:
                    second = {"at": [f, tau, e], "lhs": lhs2, "rhs": rhs2}
                checked += 1
    return {"linear_i": first, "linear_ii": second, "negative_signs": negative, "checked": checked}


def koszul_commutation_defect(B: YonedaBimodule) -> Optional[Tuple[int, int]]:
    """(f·₁τ)·₂σ = (−1)^{|τ||σ|} (f·₂σ)·₁τ on operators; first failing (τ, σ) or None."""
    E, p = B.E, B.p
    for tau in range(E.dim):
        for sig in range(E.dim):
            lhs = matmul_mod(B.action2[sig], B.action1[tau], p)
            rhs = matmul_mod(B.action1[tau], B.action2[sig], p)
            if (E.degrees[tau] * E.degrees[sig]) % 2:
                rhs = (-rhs) % p
            if not np.array_equal(lhs, rhs):
                return (tau, sig)
    return None
