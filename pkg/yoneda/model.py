"""
Crossed-product models E* = Λ(d) ⋊ C for G = Z_p^d ⋊ C.

``actions[c]`` is the matrix of c on U = Z_p^d; the action on H^1(U,k) is
its contragredient, extended to Λ(d) by minors.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Optional

import numpy as np

from exactla.field import check_prime
from exactla.matrix import det_mod, identity, inverse_mod, is_invertible, matmul_mod, zeros
from smoothrep.groups import FinGroupDatum, semidirect_group
from yoneda.graded import GradedAlgebra, GradedModule, exterior_algebra, exterior_power_matrix
from utils.errors import ModelError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CrossedModelDatum:
    p: int
    d: int
    C: FinGroupDatum
    actions: Dict[int, np.ndarray]
    name: str = "model"

    @classmethod
    def from_config(cls, config: Dict[str, Any], name: str = "model") -> CrossedModelDatum:
        """Build from the parsed keys p, d, C.order, C.mul, C.action.<c>."""
        p = check_prime(int(config["p"]))
        order = int(config.get("order", len(config["mul"])))
        C = FinGroupDatum.from_table(config["mul"], list(range(order)), name="C")
        actions = {int(c): np.asarray(m, dtype=np.int64) % p for c, m in config["actions"].items()}
        model = cls(p, int(config["d"]), C, actions, name)
        model.validate()
        return model

    def validate(self) -> None:
        C, p, d = self.C, self.p, self.d
        C.validate()
        if d < 1:
            raise ModelError(f"{self.name}: d must be at least 1")
        for c in range(C.order):
            a = self.actions.get(c)
            if a is None or a.shape != (d, d) or not is_invertible(a, p):
                raise ModelError(f"{self.name}: action of {c} is missing or not invertible", witness=c)
        for c, c2 in itertools.product(range(C.order), repeat=2):
            lhs = matmul_mod(self.actions[c], self.actions[c2], p)
            if not np.array_equal(lhs, self.actions[C.m(c, c2)]):
                raise ModelError(f"{self.name}: action is not a homomorphism", witness=(c, c2))

    @property
    def c_order(self) -> int:
        return self.C.order

    def h1_action(self, c: int) -> np.ndarray:
        """Contragredient action on H^1(U,k) = Hom(U, k)."""
        return inverse_mod(self.actions[c], self.p).T.copy()

    @cached_property
    def lambda_actions(self) -> np.ndarray:
        return np.array([exterior_power_matrix(self.h1_action(c), self.p) for c in range(self.c_order)])

    @cached_property
    def cohomology(self) -> GradedAlgebra:
        return exterior_algebra(self.d, self.p)

    def finite_group(self) -> FinGroupDatum:
        """(Z/p)^d ⋊ C with U = (Z/p)^d, the finite quotient carrying the degree-0 Hecke algebra."""
        return semidirect_group(self.p, self.d, self.C, self.actions)

    def e_index(self, s: int, c: int) -> int:
        return s * self.c_order + c


def build_E(model: CrossedModelDatum) -> GradedAlgebra:
    """E* = Λ(d) ⋊ C with (λ⊗c)(μ⊗c') = (λ ∧ c·μ) ⊗ cc'."""
    L, C, p = model.cohomology, model.C, model.p
    nl, nc = L.dim, model.c_order
    n = nl * nc
    mult = np.zeros((n, n, n), dtype=np.int64)
    for c in range(nc):
        moved = np.einsum("swu,wt->stu", L.mult, model.lambda_actions[c]) % p
        for c2 in range(nc):
            cc = C.m(c, c2)
            for s in range(nl):
                for t in range(nl):
                    mult[model.e_index(s, c), model.e_index(t, c2), nc * np.arange(nl) + cc] = moved[s, t]
    degrees = np.repeat(L.degrees, nc)
    unit = zeros(1, n)[0]
    unit[model.e_index(0, C.identity)] = 1
    labels = tuple(f"{L.labels[s]}⊗c{c}" for s in range(nl) for c in range(nc))
    E = GradedAlgebra(degrees, mult % p, unit, p, labels, f"E({model.name})")
    return E


def duality_character(model: CrossedModelDatum) -> Dict[int, int]:
    """χ_G(c): the scalar of c on H^d(U,k) = Λ^d H^1."""
    return {c: det_mod(model.h1_action(c), model.p) for c in range(model.c_order)}


def anti_involution_J(model: CrossedModelDatum) -> np.ndarray:
    """𝒥(λ⊗c) = (c^{-1}·λ) ⊗ c^{-1}, as a matrix on E*."""
    nl, nc, C = model.cohomology.dim, model.c_order, model.C
    J = zeros(nl * nc, nl * nc)
    for c in range(nc):
        c_inv = int(C.inv[c])
        act = model.lambda_actions[c_inv]
        for s in range(nl):
            for u in range(nl):
                J[model.e_index(u, c_inv), model.e_index(s, c)] = act[u, s]
    return J % model.p


def twist_J_chi(model: CrossedModelDatum) -> np.ndarray:
    """(𝒥⊗χ_G)(λ⊗c) = χ_G(c^{-1})·𝒥(λ⊗c)."""
    chi = duality_character(model)
    J = anti_involution_J(model)
    nl, nc = model.cohomology.dim, model.c_order
    scale = np.array([chi[int(model.C.inv[c])] for _ in range(nl) for c in range(nc)], dtype=np.int64)
    return (J * scale[np.newaxis, :]) % model.p


def anti_multiplicativity_defect(E: GradedAlgebra, sigma: np.ndarray, graded: bool = True) -> Optional[tuple]:
    """First basis pair (a, b) with σ(ab) ≠ (−1)^{|a||b|} σ(b)σ(a), or None."""
    p = E.p
    eye = identity(E.dim)
    images = matmul_mod(sigma, eye, p).T
    for a in range(E.dim):
        for b in range(E.dim):
            lhs = matmul_mod(sigma, E.multiply(eye[a], eye[b]), p)
            rhs = E.multiply(images[b], images[a])
            if graded and (E.degrees[a] * E.degrees[b]) % 2:
                rhs = (-rhs) % p
            if not np.array_equal(lhs, rhs):
                return (a, b)
    return None


# Modules attached to the model


def trivial_module(E: GradedAlgebra, model: CrossedModelDatum, degree: int = 0, chi_power: int = 0) -> GradedModule:
    """k in one degree: E^{>0} acts by zero, c acts by χ_G(c)^chi_power."""
    chi = duality_character(model)
    nl, nc = model.cohomology.dim, model.c_order
    action = np.zeros((E.dim, 1, 1), dtype=np.int64)
    for c in range(nc):
        action[model.e_index(0, c), 0, 0] = pow(chi[c], chi_power, model.p)
    name = "k" if chi_power == 0 else f"k_χ^{chi_power}"
    return GradedModule(E, "right", np.array([degree]), action, ("1",), name if degree == 0 else f"{name}[{-degree}]")


def cohomology_module(E: GradedAlgebra, model: CrossedModelDatum) -> GradedModule:
    """H*(U,k) = Λ(d) as a right E*-module: λ·(μ⊗c) = c^{-1}·(λ ∧ μ)."""
    L, p = model.cohomology, model.p
    nl, nc = L.dim, model.c_order
    action = np.zeros((E.dim, nl, nl), dtype=np.int64)
    for t in range(nl):
        wedge = L.right_operator(np.eye(nl, dtype=np.int64)[t])
        for c in range(nc):
            act = model.lambda_actions[int(model.C.inv[c])]
            action[model.e_index(t, c)] = matmul_mod(act, wedge, p)
    return GradedModule(E, "right", L.degrees.copy(), action, L.labels, "H*(U,k)")


def augmentation_to_cohomology(model: CrossedModelDatum) -> np.ndarray:
    """E* -> H*(U,k), λ⊗c ↦ c^{-1}·λ (the module map x ↦ 1·x)."""
    nl, nc = model.cohomology.dim, model.c_order
    out = zeros(nl, nl * nc)
    for c in range(nc):
        act = model.lambda_actions[int(model.C.inv[c])]
        for s in range(nl):
            out[:, model.e_index(s, c)] = act[:, s]
    return out % model.p
