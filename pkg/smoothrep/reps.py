"""
Representations of finite groups over F_p, induction from U, and
U-equivariant Hom spaces.

An element φ of ind_U^G(V) is stored by its values φ(r_i) at the coset
representatives; the value at g = r_i u is u^{-1}·φ(r_i).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence

import numpy as np

from exactla.matrix import identity, matmul_mod, nullspace, zeros
from smoothrep.groups import FinGroupDatum
from utils.errors import DimensionMismatchError, EquivarianceError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Rep:
    """A representation of ``group``: mats[g] is the (dim x dim) matrix of g."""

    group: FinGroupDatum
    mats: np.ndarray
    p: int
    name: str = "V"

    @property
    def dim(self) -> int:
        return int(self.mats.shape[1])

    def act(self, g: int) -> np.ndarray:
        return self.mats[g]

    def validate(self, elements: Optional[Sequence[int]] = None) -> None:
        G = self.group
        elements = list(range(G.order)) if elements is None else list(elements)
        if not np.array_equal(self.mats[G.identity], identity(self.dim)):
            raise EquivarianceError(f"{self.name}: identity does not act trivially")
        for g in elements:
            for h in elements:
                lhs = matmul_mod(self.mats[g], self.mats[h], self.p)
                if not np.array_equal(lhs, self.mats[G.m(g, h)]):
                    raise EquivarianceError(f"{self.name}: action is not multiplicative at ({g}, {h})")

    def conjugated(self, h: int) -> Rep:
        """V^h: g acts through h^{-1} g h."""
        G = self.group
        h_inv = int(G.inv[h])
        order = [G.m(h_inv, g, h) for g in range(G.order)]
        return Rep(G, self.mats[order], self.p, f"{self.name}^{G.label(h)}")


def trivial_rep(group: FinGroupDatum, p: int, dim: int = 1) -> Rep:
    mats = np.broadcast_to(identity(dim), (group.order, dim, dim)).copy()
    return Rep(group, mats, p, "k" if dim == 1 else f"k^{dim}")


def hom_basis(source: Rep, target: Rep, elements: Sequence[int]) -> List[np.ndarray]:
    """Basis of {X : X ρ_s(g) = ρ_t(g) X for g in elements} (row-major vec)."""
    if source.group is not target.group:
        raise DimensionMismatchError("representations of different groups")
    s, t, p = source.dim, target.dim, source.p
    blocks = [
        (np.kron(identity(t), source.mats[g].T) - np.kron(target.mats[g], identity(s))) % p
        for g in elements
    ]
    system = np.vstack(blocks) if blocks else zeros(0, s * t)
    kernel = nullspace(system, p)
    return [kernel[:, k].reshape(t, s).copy() for k in range(kernel.shape[1])]


def is_equivariant(matrix: np.ndarray, source: Rep, target: Rep, elements: Sequence[int]) -> bool:
    p = source.p
    return all(
        np.array_equal(matmul_mod(matrix, source.mats[g], p), matmul_mod(target.mats[g], matrix, p))
        for g in elements
    )


@dataclass(frozen=True, eq=False)
class InducedRep:
    """ind_U^G(V) for a G-representation V restricted to U."""

    base: Rep

    @property
    def group(self) -> FinGroupDatum:
        return self.base.group

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def fiber(self) -> int:
        return self.base.dim

    @property
    def dim(self) -> int:
        return self.group.index * self.fiber

    def block(self, i: int) -> slice:
        return slice(i * self.fiber, (i + 1) * self.fiber)

    def projector(self, i: int) -> np.ndarray:
        """P_i: φ ↦ φ(r_i)."""
        out = zeros(self.fiber, self.dim)
        out[:, self.block(i)] = identity(self.fiber)
        return out

    def eval_matrix(self, g: int) -> np.ndarray:
        """E_g: φ ↦ φ(g) = u^{-1}·φ(r_i) for g = r_i u."""
        G = self.group
        i, u = G.decompose(g)
        out = zeros(self.fiber, self.dim)
        out[:, self.block(i)] = self.base.mats[G.inv[u]]
        return out

    def char_matrix(self, h: int) -> np.ndarray:
        """C_h: v ↦ char_{h,U}^v, the function on hU with value v at h."""
        G = self.group
        i, u = G.decompose(h)
        out = zeros(self.dim, self.fiber)
        out[self.block(i), :] = self.base.mats[u]
        return out

    @cached_property
    def rep(self) -> Rep:
        G, p = self.group, self.p
        mats = np.zeros((G.order, self.dim, self.dim), dtype=np.int64)
        for g in range(G.order):
            g_inv = int(G.inv[g])
            for j, r_j in enumerate(G.coset_reps):
                i, u = G.decompose(G.m(g_inv, r_j))
                mats[g][self.block(j), self.block(i)] = self.base.mats[G.inv[u]]
        return Rep(G, mats % p, p, f"ind({self.base.name})")


def induce(G: FinGroupDatum, V: Rep) -> InducedRep:
    """ind_U^G(V|_U) with its G-action; verifies V on U."""
    if V.group is not G:
        raise DimensionMismatchError("base representation belongs to another group")
    try:
        V.validate(G.subgroup)
    except EquivarianceError as exc:
        raise EquivarianceError(f"not a representation of U: {exc}") from exc
    ind = InducedRep(V)
    logger.debug("induced %s to %s: dim %d", V.name, G.name, ind.dim)
    return ind


def permutation_rep(G: FinGroupDatum, p: int) -> Rep:
    """X_U = ind_U^G(k) as a G-representation."""
    return induce(G, trivial_rep(G, p)).rep


def char_fn(ind: InducedRep, h: int, v: Sequence[int]) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (ind.fiber,):
        raise DimensionMismatchError(f"vector of shape {v.shape} is not in the base space")
    return matmul_mod(ind.char_matrix(h), v, ind.p)


@dataclass(frozen=True, eq=False)
class EquivariantMap:
    """A linear map between representations, equivariant for the listed elements."""

    source: Rep
    target: Rep
    matrix: np.ndarray
    elements: tuple

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.int64) % self.source.p
        object.__setattr__(self, "matrix", m)
        if m.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatchError(
                f"matrix {m.shape} does not map dim {self.source.dim} to dim {self.target.dim}"
            )

    def check(self) -> None:
        if not is_equivariant(self.matrix, self.source, self.target, self.elements):
            raise EquivarianceError(f"map {self.source.name} -> {self.target.name} is not equivariant")
