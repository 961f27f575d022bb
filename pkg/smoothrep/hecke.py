"""
The Hecke algebra k[U\\G/U] of U-biinvariant functions under convolution.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from exactla.matrix import matmul_mod, zeros
from smoothrep.groups import FinGroupDatum
from utils.errors import ModelError

logger = logging.getLogger(__name__)


def convolve(f: np.ndarray, f2: np.ndarray, G: FinGroupDatum, p: int) -> np.ndarray:
    """(f * f')(x) = Σ_{y∈G/U} f(y) f'(y^{-1} x) for functions on G."""
    out = np.zeros(G.order, dtype=np.int64)
    for r in G.coset_reps:
        if f[r] % p:
            out = (out + f[r] * f2[G.mul[G.inv[r], :]]) % p
    return out


def indicator(G: FinGroupDatum, k: int) -> np.ndarray:
    f = np.zeros(G.order, dtype=np.int64)
    f[list(G.double_cosets[k])] = 1
    return f


@dataclass(frozen=True, eq=False)
class HeckeAlgebra:
    """Basis: indicators of the double cosets U\\G/U; mult[a, b] = coordinates of e_a * e_b."""

    group: FinGroupDatum
    mult: np.ndarray
    p: int

    @property
    def dim(self) -> int:
        return int(self.mult.shape[0])

    @property
    def unit(self) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[0] = 1
        return e

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", a, b, self.mult) % self.p

    def coordinates(self, f: np.ndarray) -> np.ndarray:
        """Coordinates of a biinvariant function (its values at double-coset representatives)."""
        G = self.group
        return np.array([f[G.double_coset_rep(k)] for k in range(self.dim)], dtype=np.int64) % self.p

    def function(self, coords: np.ndarray) -> np.ndarray:
        G = self.group
        f = np.zeros(G.order, dtype=np.int64)
        for k in range(self.dim):
            f[list(G.double_cosets[k])] = coords[k]
        return f % self.p

    def check_associative(self) -> Optional[Tuple[int, int, int]]:
        left = np.einsum("abx,xcy->abcy", self.mult, self.mult) % self.p
        right = np.einsum("bcx,axy->abcy", self.mult, self.mult) % self.p
        bad = np.argwhere(left != right)
        return tuple(int(x) for x in bad[0][:3]) if bad.size else None

    def is_commutative(self) -> bool:
        return np.array_equal(self.mult, self.mult.transpose(1, 0, 2))


def hecke(G: FinGroupDatum, p: int) -> HeckeAlgebra:
    """Structure constants of k[U\\G/U]; raises ModelError if convolution fails associativity."""
    n = len(G.double_cosets)
    mult = np.zeros((n, n, n), dtype=np.int64)
    basis = [indicator(G, k) for k in range(n)]
    for a in range(n):
        for b in range(n):
            prod = convolve(basis[a], basis[b], G, p)
            mult[a, b] = [prod[G.double_coset_rep(c)] for c in range(n)]
    H = HeckeAlgebra(G, mult % p, p)
    bad = H.check_associative()
    if bad is not None:
        raise ModelError(f"convolution on {G.name} is not associative", witness=bad)
    logger.debug("Hecke algebra of %s: dim %d", G.name, n)
    return H


def anti_automorphism_J0(H: HeckeAlgebra) -> np.ndarray:
    """char_{UhU} ↦ char_{Uh^{-1}U}, i.e. f ↦ (x ↦ f(x^{-1}))."""
    J = zeros(H.dim, H.dim)
    for k in range(H.dim):
        J[H.group.inverse_double_coset(k), k] = 1
    return J


def endomorphism(H: HeckeAlgebra, coords: np.ndarray) -> np.ndarray:
    """T_f(φ) = φ * f on X_U (basis char_{r_i U}); T_{f*f'} = T_{f'} ∘ T_f."""
    G, p = H.group, H.p
    f = H.function(coords)
    n = G.index
    T = zeros(n, n)
    for i, r_i in enumerate(G.coset_reps):
        for j, r_j in enumerate(G.coset_reps):
            T[j, i] = f[G.m(int(G.inv[r_i]), r_j)]
    return T % p


def j0_product_defect(H: HeckeAlgebra, a: int, b: int) -> np.ndarray:
    """J0(e_a e_b) - J0(e_b) J0(e_a)."""
    J = anti_automorphism_J0(H)
    ea, eb = np.eye(H.dim, dtype=np.int64)[a], np.eye(H.dim, dtype=np.int64)[b]
    lhs = matmul_mod(J, H.multiply(ea, eb), H.p)
    rhs = H.multiply(matmul_mod(J, eb, H.p), matmul_mod(J, ea, H.p))
    return (lhs - rhs) % H.p
