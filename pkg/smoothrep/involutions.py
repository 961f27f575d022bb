"""
Degree-0 involutions on Hom spaces of induced representations.

Conventions: V1, V2 are G-representations; ``ind`` objects induce their
U-restrictions.  A map into ind(V) is a (ind.dim x dim W) matrix, a map out
of ind(V) a (dim W x ind.dim) matrix.
"""
from __future__ import annotations

import logging
from typing import Dict, List

import numpy as np

from exactla.matrix import chain_mod, matmul_mod, zeros
from smoothrep.reps import EquivariantMap, InducedRep, Rep
from utils.errors import EquivarianceError, SupportError

logger = logging.getLogger(__name__)


def _require_u_equivariant(matrix: np.ndarray, source: Rep, target: Rep) -> None:
    try:
        EquivariantMap(source, target, matrix, source.group.subgroup).check()
    except EquivarianceError as exc:
        raise EquivarianceError(f"input is not U-equivariant: {exc}") from exc


def involution_J(alpha: np.ndarray, source: Rep, ind: InducedRep) -> np.ndarray:
    """𝒥(α)(x)(g) = g^{-1}·α(g^{-1}x)(g^{-1}) for α ∈ Hom_U(source, Ind V)."""
    _require_u_equivariant(alpha, source, ind.rep)
    G, p = ind.group, ind.p
    blocks = []
    for r in G.coset_reps:
        r_inv = int(G.inv[r])
        blocks.append(chain_mod(p, ind.base.mats[r_inv], ind.eval_matrix(r_inv), alpha, source.mats[r_inv]))
    return np.vstack(blocks)


def j_value_at(alpha: np.ndarray, source: Rep, ind: InducedRep, g: int) -> np.ndarray:
    """The defining formula of 𝒥(α) evaluated at an arbitrary g, as a map source -> V."""
    g_inv = int(ind.group.inv[g])
    return chain_mod(ind.p, ind.base.mats[g_inv], ind.eval_matrix(g_inv), alpha, source.mats[g_inv])


def support(matrix: np.ndarray, ind: InducedRep, side: str = "target") -> List[int]:
    """Double-coset indices on which a map into (target) or out of (source) ind is supported."""
    G = ind.group
    m = np.asarray(matrix) % ind.p
    found = set()
    for i, r in enumerate(G.coset_reps):
        block = m[ind.block(i), :] if side == "target" else m[:, ind.block(i)]
        if np.any(block):
            found.add(int(G.double_coset_index[r]))
    return sorted(found)


def component_split(matrix: np.ndarray, ind: InducedRep, side: str = "target") -> Dict[int, np.ndarray]:
    """Decompose by double coset UhU of the support; components sum to the input."""
    G = ind.group
    m = np.asarray(matrix, dtype=np.int64) % ind.p
    parts: Dict[int, np.ndarray] = {k: np.zeros_like(m) for k in range(len(G.double_cosets))}
    for i, r in enumerate(G.coset_reps):
        k = int(G.double_coset_index[r])
        if side == "target":
            parts[k][ind.block(i), :] = m[ind.block(i), :]
        else:
            parts[k][:, ind.block(i)] = m[:, ind.block(i)]
    return parts


def _double_coset_blocks(ind: InducedRep, h: int) -> List[int]:
    G = ind.group
    k = int(G.double_coset_index[h])
    return [i for i, r in enumerate(G.coset_reps) if G.double_coset_index[r] == k]


def shapiro(h: int, alpha: np.ndarray, source: Rep, ind: InducedRep) -> EquivariantMap:
    """Sh_h(α)(x) = α(x)(h), a U_h-map source -> V^h."""
    _require_u_equivariant(alpha, source, ind.rep)
    inside = set(_double_coset_blocks(ind, h))
    for i in range(ind.group.index):
        if i not in inside and np.any(np.asarray(alpha)[ind.block(i), :] % ind.p):
            raise SupportError(f"map is not supported on U{ind.group.label(h)}U (block {i})")
    beta = matmul_mod(ind.eval_matrix(h), alpha, ind.p)
    return EquivariantMap(source, ind.base.conjugated(h), beta, ind.group.conjugate_subgroup(h))


def shapiro_inverse(h: int, beta: np.ndarray, source: Rep, ind: InducedRep) -> np.ndarray:
    """The unique α supported on UhU with α(x)(h) = β(x)."""
    G, p = ind.group, ind.p
    EquivariantMap(source, ind.base.conjugated(h), beta, G.conjugate_subgroup(h)).check()
    alpha = zeros(ind.dim, source.dim)
    h_inv = int(G.inv[h])
    sub = set(G.subgroup)
    for i in _double_coset_blocks(ind, h):
        r = G.coset_reps[i]
        for u in G.subgroup:
            # r = u h u''
            u2 = G.m(h_inv, int(G.inv[u]), r)
            if u2 in sub:
                alpha[ind.block(i), :] = chain_mod(p, ind.base.mats[G.inv[u2]], beta, source.mats[G.inv[u]])
                break
    return alpha


def h_star(h: int, beta: np.ndarray, source: Rep, target: Rep) -> np.ndarray:
    """(h_*β)(x) = h·β(h·x)."""
    return chain_mod(source.p, target.mats[h], beta, source.mats[h])


def rec_map(alpha: np.ndarray, ind1: InducedRep, ind2: InducedRep) -> np.ndarray:
    """rec(α)(φ) = Σ_{g∈G/U} α(φ(g))(g^{-1}) for α ∈ Hom_U(V2, Ind V1)."""
    _require_u_equivariant(alpha, ind2.base, ind1.rep)
    G, p = ind1.group, ind1.p
    out = zeros(ind1.fiber, ind2.dim)
    for i, r in enumerate(G.coset_reps):
        out = (out + chain_mod(p, ind1.eval_matrix(int(G.inv[r])), alpha, ind2.projector(i))) % p
    return out


def rec_inv(beta: np.ndarray, ind1: InducedRep, ind2: InducedRep) -> np.ndarray:
    """rec^{-1}(β)(v)(g) = β(char_{g^{-1},U}^v) for β ∈ Hom_U(ind V2, V1)."""
    _require_u_equivariant(beta, ind2.rep, ind1.base)
    G, p = ind1.group, ind1.p
    return np.vstack([matmul_mod(beta, ind2.char_matrix(int(G.inv[r])), p) for r in G.coset_reps])


def involution_Jprime(lam: np.ndarray, ind2: InducedRep, target: Rep) -> np.ndarray:
    """𝒥′(λ)(φ) = Σ_{g∈G/U} g·λ(char_{g^{-1},U}^{g φ(g)}) for λ ∈ Hom_U(ind V2, target)."""
    _require_u_equivariant(lam, ind2.rep, target)
    G, p = ind2.group, ind2.p
    out = zeros(target.dim, ind2.dim)
    for i, r in enumerate(G.coset_reps):
        term = chain_mod(
            p, target.mats[r], lam, ind2.char_matrix(int(G.inv[r])), ind2.base.mats[r], ind2.projector(i)
        )
        out = (out + term) % p
    return out


def jprime_via_rec(lam: np.ndarray, ind1: InducedRep, ind2: InducedRep) -> np.ndarray:
    """rec ∘ 𝒥 ∘ rec^{-1}, assembled independently of the closed formula."""
    return rec_map(involution_J(rec_inv(lam, ind1, ind2), ind2.base, ind1), ind1, ind2)
