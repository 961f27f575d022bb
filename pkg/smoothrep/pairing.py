"""
Refined pairing, trace, Frobenius maps and the X_U ⊗ X_U identification.
"""
from __future__ import annotations

import logging
from typing import Dict, List

import numpy as np

from exactla.matrix import block_diag, chain_mod, matmul_mod, rank_mod, zeros
from smoothrep.reps import InducedRep, Rep, hom_basis, induce, trivial_rep
from utils.errors import EquivarianceError

logger = logging.getLogger(__name__)


def pairing_operator(D: np.ndarray, ind1: InducedRep, ind2: InducedRep) -> np.ndarray:
    """φ ↦ ⟨φ, D⟩ with ⟨φ, D⟩(g) = D(g φ(g))(g), for D ∈ Hom_U(V1, ind V2)."""
    G, p = ind1.group, ind1.p
    rows = []
    for i, r in enumerate(G.coset_reps):
        rows.append(chain_mod(p, ind2.eval_matrix(r), D, ind1.base.mats[r], ind1.projector(i)))
    return np.vstack(rows)


def pairing_value_at(D: np.ndarray, ind1: InducedRep, ind2: InducedRep, g: int) -> np.ndarray:
    """φ ↦ D(g φ(g))(g) at an arbitrary g (well-definedness witness)."""
    return chain_mod(ind1.p, ind2.eval_matrix(g), D, ind1.base.mats[g], ind1.eval_matrix(g))


def refined_pairing(C: np.ndarray, D: np.ndarray, ind1: InducedRep, ind2: InducedRep) -> np.ndarray:
    """⟨C, D⟩(φ) = C(⟨φ, D⟩): ind V1 -> V3."""
    return matmul_mod(C, pairing_operator(D, ind1, ind2), ind1.p)


def trace_Tr(F: np.ndarray, ind1: InducedRep) -> np.ndarray:
    """Tr(F)(v) = Σ_{g∈G/U} F(char_{g,U}^{g^{-1} v})."""
    G, p = ind1.group, ind1.p
    out = zeros(F.shape[0], ind1.fiber)
    for r in G.coset_reps:
        out = (out + chain_mod(p, F, ind1.char_matrix(r), ind1.base.mats[G.inv[r]])) % p
    return out


def corestriction(h: int, v: np.ndarray, V: Rep) -> np.ndarray:
    """Σ_{u∈U/U_h} u·v."""
    G = V.group
    out = np.zeros(V.dim, dtype=np.int64)
    for u in G.quotient_reps(G.subgroup, G.conjugate_subgroup(h)):
        out = (out + matmul_mod(V.mats[u], v, V.p)) % V.p
    return out


def frobenius_Fr(h: int, v: np.ndarray, V: Rep, xu: InducedRep) -> np.ndarray:
    """Fr_h(v)(φ) = Σ_{u∈U/U_h} φ(uh)·u·v, a U-map X_U -> V supported on UhU."""
    G, p = V.group, V.p
    v = np.asarray(v, dtype=np.int64) % p
    u_h = G.conjugate_subgroup(h)
    for u in u_h:
        if not np.array_equal(matmul_mod(V.mats[u], v, p), v):
            raise EquivarianceError(f"vector is not fixed by U_h (moved by {G.label(u)})")
    out = zeros(V.dim, xu.dim)
    for u in G.quotient_reps(G.subgroup, u_h):
        j = int(G.coset_index[G.m(u, h)])
        out[:, j] = (out[:, j] + matmul_mod(V.mats[u], v, p)) % p
    return out


def fixed_vectors(V: Rep, elements) -> List[np.ndarray]:
    """Basis of V^H for H given by its elements."""
    return [b[:, 0] for b in hom_basis(trivial_rep(V.group, V.p), V, elements)]


def tensor_square(X: Rep) -> Rep:
    mats = np.array([np.kron(m, m) for m in X.mats], dtype=np.int64) % X.p
    return Rep(X.group, mats, X.p, f"{X.name}⊗{X.name}")


def swap_matrix(n: int) -> np.ndarray:
    """e_a ⊗ e_b ↦ e_b ⊗ e_a on k^n ⊗ k^n."""
    out = zeros(n * n, n * n)
    for a in range(n):
        for b in range(n):
            out[b * n + a, a * n + b] = 1
    return out


def diagonal_embedding(n: int) -> np.ndarray:
    """ι: char_{gU} ↦ char_U ⊗ char_{gU} (coset 0 is U)."""
    out = zeros(n * n, n)
    for j in range(n):
        out[j, j] = 1
    return out


def induced_square_map(xu: InducedRep) -> np.ndarray:
    """ind_U^G(X_U) -> X_U ⊗ X_U, φ ↦ Σ_{h∈G/U} char_{hU} ⊗ h·φ(h)."""
    return block_diag([xu.rep.mats[r] for r in xu.group.coset_reps])


def swap_identification(V: Rep) -> Dict[str, object]:
    """Hom_G(X_U ⊗ X_U, V) with the restriction Λ ↦ Λ∘ι and the swap pullback ς*."""
    G, p = V.group, V.p
    xu = induce(G, trivial_rep(G, p))
    square = tensor_square(xu.rep)
    n = xu.dim
    basis = hom_basis(square, V, range(G.order))
    iota = diagonal_embedding(n)
    swap = swap_matrix(n)
    restricted = [matmul_mod(lam, iota, p) for lam in basis]
    pulled = [matmul_mod(matmul_mod(lam, swap, p), iota, p) for lam in basis]
    flat = np.array([r.reshape(-1) for r in restricted]).T if restricted else zeros(V.dim * n, 0)
    return {
        "xu": xu,
        "square": square,
        "basis": basis,
        "restricted": restricted,
        "swapped": pulled,
        "restriction_rank": rank_mod(flat, p) if flat.size else 0,
        "hom_u_dim": len(hom_basis(xu.rep, V, G.subgroup)),
    }
