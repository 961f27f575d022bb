"""
Exhaustive degree-0 verifications on a finite group pair.

Every check returns a result dict ``{"success", "checked", "witness"?}``;
the witness names the offending basis tuple and both sides.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Tuple

import numpy as np

from exactla.matrix import identity, is_invertible, matmul_mod, rank_mod
from smoothrep.groups import FinGroupDatum
from smoothrep.hecke import anti_automorphism_J0, endomorphism, hecke, j0_product_defect
from smoothrep.involutions import (
    component_split,
    h_star,
    involution_J,
    involution_Jprime,
    j_value_at,
    jprime_via_rec,
    rec_inv,
    rec_map,
    shapiro,
    shapiro_inverse,
    support,
)
from smoothrep.pairing import (
    corestriction,
    fixed_vectors,
    frobenius_Fr,
    induced_square_map,
    pairing_operator,
    pairing_value_at,
    refined_pairing,
    swap_identification,
    tensor_square,
    trace_Tr,
)
from smoothrep.reps import InducedRep, Rep, hom_basis, induce, is_equivariant, permutation_rep, trivial_rep
from utils.errors import WorkbenchError
from utils.helpers import check_result, mismatch

logger = logging.getLogger(__name__)


@dataclass
class GroupPairContext:
    """A group pair with the representations the suites range over."""

    group: FinGroupDatum
    p: int
    extra_reps: List[Rep] = field(default_factory=list)

    @cached_property
    def k(self) -> Rep:
        return trivial_rep(self.group, self.p)

    @cached_property
    def xu(self) -> Rep:
        X = permutation_rep(self.group, self.p)
        return Rep(X.group, X.mats, X.p, "X_U")

    @cached_property
    def reps(self) -> List[Rep]:
        return [self.k, self.xu] + list(self.extra_reps)

    def ind(self, V: Rep) -> InducedRep:
        return self._inds.setdefault(V.name, induce(self.group, V))

    @cached_property
    def _inds(self) -> Dict[str, InducedRep]:
        return {}

    def pairs(self) -> List[Tuple[Rep, Rep]]:
        """(V1, V2) pairs for the involution suites."""
        return [(self.k, self.k), (self.xu, self.k), (self.k, self.xu)]

    def triples(self) -> List[Tuple[Rep, Rep, Rep]]:
        """(V1, V2, V3) triples for the pairing suites."""
        return [(self.k, self.k, self.k), (self.k, self.k, self.xu)] + [
            (self.k, self.k, V) for V in self.extra_reps
        ]

    def hom_into_ind(self, W: Rep, V: Rep) -> List[np.ndarray]:
        """Basis of Hom_U(W, ind V)."""
        return hom_basis(W, self.ind(V).rep, self.group.subgroup)

    def hom_from_ind(self, V: Rep, W: Rep) -> List[np.ndarray]:
        """Basis of Hom_U(ind V, W)."""
        return hom_basis(self.ind(V).rep, W, self.group.subgroup)


def _tag(*reps: Rep) -> str:
    return ",".join(r.name for r in reps)


def check_induce(ctx: GroupPairContext) -> Dict[str, Any]:
    """ind_U^G(V) is a G-representation of dimension [G:U]·dim V for every V in the sweep."""
    checked = 0
    for V in ctx.reps:
        try:
            ind = ctx.ind(V)
            ind.rep.validate()
        except WorkbenchError as exc:
            return check_result(False, checked, witness={"rep": V.name, "error": f"{type(exc).__name__}: {exc}"})
        if ind.dim != ctx.group.index * V.dim:
            return check_result(False, checked, witness={"rep": V.name, "dim": ind.dim})
        checked += 1
    return check_result(True, checked)


def check_char_action(ctx: GroupPairContext) -> Dict[str, Any]:
    """g·char_{h,U}^v = char_{gh,U}^v for all g, h and basis vectors v."""
    G, p = ctx.group, ctx.p
    checked = 0
    for V in ctx.reps:
        ind = ctx.ind(V)
        for g, h in itertools.product(range(G.order), repeat=2):
            lhs = matmul_mod(ind.rep.mats[g], ind.char_matrix(h), p)
            rhs = ind.char_matrix(G.m(g, h))
            if not np.array_equal(lhs, rhs):
                return check_result(False, checked, witness=mismatch((V.name, G.label(g), G.label(h)), lhs, rhs))
            checked += 1
    return check_result(True, checked)


def check_J_involution(ctx: GroupPairContext) -> Dict[str, Any]:
    """𝒥∘𝒥 = id and the defining formula holds at every g, not only at coset representatives."""
    G, p = ctx.group, ctx.p
    checked = 0
    for W, V in ctx.pairs():
        ind = ctx.ind(V)
        for n, alpha in enumerate(ctx.hom_into_ind(W, V)):
            j_alpha = involution_J(alpha, W, ind)
            twice = involution_J(j_alpha, W, ind)
            if not np.array_equal(twice, alpha % p):
                return check_result(False, checked, witness=mismatch((_tag(W, V), n), twice, alpha))
            for g in range(G.order):
                lhs = matmul_mod(ind.eval_matrix(g), j_alpha, p)
                rhs = j_value_at(alpha, W, ind, g)
                if not np.array_equal(lhs, rhs):
                    return check_result(False, checked, witness=mismatch((_tag(W, V), n, G.label(g)), lhs, rhs))
            checked += 1
    return check_result(True, checked)


def check_J_support(ctx: GroupPairContext) -> Dict[str, Any]:
    """Components on UhU go to components on Uh^{-1}U under 𝒥 and 𝒥′."""
    G = ctx.group
    checked = 0
    for W, V in ctx.pairs():
        ind = ctx.ind(V)
        for n, alpha in enumerate(ctx.hom_into_ind(W, V)):
            for k, part in component_split(alpha, ind).items():
                got = support(involution_J(part, W, ind), ind)
                allowed = [G.inverse_double_coset(k)] if np.any(part) else []
                if got != allowed:
                    return check_result(False, checked, witness={"map": (_tag(W, V), n), "component": k, "support": got})
                checked += 1
        for n, lam in enumerate(ctx.hom_from_ind(V, W)):
            for k, part in component_split(lam, ind, side="source").items():
                got = support(involution_Jprime(part, ind, W), ind, side="source")
                allowed = [G.inverse_double_coset(k)] if np.any(part) else []
                if got != allowed:
                    return check_result(False, checked, witness={"map'": (_tag(V, W), n), "component": k, "support": got})
                checked += 1
    return check_result(True, checked)


def check_component_split(ctx: GroupPairContext) -> Dict[str, Any]:
    """The double-coset components of a map W -> ind V sum back to the map."""
    checked = 0
    for W, V in ctx.pairs():
        ind = ctx.ind(V)
        for n, alpha in enumerate(ctx.hom_into_ind(W, V)):
            parts = component_split(alpha, ind)
            total = sum(parts.values()) % ctx.p
            if not np.array_equal(total, alpha % ctx.p):
                return check_result(False, checked, witness=mismatch((_tag(W, V), n), total, alpha))
            checked += 1
    return check_result(True, checked)


def check_shapiro(ctx: GroupPairContext) -> Dict[str, Any]:
    """Sh_{h^{-1}} ∘ 𝒥 = h_* ∘ Sh_h, and Sh_h is bijective with the explicit inverse."""
    G, p = ctx.group, ctx.p
    checked = 0
    for W, V in ctx.pairs():
        ind = ctx.ind(V)
        basis = ctx.hom_into_ind(W, V)
        for k in range(len(G.double_cosets)):
            h = G.double_coset_rep(k)
            h_inv = int(G.inv[h])
            parts = [component_split(a, ind)[k] for a in basis]
            for n, alpha in enumerate(parts):
                sh = shapiro(h, alpha, W, ind)
                sh.check()
                lhs = shapiro(h_inv, involution_J(alpha, W, ind), W, ind).matrix
                rhs = h_star(h, sh.matrix, W, V)
                if not np.array_equal(lhs, rhs):
                    return check_result(False, checked, witness=mismatch((_tag(W, V), G.label(h), n), lhs, rhs))
                back = shapiro_inverse(h, sh.matrix, W, ind)
                if not np.array_equal(back, alpha % p):
                    return check_result(False, checked, witness=mismatch(("inverse", _tag(W, V), G.label(h), n), back, alpha))
                checked += 1
            # Sh_h is onto Hom_{U_h}(W, V^h)
            target = hom_basis(W, V.conjugated(h), G.conjugate_subgroup(h))
            images = [shapiro(h, a, W, ind).matrix.reshape(-1) for a in parts]
            rank = rank_mod(np.array(images).T, p) if images else 0
            if rank != len(target):
                return check_result(False, checked, witness={"h": G.label(h), "rank": rank, "target_dim": len(target)})
    return check_result(True, checked)


def check_rec(ctx: GroupPairContext) -> Dict[str, Any]:
    """rec and rec^{-1} are mutually inverse between Hom_U(V2, Ind V1) and Hom_U(ind V2, V1)."""
    p = ctx.p
    checked = 0
    for V1, V2 in ctx.pairs():
        ind1, ind2 = ctx.ind(V1), ctx.ind(V2)
        alphas = ctx.hom_into_ind(V2, V1)
        betas = ctx.hom_from_ind(V2, V1)
        if len(alphas) != len(betas):
            return check_result(False, checked, witness={"reps": _tag(V1, V2), "dims": (len(alphas), len(betas))})
        for n, alpha in enumerate(alphas):
            back = rec_inv(rec_map(alpha, ind1, ind2), ind1, ind2)
            if not np.array_equal(back, alpha % p):
                return check_result(False, checked, witness=mismatch(("rec_inv∘rec", _tag(V1, V2), n), back, alpha))
            checked += 1
        for n, beta in enumerate(betas):
            back = rec_map(rec_inv(beta, ind1, ind2), ind1, ind2)
            if not np.array_equal(back, beta % p):
                return check_result(False, checked, witness=mismatch(("rec∘rec_inv", _tag(V1, V2), n), back, beta))
            checked += 1
    return check_result(True, checked)


def check_Jprime(ctx: GroupPairContext) -> Dict[str, Any]:
    """𝒥′ is involutive and equals rec ∘ 𝒥 ∘ rec^{-1}."""
    p = ctx.p
    checked = 0
    for V1, V2 in ctx.pairs():
        ind1, ind2 = ctx.ind(V1), ctx.ind(V2)
        for n, lam in enumerate(ctx.hom_from_ind(V2, V1)):
            jp = involution_Jprime(lam, ind2, V1)
            twice = involution_Jprime(jp, ind2, V1)
            if not np.array_equal(twice, lam % p):
                return check_result(False, checked, witness=mismatch(("𝒥′∘𝒥′", _tag(V1, V2), n), twice, lam))
            via = jprime_via_rec(lam, ind1, ind2)
            if not np.array_equal(via, jp):
                return check_result(False, checked, witness=mismatch(("rec∘𝒥∘rec⁻¹", _tag(V1, V2), n), via, jp))
            checked += 1
    return check_result(True, checked)


def check_pairing_well_defined(ctx: GroupPairContext) -> Dict[str, Any]:
    """⟨φ, D⟩(g) computed at every g agrees with the coset-representative assembly."""
    G, p = ctx.group, ctx.p
    checked = 0
    for V1, V2, _ in ctx.triples()[:1] + [(ctx.xu, ctx.k, ctx.k)]:
        ind1, ind2 = ctx.ind(V1), ctx.ind(V2)
        for n, D in enumerate(ctx.hom_into_ind(V1, V2)):
            op = pairing_operator(D, ind1, ind2)
            if not is_equivariant(op, ind1.rep, ind2.rep, G.subgroup):
                return check_result(False, checked, witness={"D": (_tag(V1, V2), n), "error": "pairing not U-equivariant"})
            for g in range(G.order):
                lhs = matmul_mod(ind2.eval_matrix(g), op, p)
                rhs = pairing_value_at(D, ind1, ind2, g)
                if not np.array_equal(lhs, rhs):
                    return check_result(False, checked, witness=mismatch((_tag(V1, V2), n, G.label(g)), lhs, rhs))
            checked += 1
    return check_result(True, checked)


def check_refined_trace(ctx: GroupPairContext) -> Dict[str, Any]:
    """Tr(⟨C, D⟩) = C ∘ D over complete Hom bases."""
    p = ctx.p
    checked = 0
    for V1, V2, V3 in ctx.triples():
        ind1, ind2 = ctx.ind(V1), ctx.ind(V2)
        for (nc, C), (nd, D) in itertools.product(
            enumerate(ctx.hom_from_ind(V2, V3)), enumerate(ctx.hom_into_ind(V1, V2))
        ):
            lhs = trace_Tr(refined_pairing(C, D, ind1, ind2), ind1)
            rhs = matmul_mod(C, D, p)
            if not np.array_equal(lhs, rhs):
                return check_result(False, checked, witness=mismatch((_tag(V1, V2, V3), nc, nd), lhs, rhs))
            checked += 1
    return check_result(True, checked)


def check_J_prime_J(ctx: GroupPairContext) -> Dict[str, Any]:
    """⟨𝒥′(F), G⟩ = 𝒥′(⟨F, 𝒥(G)⟩)."""
    checked = 0
    for V1, V2, V3 in ctx.triples():
        ind1, ind2 = ctx.ind(V1), ctx.ind(V2)
        for (nf, F), (ng, Gm) in itertools.product(
            enumerate(ctx.hom_from_ind(V2, V3)), enumerate(ctx.hom_into_ind(V1, V2))
        ):
            lhs = refined_pairing(involution_Jprime(F, ind2, V3), Gm, ind1, ind2)
            rhs = involution_Jprime(refined_pairing(F, involution_J(Gm, V1, ind2), ind1, ind2), ind1, V3)
            if not np.array_equal(lhs, rhs):
                return check_result(False, checked, witness=mismatch((_tag(V1, V2, V3), nf, ng), lhs, rhs))
            checked += 1
    return check_result(True, checked)


def check_pairing_trace_composite(ctx: GroupPairContext) -> Dict[str, Any]:
    """Tr(⟨𝒥′F, G⟩) = Tr(𝒥′⟨F, 𝒥G⟩) = 𝒥′(F) ∘ G."""
    p = ctx.p
    checked = 0
    for V1, V2, V3 in ctx.triples():
        ind1, ind2 = ctx.ind(V1), ctx.ind(V2)
        for (nf, F), (ng, Gm) in itertools.product(
            enumerate(ctx.hom_from_ind(V2, V3)), enumerate(ctx.hom_into_ind(V1, V2))
        ):
            jf = involution_Jprime(F, ind2, V3)
            lhs = trace_Tr(involution_Jprime(refined_pairing(F, involution_J(Gm, V1, ind2), ind1, ind2), ind1, V3), ind1)
            rhs = matmul_mod(jf, Gm, p)
            if not np.array_equal(lhs, rhs):
                return check_result(False, checked, witness=mismatch((_tag(V1, V2, V3), nf, ng), lhs, rhs))
            checked += 1
    return check_result(True, checked)


def check_fin_image(ctx: GroupPairContext) -> Dict[str, Any]:
    """The pairing lands in U-equivariant maps ind V1 -> V3 (all of them are finite here)."""
    G = ctx.group
    checked = 0
    for V1, V2, V3 in ctx.triples():
        ind1, ind2 = ctx.ind(V1), ctx.ind(V2)
        for C, D in itertools.product(ctx.hom_from_ind(V2, V3), ctx.hom_into_ind(V1, V2)):
            out = refined_pairing(C, D, ind1, ind2)
            if not is_equivariant(out, ind1.rep, V3, G.subgroup):
                return check_result(False, checked, witness={"reps": _tag(V1, V2, V3)})
            checked += 1
    return check_result(True, checked)


def check_swap_lemma(ctx: GroupPairContext) -> Dict[str, Any]:
    """Under Hom_U(X_U, V) ≅ Hom_G(X_U ⊗ X_U, V), 𝒥′ corresponds to the swap pullback."""
    G, p = ctx.group, ctx.p
    checked = 0
    for V in ctx.reps:
        data = swap_identification(V)
        xu = data["xu"]
        if data["restriction_rank"] != len(data["basis"]) or len(data["basis"]) != data["hom_u_dim"]:
            return check_result(False, checked, witness={
                "rep": V.name, "hom_G": len(data["basis"]), "rank": data["restriction_rank"], "hom_U": data["hom_u_dim"]
            })
        for n, (lam, swapped) in enumerate(zip(data["restricted"], data["swapped"])):
            lhs = involution_Jprime(lam, xu, V)
            if not np.array_equal(lhs, swapped):
                return check_result(False, checked, witness=mismatch((V.name, n), lhs, swapped))
            checked += 1
    # ind_U^G(X_U) ≅ X_U ⊗ X_U through φ ↦ Σ char_{hU} ⊗ hφ(h)
    xu = ctx.ind(ctx.k)
    middle = induced_square_map(xu)
    ind_x = ctx.ind(ctx.xu)
    square = tensor_square(xu.rep)
    if not (is_equivariant(middle, ind_x.rep, square, range(G.order)) and is_invertible(middle, p)):
        return check_result(False, checked, witness={"error": "ind(X_U) -> X_U⊗X_U is not a G-isomorphism"})
    return check_result(True, checked + 1)


def check_factor_fr(ctx: GroupPairContext) -> Dict[str, Any]:
    """𝒥′(Fr_h(v)) = Fr_{h^{-1}}(h^{-1} v) for every double coset and every U_h-fixed basis vector."""
    G, p = ctx.group, ctx.p
    xu = ctx.ind(ctx.k)
    checked = 0
    for V in ctx.reps:
        for k in range(len(G.double_cosets)):
            h = G.double_coset_rep(k)
            h_inv = int(G.inv[h])
            for n, v in enumerate(fixed_vectors(V, G.conjugate_subgroup(h))):
                lhs = involution_Jprime(frobenius_Fr(h, v, V, xu), xu, V)
                rhs = frobenius_Fr(h_inv, matmul_mod(V.mats[h_inv], v, p), V, xu)
                if not np.array_equal(lhs, rhs):
                    return check_result(False, checked, witness=mismatch((V.name, G.label(h), n), lhs, rhs))
                checked += 1
    return check_result(True, checked)


def check_tr_cores(ctx: GroupPairContext) -> Dict[str, Any]:
    """Tr(Fr_h(v)) = Σ_{u∈U/U_h} u·v."""
    G = ctx.group
    xu = ctx.ind(ctx.k)
    checked = 0
    for V in ctx.reps:
        for k in range(len(G.double_cosets)):
            h = G.double_coset_rep(k)
            for n, v in enumerate(fixed_vectors(V, G.conjugate_subgroup(h))):
                lhs = trace_Tr(frobenius_Fr(h, v, V, xu), xu)[:, 0]
                rhs = corestriction(h, v, V)
                if not np.array_equal(lhs, rhs):
                    return check_result(False, checked, witness=mismatch((V.name, G.label(h), n), lhs, rhs))
                checked += 1
    return check_result(True, checked)


def check_frobenius_bijection(ctx: GroupPairContext) -> Dict[str, Any]:
    """V^{U_h} ≅ Hom_U(ind_U^{UhU}(k), V) through Fr_h."""
    G, p = ctx.group, ctx.p
    xu = ctx.ind(ctx.k)
    checked = 0
    for V in ctx.reps:
        full = ctx.hom_from_ind(ctx.k, V)
        for k in range(len(G.double_cosets)):
            h = G.double_coset_rep(k)
            fixed = fixed_vectors(V, G.conjugate_subgroup(h))
            images = [frobenius_Fr(h, v, V, xu).reshape(-1) for v in fixed]
            parts = [component_split(F, xu, side="source")[k].reshape(-1) for F in full]
            rank_img = rank_mod(np.array(images).T, p) if images else 0
            rank_parts = rank_mod(np.array(parts).T, p) if parts else 0
            if rank_img != len(fixed) or rank_img != rank_parts:
                return check_result(False, checked, witness={"rep": V.name, "h": G.label(h), "fixed": len(fixed), "hom": rank_parts})
            checked += 1
    return check_result(True, checked)


def check_hecke(ctx: GroupPairContext) -> Dict[str, Any]:
    """J0 is an involutive anti-automorphism of k[U\\G/U]; T_f realizes it as End_G(X_U)."""
    G, p = ctx.group, ctx.p
    H = hecke(G, p)
    J = anti_automorphism_J0(H)
    checked = 0
    if not np.array_equal(matmul_mod(J, J, p), identity(H.dim)):
        return check_result(False, checked, witness={"error": "J0 is not involutive"})
    for a, b in itertools.product(range(H.dim), repeat=2):
        defect = j0_product_defect(H, a, b)
        if np.any(defect):
            return check_result(False, checked, witness={"pair": (a, b), "defect": defect.tolist()})
        checked += 1
    X = permutation_rep(G, p)
    ops = [endomorphism(H, e) for e in np.eye(H.dim, dtype=np.int64)]
    for a, b in itertools.product(range(H.dim), repeat=2):
        lhs = endomorphism(H, H.multiply(np.eye(H.dim, dtype=np.int64)[a], np.eye(H.dim, dtype=np.int64)[b]))
        rhs = matmul_mod(ops[b], ops[a], p)
        if not np.array_equal(lhs, rhs):
            return check_result(False, checked, witness=mismatch(("T", a, b), lhs, rhs))
        checked += 1
    end_g = hom_basis(X, X, range(G.order))
    flat = np.array([T.reshape(-1) for T in ops]).T
    if len(end_g) != H.dim or rank_mod(flat, p) != H.dim:
        return check_result(False, checked, witness={"End_G": len(end_g), "hecke_dim": H.dim})
    if not all(is_equivariant(T, X, X, range(G.order)) for T in ops):
        return check_result(False, checked, witness={"error": "T_f is not G-equivariant"})
    # J0 is 𝒥 on Hom_U(k, X_U) = biinvariant functions
    xu = ctx.ind(ctx.k)
    for n, e in enumerate(np.eye(H.dim, dtype=np.int64)):
        f = H.function(e)
        alpha = np.array([[f[r]] for r in G.coset_reps], dtype=np.int64)
        j_alpha = involution_J(alpha, ctx.k, xu)
        expected = H.function(matmul_mod(J, e, p))
        rhs = np.array([[expected[r]] for r in G.coset_reps], dtype=np.int64)
        if not np.array_equal(j_alpha, rhs):
            return check_result(False, checked, witness=mismatch(("J0 vs 𝒥", n), j_alpha, rhs))
        checked += 1
    return check_result(True, checked, details={"dim": H.dim, "commutative": H.is_commutative()})
