"""
Verification suites for a crossed-product model.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Any, Dict, List

import numpy as np

from exactla.matrix import identity, is_invertible, matmul_mod
from smoothrep.hecke import anti_automorphism_J0, hecke
from yoneda.duality import delta_gr, delta_map, exactness_witness
from yoneda.ext_n import ext_n, factor_swap, free_left_basis
from yoneda.graded import GradedAlgebra, GradedModule, is_module_map, regular_module, shifted
from yoneda.maindual import (
    check_maindual,
    extension_defect,
    find_isomorphism,
    model_modules,
    monomorphisms,
    short_exact_sequences,
)
from yoneda.model import (
    CrossedModelDatum,
    anti_involution_J,
    anti_multiplicativity_defect,
    build_E,
    duality_character,
    trivial_module,
    twist_J_chi,
)
from yoneda.pairing import (
    YonedaBimodule,
    bimodule_B,
    koszul_commutation_defect,
    linear_identity_defects,
    yoneda_pairing,
)
from utils.errors import ModelError
from utils.helpers import check_result, mismatch

logger = logging.getLogger(__name__)


@dataclass
class ModelContext:
    model: CrossedModelDatum
    seed: int = 0

    @cached_property
    def E(self) -> GradedAlgebra:
        return build_E(self.model)

    @cached_property
    def J(self) -> np.ndarray:
        return anti_involution_J(self.model)

    @cached_property
    def twist(self) -> np.ndarray:
        return twist_J_chi(self.model)

    @cached_property
    def B(self) -> YonedaBimodule:
        return bimodule_B(self.model, self.E)

    @cached_property
    def modules(self) -> Dict[str, GradedModule]:
        return model_modules(self.E, self.model)

    @property
    def p(self) -> int:
        return self.model.p

    @property
    def d(self) -> int:
        return self.model.d

    def delta(self, M: GradedModule) -> GradedModule:
        return delta_gr(M, self.twist, self.d)


def check_E_structure(ctx: ModelContext) -> Dict[str, Any]:
    """Associativity and unit on all basis triples; dim E^i = binomial(d, i)·|C|."""
    E, model = ctx.E, ctx.model
    try:
        E.validate()
    except ModelError as exc:
        return check_result(False, 0, witness={"error": str(exc), "at": exc.witness})
    expected = {i: comb(model.d, i) * model.c_order for i in range(model.d + 1)}
    if E.dims() != expected:
        return check_result(False, E.dim**3, witness={"dims": E.dims(), "expected": expected})
    return check_result(True, E.dim**3, details={"dims": E.dims()})


def check_anti_involutions(ctx: ModelContext) -> Dict[str, Any]:
    """𝒥 and 𝒥⊗χ_G square to the identity and reverse products with the Koszul sign."""
    E, p = ctx.E, ctx.p
    checked = 0
    for name, sigma in (("J", ctx.J), ("Jchi", ctx.twist)):
        if not np.array_equal(matmul_mod(sigma, sigma, p), identity(E.dim)):
            return check_result(False, checked, witness={"map": name, "error": "not involutive"})
        bad = anti_multiplicativity_defect(E, sigma)
        if bad is not None:
            return check_result(False, checked, witness={"map": name, "pair": [E.label(b) for b in bad]})
        if not np.array_equal(matmul_mod(sigma, E.unit, p), E.unit):
            return check_result(False, checked, witness={"map": name, "error": "unit not fixed"})
        checked += E.dim**2
    # 𝒥 is the identity on H*(U,k) ⊗ 1
    for s in range(ctx.model.cohomology.dim):
        col = ctx.model.e_index(s, ctx.model.C.identity)
        if not np.array_equal(ctx.J[:, col], identity(E.dim)[:, col]):
            return check_result(False, checked, witness={"error": "𝒥 moves Λ⊗1", "at": E.label(col)})
    return check_result(True, checked)


def check_duality_character(ctx: ModelContext) -> Dict[str, Any]:
    """χ_G is multiplicative and equals the scalar on the top exterior power."""
    model, p = ctx.model, ctx.p
    chi = duality_character(model)
    top = model.cohomology.dim - 1
    for c in range(model.c_order):
        oracle = int(model.lambda_actions[c][top, top])
        if chi[c] != oracle:
            return check_result(False, c, witness={"c": c, "chi": chi[c], "top_power": oracle})
    for c, c2 in itertools.product(range(model.c_order), repeat=2):
        if chi[model.C.m(c, c2)] != chi[c] * chi[c2] % p:
            return check_result(False, model.c_order, witness={"pair": [c, c2]})
    if chi[model.C.identity] != 1:
        return check_result(False, model.c_order, witness={"error": "χ_G(1) ≠ 1"})
    return check_result(True, model.c_order**2, details={"chi": {str(c): v for c, v in chi.items()}})


def check_degree0_hecke(ctx: ModelContext) -> Dict[str, Any]:
    """E^0 ≅ k[C] matches the Hecke algebra of (Z/p)^d ⋊ C and 𝒥|E^0 matches J0."""
    model, E, p = ctx.model, ctx.E, ctx.p
    G = model.finite_group()
    H = hecke(G, p)
    if H.dim != model.c_order:
        return check_result(False, 0, witness={"hecke_dim": H.dim, "C": model.c_order})
    block = p**model.d
    to_hecke = [int(G.double_coset_index[c * block]) for c in range(model.c_order)]
    J0 = anti_automorphism_J0(H)
    checked = 0
    for c, c2 in itertools.product(range(model.c_order), repeat=2):
        prod = E.multiply(identity(E.dim)[model.e_index(0, c)], identity(E.dim)[model.e_index(0, c2)])
        target = model.e_index(0, model.C.m(c, c2))
        h_prod = H.mult[to_hecke[c], to_hecke[c2]]
        if prod[target] != 1 or h_prod[to_hecke[model.C.m(c, c2)]] != 1 or int(h_prod.sum() % p) != 1:
            return check_result(False, checked, witness={"pair": [c, c2]})
        checked += 1
    for c in range(model.c_order):
        j_img = int(np.nonzero(ctx.J[:, model.e_index(0, c)])[0][0])
        j0_img = int(np.nonzero(J0[:, to_hecke[c]])[0][0])
        if j_img != model.e_index(0, int(model.C.inv[c])) or j0_img != to_hecke[int(model.C.inv[c])]:
            return check_result(False, checked, witness={"c": c, "J": j_img, "J0": j0_img})
        checked += 1
    return check_result(True, checked)


def check_pairing(ctx: ModelContext) -> Dict[str, Any]:
    """Perfectness in each degree and both linearity identities on all homogeneous triples."""
    B, d = ctx.B, ctx.d
    for i in range(d + 1):
        gram = B.degree_gram(i)
        if not is_invertible(gram, ctx.p):
            return check_result(False, 0, witness={"degree": i, "gram": gram.tolist()})
    defects = linear_identity_defects(B)
    for key in ("linear_i", "linear_ii"):
        if defects[key] is not None:
            return check_result(False, defects["checked"], witness={"identity": key, **defects[key]})
    return check_result(True, defects["checked"], details={"negative_signs": defects["negative_signs"]})


def check_bimodule_B(ctx: ModelContext) -> Dict[str, Any]:
    """Both actions are right module structures; they commute with the Koszul sign; dims match E^{d−i}."""
    B = ctx.B
    try:
        B.first().validate()
        B.second().validate()
    except ModelError as exc:
        return check_result(False, 0, witness={"error": str(exc), "at": exc.witness})
    bad = koszul_commutation_defect(B)
    if bad is not None:
        return check_result(False, 0, witness={"pair": list(bad)})
    dims = ctx.E.dims()
    for i in range(ctx.d + 1):
        if dims.get(i, 0) != dims.get(ctx.d - i, 0):
            return check_result(False, 0, witness={"degree": i})
    return check_result(True, ctx.E.dim**2)


def check_swap_sigma(ctx: ModelContext) -> Dict[str, Any]:
    """ς* is involutive, adjoint to 𝒥⊗χ_G, and interchanges the two actions."""
    B, E, p = ctx.B, ctx.E, ctx.p
    sigma = B.sigma
    if not np.array_equal(matmul_mod(sigma, sigma, p), identity(E.dim)):
        return check_result(False, 0, witness={"error": "ς* is not involutive"})
    eye = identity(E.dim)
    checked = 0
    for f in range(E.dim):
        for tau in E.basis_in_degree(ctx.d - int(E.degrees[f])):
            lhs = yoneda_pairing(B, sigma[:, f], eye[tau])
            rhs = yoneda_pairing(B, eye[f], ctx.twist[:, tau])
            if lhs != rhs:
                return check_result(False, checked, witness={"adjoint_at": [f, tau], "lhs": lhs, "rhs": rhs})
            checked += 1
    for a in range(E.dim):
        lhs = matmul_mod(sigma, B.action2[a], p)
        rhs = matmul_mod(B.action1[a], sigma, p)
        if not np.array_equal(lhs, rhs):
            return check_result(False, checked, witness=mismatch(("interchange", E.label(a)), lhs, rhs))
        checked += 1
    return check_result(True, checked)


def check_delta_modules(ctx: ModelContext) -> Dict[str, Any]:
    """Δ_gr(M) is a right module with (Δ M)^i = (M^{d−i})^∨, and Δ_gr(Δ_gr M) ≅ M."""
    checked = 0
    for name, M in ctx.modules.items():
        D = ctx.delta(M)
        try:
            D.validate()
        except ModelError as exc:
            return check_result(False, checked, witness={"module": name, "error": str(exc), "at": exc.witness})
        for i, n in M.dims().items():
            if D.dims().get(ctx.d - i, 0) != n:
                return check_result(False, checked, witness={"module": name, "degree": i})
        outcome = find_isomorphism(M, ctx.delta(D), ctx.seed)
        if outcome["status"] != "found":
            return check_result(False, checked, witness={"module": name, "double_dual": outcome["status"]})
        checked += 1
    return check_result(True, checked)


def check_delta_exact(ctx: ModelContext) -> Dict[str, Any]:
    """Δ_gr takes the constructed short exact sequences to exact sequences of module maps."""
    checked = 0
    for seq in short_exact_sequences(ctx.E, ctx.model):
        A, B, C, f, g = seq["A"], seq["B"], seq["C"], seq["f"], seq["g"]
        if exactness_witness(f, g, A, B, C) is not None:
            return check_result(False, checked, witness={"sequence": seq["name"], "error": "input not exact"})
        dA, dB, dC = ctx.delta(A), ctx.delta(B), ctx.delta(C)
        df, dg = delta_map(f), delta_map(g)
        if not (is_module_map(dg, dC, dB) and is_module_map(df, dB, dA)):
            return check_result(False, checked, witness={"sequence": seq["name"], "error": "dual maps are not module maps"})
        bad = exactness_witness(dg, df, dC, dB, dA)
        if bad is not None:
            return check_result(False, checked, witness={"sequence": seq["name"], **bad})
        checked += 1
    return check_result(checked >= 5, checked, details={"sequences": checked})


def check_delta_injective(ctx: ModelContext) -> Dict[str, Any]:
    """Every map A -> Δ_gr(E*) extends along each constructed monomorphism A ↪ B."""
    N = ctx.delta(regular_module(ctx.E, "right"))
    checked = 0
    for mono in monomorphisms(ctx.E, ctx.model):
        bad = extension_defect(mono["f"], mono["A"], mono["B"], N)
        if bad is not None:
            return check_result(False, checked, witness={"monomorphism": mono["name"], **bad})
        checked += 1
    return check_result(checked >= 10, checked, details={"monomorphisms": checked})


def check_delta_E(ctx: ModelContext) -> Dict[str, Any]:
    """B* with action #1 is isomorphic to Δ_gr(E*), found by the independent solver."""
    outcome = check_maindual(regular_module(ctx.E, "right"), ctx.B.first(), ctx.twist, ctx.d, ctx.seed)
    return _iso_outcome(outcome, expect="found")


def maindual_instances(ctx: ModelContext) -> List[Dict[str, Any]]:
    E, d = ctx.E, ctx.d
    k_dual = trivial_module(E, ctx.model, degree=d, chi_power=-1)
    return [
        {"name": "V=X_U", "M": regular_module(E, "right"), "Mdual": ctx.B.first(), "expect": "found"},
        {"name": "V=k", "M": ctx.modules["H"], "Mdual": ctx.modules["H"], "expect": "found"},
        {"name": "H*(U,V)=k", "M": ctx.modules["k"], "Mdual": k_dual, "expect": "found"},
        {"name": "shifted", "M": regular_module(E, "right"), "Mdual": shifted(ctx.B.first(), 1), "expect": "dimension-mismatch"},
    ]


def check_main_duality(ctx: ModelContext) -> Dict[str, Any]:
    """Explicit isomorphisms H*(U, RHom(V,k)) ≅ Δ_gr(H*(U,V)) or certified failures."""
    results = {}
    for inst in maindual_instances(ctx):
        outcome = check_maindual(inst["M"], inst["Mdual"], ctx.twist, ctx.d, ctx.seed)
        results[inst["name"]] = outcome["status"]
        if outcome["status"] != inst["expect"]:
            return check_result(False, len(results), witness={"instance": inst["name"], "status": outcome["status"]})
    return check_result(True, len(results), details={"outcomes": results})


def _iso_outcome(outcome: Dict[str, Any], expect: str) -> Dict[str, Any]:
    info = {k: v for k, v in outcome.items() if k in ("status", "hom_dim", "candidates", "seed")}
    if "iso" in outcome:
        info["iso"] = np.asarray(outcome["iso"]).tolist()
    if outcome["status"] == expect:
        return check_result(True, 1, details=info)
    return check_result(False, 1, witness=info)


def check_ext_n(ctx: ModelContext, max_n: int = 2) -> Dict[str, Any]:
    """dim E^i(n) = binomial(d,i)|C|^n, E*(1) ≅ E*, actions commute, E*(2) is left-free on 1⊗(1,c)."""
    model, E, p = ctx.model, ctx.E, ctx.p
    checked = 0
    for n in range(max_n + 1):
        bim = ext_n(model, n, E)
        try:
            bim.validate()
        except ModelError as exc:
            return check_result(False, checked, witness={"n": n, "error": str(exc), "at": exc.witness})
        expected = {i: comb(model.d, i) * model.c_order**n for i in range(model.d + 1)}
        if bim.left_module().dims() != expected:
            return check_result(False, checked, witness={"n": n, "dims": bim.left_module().dims()})
        checked += 1
    one = ext_n(model, 1, E)
    regular_left = np.array([E.left_operator(e) for e in identity(E.dim)])
    regular_right = np.array([E.right_operator(e) for e in identity(E.dim)])
    if not (np.array_equal(one.left, regular_left) and np.array_equal(one.rights[0], regular_right)):
        return check_result(False, checked, witness={"error": "E*(1) differs from E*"})
    two = ext_n(model, 2, E)
    gens = free_left_basis(model, two)
    images = np.hstack([two.left[:, :, g].T for g in gens])
    if images.shape != (two.dim, two.dim) or not is_invertible(images, p):
        return check_result(False, checked, witness={"error": "1⊗(1,c) is not a free left basis of E*(2)"})
    return check_result(True, checked + 2)


def check_factor_swap(ctx: ModelContext) -> Dict[str, Any]:
    """ς(x·(a⊗b)) = (−1)^{|a||b|} ς(x)·(b⊗a) and ς(a·x) = a·ς(x) on E*(2)."""
    model, E, p = ctx.model, ctx.E, ctx.p
    two = ext_n(model, 2, E)
    swap = factor_swap(model, two)
    R1, R2 = two.rights
    checked = 0
    for a, b in itertools.product(range(E.dim), repeat=2):
        lhs = matmul_mod(swap, matmul_mod(R2[b], R1[a], p), p)
        rhs = matmul_mod(matmul_mod(R2[a], R1[b], p), swap, p)
        if (E.degrees[a] * E.degrees[b]) % 2:
            rhs = (-rhs) % p
        if not np.array_equal(lhs, rhs):
            return check_result(False, checked, witness={"pair": [E.label(a), E.label(b)]})
        checked += 1
    for a in range(E.dim):
        if not np.array_equal(matmul_mod(swap, two.left[a], p), matmul_mod(two.left[a], swap, p)):
            return check_result(False, checked, witness={"left": E.label(a)})
    return check_result(True, checked)
