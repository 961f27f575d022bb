"""
Isomorphism search between graded modules, injectivity of Δ_gr(E*), and
the constructed short exact sequences and monomorphisms the duality suite
runs over.
"""
from __future__ import annotations

import itertools
import logging
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from config.settings import ISO_SEARCH_CONFIG
from exactla.matrix import identity, is_invertible, matmul_mod, nullspace, rank_mod, zeros
from yoneda.duality import delta_gr
from yoneda.graded import (
    GradedAlgebra,
    GradedModule,
    direct_sum,
    module_hom_basis,
    quotient,
    regular_module,
    submodule,
)
from yoneda.model import CrossedModelDatum, augmentation_to_cohomology, cohomology_module, trivial_module

logger = logging.getLogger(__name__)


def _invertible_by_degree(phi: np.ndarray, source: GradedModule, target: GradedModule) -> bool:
    p = source.p
    for i in set(source.degrees.tolist()) | set(target.degrees.tolist()):
        block = phi[np.ix_(target.degrees == i, source.degrees == i)]
        if block.shape[0] != block.shape[1] or (block.size and not is_invertible(block, p)):
            return False
    return True


def find_isomorphism(
    source: GradedModule,
    target: GradedModule,
    seed: int,
    exhaust_limit: Optional[int] = None,
    samples: Optional[int] = None,
) -> Dict[str, Any]:
    """Search for a degree-0 module isomorphism source -> target.

    Returns a dict with ``status`` one of ``found`` (with ``iso``),
    ``dimension-mismatch`` and ``no-iso`` (both certified) or ``not-found``
    (sampling only; never a disproof).
    """
    exhaust_limit = exhaust_limit or ISO_SEARCH_CONFIG["exhaust_limit"]
    samples = samples or ISO_SEARCH_CONFIG["samples"]
    if source.dims() != target.dims():
        return {"status": "dimension-mismatch", "source_dims": source.dims(), "target_dims": target.dims()}
    p = source.p
    basis = module_hom_basis(source, target)
    k = len(basis)
    result: Dict[str, Any] = {"hom_dim": k, "seed": seed}
    if source.dim == 0:
        return {**result, "status": "found", "iso": zeros(0, 0), "candidates": 0}
    if k == 0:
        return {**result, "status": "no-iso", "candidates": 0}
    stack = np.array(basis, dtype=np.int64)

    def combine(coeffs) -> np.ndarray:
        return np.einsum("k,kij->ij", np.asarray(coeffs, dtype=np.int64), stack) % p

    for n in range(k):
        coeffs = np.zeros(k, dtype=np.int64)
        coeffs[n] = 1
        phi = combine(coeffs)
        if _invertible_by_degree(phi, source, target):
            return {**result, "status": "found", "iso": phi, "candidates": n + 1}

    total = p**k
    if total <= exhaust_limit:
        for count, coeffs in enumerate(itertools.product(range(p), repeat=k), start=1):
            phi = combine(coeffs)
            if _invertible_by_degree(phi, source, target):
                return {**result, "status": "found", "iso": phi, "candidates": count}
        return {**result, "status": "no-iso", "candidates": total}

    rng = np.random.default_rng(seed)
    for count in range(1, samples + 1):
        phi = combine(rng.integers(0, p, size=k))
        if _invertible_by_degree(phi, source, target):
            return {**result, "status": "found", "iso": phi, "candidates": count}
    logger.info("⚠️ no isomorphism among %d samples (space of size %d^%d)", samples, p, k)
    return {**result, "status": "not-found", "candidates": samples}


def check_maindual(
    M: GradedModule, Mdual: GradedModule, twist: np.ndarray, d: int, seed: int, window: Optional[Tuple[int, int]] = None
) -> Dict[str, Any]:
    """Compare Mdual with Δ_gr(M) by an independent isomorphism search."""
    target = delta_gr(M, twist, d, window)
    outcome = find_isomorphism(Mdual, target, seed)
    logger.debug("maindual %s vs %s: %s", Mdual.name, target.name, outcome["status"])
    return outcome


def extension_defect(inclusion: np.ndarray, A: GradedModule, B: GradedModule, N: GradedModule) -> Optional[Dict[str, int]]:
    """None if every map A -> N extends along A ↪ B, else the ranks."""
    p = A.p
    maps_a = module_hom_basis(A, N)
    maps_b = module_hom_basis(B, N)
    if not maps_a:
        return None
    restricted = np.array([matmul_mod(phi, inclusion, p).reshape(-1) for phi in maps_b]).T if maps_b else zeros(N.dim * A.dim, 0)
    target = np.array([phi.reshape(-1) for phi in maps_a]).T
    r_img = rank_mod(restricted, p) if restricted.size else 0
    r_all = rank_mod(np.hstack([restricted, target]), p)
    if r_img != r_all or r_all != len(maps_a):
        return {"hom_A": len(maps_a), "hom_B": len(maps_b), "image_rank": r_img}
    return None


def model_modules(E: GradedAlgebra, model: CrossedModelDatum) -> Dict[str, GradedModule]:
    """Right E*-modules the duality suites range over."""
    modules = {
        "E": regular_module(E, "right"),
        "k": trivial_module(E, model),
        "H": cohomology_module(E, model),
    }
    modules["k⊕H"] = direct_sum(modules["k"], modules["H"])
    return modules


def short_exact_sequences(E: GradedAlgebra, model: CrossedModelDatum) -> List[Dict[str, Any]]:
    """0 -> A -f-> B -g-> C -> 0 built from ideals, quotients and split sums."""
    p = E.p
    mods = model_modules(E, model)
    regular, H, k = mods["E"], mods["H"], mods["k"]
    sequences = []

    def from_sub(name: str, B: GradedModule, gens: np.ndarray) -> None:
        A, f = submodule(B, gens)
        C, g = quotient(B, f)
        sequences.append({"name": name, "A": A, "B": B, "C": C, "f": f, "g": g})

    for j in range(1, model.d + 1):
        from_sub(f"E^>={j} ⊂ E", regular, identity(E.dim)[:, E.degrees >= j])
    aug = augmentation_to_cohomology(model)
    kernel_gens = []
    for v in _kernel_homogeneous(aug, E.degrees, p):
        kernel_gens.append(v)
    if kernel_gens:
        from_sub("ker(E -> H) ⊂ E", regular, np.array(kernel_gens).T)
    from_sub("H^d ⊂ H", H, identity(H.dim)[:, H.degrees == model.d])
    from_sub("H^>=1 ⊂ H", H, identity(H.dim)[:, H.degrees >= 1])
    split = mods["k⊕H"]
    inc = np.vstack([identity(1), zeros(H.dim, 1)])
    proj = np.hstack([zeros(H.dim, 1), identity(H.dim)])
    sequences.append({"name": "k ⊂ k⊕H", "A": k, "B": split, "C": H, "f": inc, "g": proj})
    for x in range(E.dim):
        if E.degrees[x] == model.d:
            from_sub(f"{E.label(x)}·E ⊂ E", regular, identity(E.dim)[:, [x]])
            break
    return sequences


def _kernel_homogeneous(f: np.ndarray, degrees: np.ndarray, p: int) -> List[np.ndarray]:
    out = []
    for i in sorted(set(degrees.tolist())):
        cols = np.nonzero(degrees == i)[0]
        ker = nullspace(f[:, cols], p)
        for v in ker.T:
            full = np.zeros(degrees.shape[0], dtype=np.int64)
            full[cols] = v
            out.append(full)
    return out


def monomorphisms(E: GradedAlgebra, model: CrossedModelDatum) -> List[Dict[str, Any]]:
    """Submodule inclusions A ↪ B: cyclic submodules of E, the sequence inclusions, split summands."""
    regular = regular_module(E, "right")
    monos = [{"name": s["name"], "A": s["A"], "B": s["B"], "f": s["f"]} for s in short_exact_sequences(E, model)]
    for x in range(E.dim):
        A, f = submodule(regular, identity(E.dim)[:, [x]])
        monos.append({"name": f"{E.label(x)}·E ⊂ E", "A": A, "B": regular, "f": f})
    return monos
