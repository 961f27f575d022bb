"""
Graded Yoneda algebras of crossed models, the graded dual Δ_gr and the pairing bimodule B*.
"""
from yoneda.graded import GradedAlgebra, GradedModule, exterior_algebra, regular_module
from yoneda.model import (
    CrossedModelDatum,
    anti_involution_J,
    build_E,
    duality_character,
    trivial_module,
    twist_J_chi,
)
from yoneda.duality import delta_gr, delta_map
from yoneda.pairing import YonedaBimodule, bimodule_B, swap_sigma_star, yoneda_pairing
from yoneda.ext_n import GradedBimodule, ext_n, factor_swap, free_left_basis
from yoneda.maindual import check_maindual, find_isomorphism, monomorphisms, short_exact_sequences

__all__ = [
    "GradedAlgebra",
    "GradedModule",
    "exterior_algebra",
    "regular_module",
    "CrossedModelDatum",
    "anti_involution_J",
    "build_E",
    "duality_character",
    "trivial_module",
    "twist_J_chi",
    "delta_gr",
    "delta_map",
    "YonedaBimodule",
    "bimodule_B",
    "swap_sigma_star",
    "yoneda_pairing",
    "GradedBimodule",
    "ext_n",
    "factor_swap",
    "free_left_basis",
    "check_maindual",
    "find_isomorphism",
    "monomorphisms",
    "short_exact_sequences",
]
