"""
Finite-dimensional dg algebras and modules: semifree resolutions, derived functors, the box product.
"""
from dgcore.dg import (
    DgAlgebra,
    DgModule,
    augmentation_module,
    cohomology,
    cohomology_algebra,
    ground_algebra,
    mapping_cone,
    regular_dg_module,
    tensor_algebra,
)
from dgcore.semifree import Generator, SemifreeModule, SemifreeResolution, semifree_resolve
from dgcore.derived import DerivedComplex, derived_hom, derived_tensor, invariance_defect
from dgcore.monoidal import (
    MonoidalDatum,
    adjunction_check,
    associativity,
    boxtimes,
    boxtimes_symmetry,
    ground_monoidal,
    hom_boxtimes,
    koszul_swap,
    model_monoidal,
    unit_law,
)
from dgcore.serialize import deserialize, serialize

__all__ = [
    "DgAlgebra",
    "DgModule",
    "augmentation_module",
    "cohomology",
    "cohomology_algebra",
    "ground_algebra",
    "mapping_cone",
    "regular_dg_module",
    "tensor_algebra",
    "Generator",
    "SemifreeModule",
    "SemifreeResolution",
    "semifree_resolve",
    "DerivedComplex",
    "derived_hom",
    "derived_tensor",
    "invariance_defect",
    "MonoidalDatum",
    "adjunction_check",
    "associativity",
    "boxtimes",
    "boxtimes_symmetry",
    "ground_monoidal",
    "hom_boxtimes",
    "koszul_swap",
    "model_monoidal",
    "unit_law",
    "deserialize",
    "serialize",
]
