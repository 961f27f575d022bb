"""
Eilenberg–Moore spectral sequences and the graded Tor/Ext their E_2 pages are made of.
"""
from emss.graded_homological import (
    GradedFreeResolution,
    free_module,
    graded_ext,
    graded_free_resolution,
    graded_tor,
    tensor_product_dims,
)
from emss.spectral import (
    FilteredPages,
    SpectralSequencePages,
    collapse_check_cohdelta,
    e2_tor_defect,
    em_tor_ss,
    filtered_spectral_sequence,
)
from emss.instances import EmInstance, bundled_instances

__all__ = [
    "GradedFreeResolution",
    "free_module",
    "graded_ext",
    "graded_free_resolution",
    "graded_tor",
    "tensor_product_dims",
    "FilteredPages",
    "SpectralSequencePages",
    "collapse_check_cohdelta",
    "e2_tor_defect",
    "em_tor_ss",
    "filtered_spectral_sequence",
    "EmInstance",
    "bundled_instances",
]
