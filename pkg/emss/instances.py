"""
Bundled (A, P, M) triples for the Eilenberg–Moore spectral sequence.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from dgcore.dg import DgAlgebra, DgModule, augmentation_module, regular_dg_module, tensor_algebra
from dgcore.instances import exterior_dg, koszul_test_algebra, model_dg_algebra, model_trivial
from yoneda.ext_n import ext_n
from yoneda.model import CrossedModelDatum


@dataclass(frozen=True)
class EmInstance:
    """``compare_tor`` marks triples whose layer filtration is the homological one, so E_2 is graded Tor."""

    name: str
    algebra: DgAlgebra
    P: DgModule
    M: DgModule
    compare_tor: bool = False
    formal: bool = True


def second_ext_over_square(A: DgAlgebra, model: CrossedModelDatum) -> DgModule:
    """E*(2) as a right module over E* ⊗ E*: x·(a⊗b) = (x ·₁ a) ·₂ b."""
    AA = tensor_algebra(A, A)
    H2 = ext_n(model, 2, A.algebra)
    R1, R2 = H2.rights
    na, p = A.dim, A.p
    action = np.zeros((na * na, H2.dim, H2.dim), dtype=np.int64)
    for a in range(na):
        for b in range(na):
            action[a * na + b] = R2[b] @ R1[a] % p
    return DgModule(AA, "right", H2.degrees, H2.degrees, action, np.zeros((H2.dim, H2.dim), dtype=np.int64),
                    H2.labels, "E(2)")


def bundled_instances(model: CrossedModelDatum) -> List[EmInstance]:
    p = model.p
    ext = exterior_dg(p)
    E = model_dg_algebra(model)
    square = second_ext_over_square(E, model)
    T = koszul_test_algebra(p)
    return [
        EmInstance("Λ(y): k ⊗ k", ext, augmentation_module(ext, "right"), augmentation_module(ext), True),
        EmInstance("E: E ⊗ k", E, regular_dg_module(E, "right"), model_trivial(E, model)),
        EmInstance("E⊗E: E(2) ⊗ E⊗E", square.algebra, square, regular_dg_module(square.algebra), True),
        EmInstance("Λ(x)⊗k[t]/t²: k ⊗ k", T, augmentation_module(T, "right"), augmentation_module(T), formal=False),
    ]
