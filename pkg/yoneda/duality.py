"""
The graded duality Δ_gr(M) = Hom_k^gr(M, k)[−d] with the right action
(fτ)(e) = (−1)^{|τ||e|} f(e·(𝒥⊗χ_G)(τ)).
"""
from __future__ import annotations

import logging
from typing import Dict, Optional, Tuple

import numpy as np

from exactla.matrix import matmul_mod, rank_mod
from yoneda.graded import GradedModule
from utils.errors import StructureMismatchError, WindowError

logger = logging.getLogger(__name__)


def delta_gr(M: GradedModule, twist: np.ndarray, d: int, window: Optional[Tuple[int, int]] = None) -> GradedModule:
    """Shifted graded dual of a right module; coordinates are in the dual basis.

    Args:
        M: right module over E*
        twist: matrix of 𝒥⊗χ_G on E*
        d: top degree
        window: degrees the result must fit in
    """
    if M.side != "right":
        raise StructureMismatchError("Δ_gr is defined on right modules")
    E, p = M.algebra, M.p
    degrees = d - M.degrees
    if window is not None and M.dim:
        lo, hi = window
        if degrees.min() < lo or degrees.max() > hi:
            need = (min(lo, int(degrees.min())), max(hi, int(degrees.max())))
            raise WindowError(f"Δ_gr({M.name}) needs window {need[0]}:{need[1]}, got {lo}:{hi}")
    action = np.zeros((E.dim, M.dim, M.dim), dtype=np.int64)
    for a in range(E.dim):
        twisted = M.operator(twist[:, a])
        signs = np.where((E.degrees[a] * M.degrees) % 2 == 1, p - 1, 1)
        action[a] = (signs[:, np.newaxis] * twisted.T) % p
    labels = tuple(f"{lab}^∨" for lab in M.labels) if M.labels else ()
    return GradedModule(E, "right", degrees, action, labels, f"Δ({M.name})")


def delta_map(phi: np.ndarray) -> np.ndarray:
    """Δ_gr of a module map φ: M -> N is f ↦ f∘φ, i.e. the transpose in dual coordinates."""
    return np.asarray(phi).T.copy()


def _degree_blocks(matrix: np.ndarray, rows: np.ndarray, cols: np.ndarray, degree: int) -> np.ndarray:
    return matrix[np.ix_(rows == degree, cols == degree)]


def exactness_witness(
    f: np.ndarray, g: np.ndarray, A: GradedModule, B: GradedModule, C: GradedModule
) -> Optional[Dict[str, int]]:
    """None if 0 -> A -f-> B -g-> C -> 0 is exact degreewise, else the failing degree and ranks."""
    p = A.p
    if np.any(matmul_mod(g, f, p)):
        return {"degree": None, "error": "g∘f ≠ 0"}
    degrees = sorted(set(A.degrees.tolist()) | set(B.degrees.tolist()) | set(C.degrees.tolist()))
    for i in degrees:
        fi = _degree_blocks(f, B.degrees, A.degrees, i)
        gi = _degree_blocks(g, C.degrees, B.degrees, i)
        a, b, c = int((A.degrees == i).sum()), int((B.degrees == i).sum()), int((C.degrees == i).sum())
        rf = rank_mod(fi, p) if fi.size else 0
        rg = rank_mod(gi, p) if gi.size else 0
        if rf != a or rg != c or b - rg != rf:
            return {"degree": i, "rank_f": rf, "rank_g": rg, "dims": [a, b, c]}
    return None
