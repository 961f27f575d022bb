"""
Derived tensor products and derived Hom through semifree resolutions.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

import numpy as np

from dgcore.dg import (
    Bidegree,
    Cohomology,
    DgAlgebra,
    DgModule,
    LevelRange,
    cohomology_classes,
    ground_algebra,
    koszul_signs,
    right_cohomology,
)
from dgcore.semifree import SemifreeModule, opposite_module, resolve_right, semifree_resolve
from exactla.matrix import zeros
from yoneda.graded import GradedModule
from utils.errors import StructureMismatchError

logger = logging.getLogger(__name__)

ModuleLike = Union[DgModule, SemifreeModule]


@dataclass(frozen=True, eq=False)
class DerivedComplex:
    """A complex computed from truncated resolutions, with the levels it is exact on."""

    complex: DgModule
    certified: LevelRange
    filtration: np.ndarray
    window: Tuple[int, int]

    def cohomology(self) -> Cohomology:
        C = self.complex
        return cohomology_classes(C.differential, C.degrees, C.weights, C.p, self.certified)

    def dims(self) -> Dict[Bidegree, int]:
        return self.cohomology().dims()

    def right_module(self) -> GradedModule:
        return right_cohomology(self.complex, self.certified)


def _intersect(a: LevelRange, b: LevelRange) -> LevelRange:
    lo = max((x for x in (a[0], b[0]) if x is not None), default=None)
    hi = min((x for x in (a[1], b[1]) if x is not None), default=None)
    return lo, hi


def semifree_of(A: DgAlgebra, M: ModuleLike, window: Tuple[int, int], margin: Optional[int] = None) -> SemifreeModule:
    if isinstance(M, SemifreeModule):
        if M.algebra is not A:
            raise StructureMismatchError(f"{M.name} is semifree over another algebra")
        return M
    return semifree_resolve(A, M, window, margin).resolution


def tensor_semifree(P: DgModule, F: SemifreeModule) -> Tuple[DgModule, np.ndarray]:
    """P ⊗_A F for a right module P; basis p_i ⊗ g_j at index j·dim P + i."""
    if P.side != "right" or P.algebra is not F.algebra:
        raise StructureMismatchError(f"{P.name} is not a right module over {F.algebra.name}")
    p, na, m, n = P.p, F.algebra.dim, P.dim, F.rank
    signs = koszul_signs(P.degrees, p)
    bnd = F.boundary_matrix()
    D = zeros(n * m, n * m)
    for j in range(n):
        block = slice(j * m, (j + 1) * m)
        D[block, block] = P.differential
        beta = bnd[:, j].reshape(n, na)
        # p·(c⊗g_l) = (p·c)⊗g_l
        term = np.einsum("lc,cqi->lqi", beta, P.action) * signs[None, None, :]
        D[:, block] = (D[:, block] + term.reshape(n * m, m)) % p
    gdeg = np.array([g.degree for g in F.generators], dtype=np.int64)
    gwt = np.array([g.weight for g in F.generators], dtype=np.int64)
    k = ground_algebra(p)
    T = DgModule(
        k, "left",
        (gdeg[:, None] + P.degrees[None, :]).reshape(-1),
        (gwt[:, None] + P.weights[None, :]).reshape(-1),
        np.eye(n * m, dtype=np.int64)[None],
        D % p,
        name=f"{P.name}⊗{F.name}",
    )
    layers = np.repeat(np.array([g.layer for g in F.generators], dtype=np.int64), m)
    return T, layers


def derived_tensor(
    P: DgModule,
    M: ModuleLike,
    window: Tuple[int, int],
    margin: Optional[int] = None,
    resolve: str = "left",
) -> DerivedComplex:
    """P ⊗^L_A M: resolve M (or, with ``resolve='right'``, resolve P over the opposite algebra)."""
    A = P.algebra
    if resolve == "right":
        if isinstance(M, SemifreeModule):
            M = M.module
        A_op, res = resolve_right(A, P, window, margin)
        T, layers = tensor_semifree(opposite_module(M, A_op), res.resolution)
        top = int(M.levels.max()) if M.dim else 0
        lo = res.resolution.exact_from + top + 1
        return DerivedComplex(T, (lo, None), layers, window)
    F = semifree_of(A, M, window, margin)
    T, layers = tensor_semifree(P, F)
    top = int(P.levels.max()) if P.dim else 0
    lo = None if F.exact_from is None else F.exact_from + top + 1
    logger.debug("%s: %d-dimensional, certified from level %s", T.name, T.dim, lo)
    return DerivedComplex(T, (lo, None), layers, window)


def hom_semifree(F: SemifreeModule, N: DgModule) -> Tuple[DgModule, np.ndarray]:
    """Hom_A(F, N); basis: value e_q at g_j, index j·dim N + q.

    (df)(g) = d(f(g)) - (-1)^{|f|} f(dg) and f(a·g) = (-1)^{|a||f|} a·f(g).
    A right action on N makes the result a right module: (f·b)(g) = (-1)^{|b||g|} f(g)·b.
    """
    A = F.algebra
    if N.side != "left" or N.algebra is not A:
        raise StructureMismatchError(f"{N.name} is not a left module over {A.name}")
    p, na, m, n = A.p, A.dim, N.dim, F.rank
    bnd = F.boundary_matrix()
    gdeg = np.array([g.degree for g in F.generators], dtype=np.int64)
    gwt = np.array([g.weight for g in F.generators], dtype=np.int64)
    D = zeros(n * m, n * m)
    for j in range(n):
        D[j * m:(j + 1) * m, j * m:(j + 1) * m] = N.differential
    for l in range(n):
        beta = bnd[:, l].reshape(n, na)
        for j, c in np.argwhere(beta):
            f_deg = N.degrees - gdeg[j]
            sign = np.where((f_deg * (1 + A.degrees[c])) % 2 == 0, p - 1, 1)
            D[l * m:(l + 1) * m, j * m:(j + 1) * m] += beta[j, c] * N.action[c] * sign[None, :]
    degrees = (N.degrees[None, :] - gdeg[:, None]).reshape(-1)
    weights = (N.weights[None, :] - gwt[:, None]).reshape(-1)
    layers = np.repeat(np.array([g.layer for g in F.generators], dtype=np.int64), m)
    name = f"Hom({F.name}, {N.name})"
    if N.right_action is None:
        k = ground_algebra(p)
        H = DgModule(k, "left", degrees, weights, np.eye(n * m, dtype=np.int64)[None], D % p, name=name)
        return H, layers
    action = np.zeros((na, n * m, n * m), dtype=np.int64)
    for b in range(na):
        for j in range(n):
            s = 1 if (A.degrees[b] * gdeg[j]) % 2 == 0 else p - 1
            action[b, j * m:(j + 1) * m, j * m:(j + 1) * m] = s * N.right_action[b]
    return DgModule(A, "right", degrees, weights, action % p, D % p, name=name), layers


def derived_hom(
    A: DgAlgebra,
    M: ModuleLike,
    N: DgModule,
    window: Tuple[int, int],
    margin: Optional[int] = None,
) -> DerivedComplex:
    """RHom_A(M, N) = Hom_A(semifree(M), N)."""
    F = semifree_of(A, M, window, margin)
    H, layers = hom_semifree(F, N)
    bottom = int(N.levels.min()) if N.dim else 0
    hi = None if F.exact_from is None else bottom - F.exact_from - 1
    logger.debug("%s: %d-dimensional, certified up to level %s", H.name, H.dim, hi)
    return DerivedComplex(H, (None, hi), layers, window)


def invariance_defect(first: DerivedComplex, second: DerivedComplex) -> Optional[Dict[str, object]]:
    """Compare cohomology dimensions on the levels both complexes certify."""
    levels = _intersect(first.certified, second.certified)
    a = cohomology_classes(first.complex.differential, first.complex.degrees, first.complex.weights, first.complex.p, levels).dims()
    b = cohomology_classes(second.complex.differential, second.complex.degrees, second.complex.weights, second.complex.p, levels).dims()
    if a != b:
        diff = sorted(set(a) ^ set(b) | {k for k in set(a) & set(b) if a[k] != b[k]})
        return {"bidegree": list(diff[0]), "first": a.get(diff[0], 0), "second": b.get(diff[0], 0)}
    return None
