"""
Semifree dg modules A ⊗ V and window-truncated resolutions by killing cycles.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config.settings import RESOLUTION_CONFIG
from dgcore.dg import (
    DgAlgebra,
    DgModule,
    LevelRange,
    cohomology_classes,
    is_chain_map,
    koszul_signs,
    mapping_cone,
)
from exactla.matrix import identity, zeros
from utils.errors import ModelError, StructureMismatchError, WindowError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Generator:
    degree: int
    weight: int
    layer: int
    label: str = ""

    @property
    def level(self) -> int:
        return self.degree - self.weight


@dataclass(frozen=True, eq=False)
class SemifreeModule:
    """Left module A ⊗ V; coordinates (j, a) sit at index j·dim A + a.

    ``boundaries[j]`` is d(1⊗g_j), supported on generators before j.
    ``exact_from`` is the level from which this truncation agrees with the
    untruncated object (None: nothing was truncated).
    """

    algebra: DgAlgebra
    generators: Tuple[Generator, ...]
    boundaries: Tuple[np.ndarray, ...]
    name: str = "F"
    exact_from: Optional[int] = None

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def dim(self) -> int:
        return self.rank * self.algebra.dim

    def boundary_matrix(self) -> np.ndarray:
        """(dim × rank): column j is d(1⊗g_j) padded to full length."""
        out = zeros(self.dim, self.rank)
        for j, b in enumerate(self.boundaries):
            out[: len(b), j] = b
        return out

    @cached_property
    def module(self) -> DgModule:
        A, p = self.algebra, self.algebra.p
        n, na = self.rank, A.dim
        left = np.einsum("bac->bca", A.mult)
        action = np.zeros((na, n * na, n * na), dtype=np.int64)
        for j in range(n):
            action[:, j * na:(j + 1) * na, j * na:(j + 1) * na] = left
        D = zeros(n * na, n * na)
        signs = koszul_signs(A.degrees, p)
        bnd = self.boundary_matrix()
        for j in range(n):
            block = slice(j * na, (j + 1) * na)
            D[block, block] = A.differential
            beta = bnd[:, j].reshape(n, na)
            # a·(c⊗g_i) = Σ_e mult[a, c, e] (e⊗g_i)
            term = np.einsum("ic,ace->iea", beta, A.mult) * signs[None, None, :]
            D[:, block] = (D[:, block] + term.reshape(n * na, na)) % p
        deg = np.array([g.degree for g in self.generators], dtype=np.int64)
        wt = np.array([g.weight for g in self.generators], dtype=np.int64)
        labels = tuple(f"{A.algebra.label(a)}·{g.label or f'g{j}'}" for j, g in enumerate(self.generators) for a in range(na))
        return DgModule(
            A, "left",
            (deg[:, None] + A.degrees[None, :]).reshape(-1),
            (wt[:, None] + A.weights[None, :]).reshape(-1),
            action, D % p, labels, self.name,
        )

    def truncated(self, level: int) -> SemifreeModule:
        """Keep the generators at levels >= ``level``; they span a dg submodule."""
        keep = [j for j, g in enumerate(self.generators) if g.level >= level]
        if len(keep) == self.rank:
            return self
        na = self.algebra.dim
        position = {j: k for k, j in enumerate(keep)}
        boundaries = []
        for j in keep:
            b = self.boundaries[j]
            new = zeros(1, position[j] * na)[0]
            for i in np.nonzero(b)[0]:
                g = int(i) // na
                if g not in position:
                    raise ModelError(f"{self.name}: boundary of g{j} leaves the truncation", witness=(j, g))
                new[position[g] * na + int(i) % na] = b[i]
            boundaries.append(new)
        exact = level if self.exact_from is None else max(level, self.exact_from)
        return SemifreeModule(self.algebra, tuple(self.generators[j] for j in keep), tuple(boundaries), self.name, exact)

    def max_level(self) -> Optional[int]:
        return max((g.level for g in self.generators), default=None)


def free_module(A: DgAlgebra, name: Optional[str] = None) -> SemifreeModule:
    """A as a semifree module on one generator in bidegree (0, 0)."""
    return SemifreeModule(A, (Generator(0, 0, 0, "1"),), (np.zeros(0, dtype=np.int64),), name or A.name)


def opposite_module(M: DgModule, A_op: DgAlgebra) -> DgModule:
    """Swap sides over the opposite algebra: a ⋆ m = (-1)^{|a||m|} m·a (and symmetrically)."""
    if M.right_action is not None:
        raise StructureMismatchError(f"{M.name}: cannot flip a module carrying two actions")
    p = M.p
    sign = np.where(np.outer(A_op.degrees, M.degrees) % 2 == 0, 1, p - 1)  # [a, source m]
    action = M.action * sign[:, None, :] % p
    side = "left" if M.side == "right" else "right"
    return DgModule(A_op, side, M.degrees, M.weights, action, M.differential, M.labels, f"{M.name}^op")


@dataclass(frozen=True, eq=False)
class SemifreeResolution:
    target: DgModule
    resolution: SemifreeModule
    quasi_iso: np.ndarray
    window: Tuple[int, int]
    margin: int
    floor: int

    @property
    def certified(self) -> LevelRange:
        """Levels on which the map induces an isomorphism in cohomology."""
        return (self.floor + 1, None)

    @property
    def module(self) -> DgModule:
        return self.resolution.module


def _images_map(M: DgModule, images: Sequence[np.ndarray], na: int) -> np.ndarray:
    """π(a⊗g_j) = a·π(g_j)."""
    pi = zeros(M.dim, len(images) * na)
    for j, m in enumerate(images):
        pi[:, j * na:(j + 1) * na] = np.einsum("aij,j->ia", M.action, m) % M.p
    return pi


def semifree_resolve(
    A: DgAlgebra,
    M: DgModule,
    window: Tuple[int, int],
    margin: Optional[int] = None,
    name: Optional[str] = None,
) -> SemifreeResolution:
    """Kill cone cycles level by level, cokernel classes first, down to -(hi + margin) below M's top level.

    Raises:
        StructureMismatchError: A has basis elements at positive level, or M is not a left module over A.
        WindowError: the window cannot certify the margin, or the generator cap is reached.
    """
    margin = RESOLUTION_CONFIG["margin"] if margin is None else margin
    lo, hi = window
    if lo < 0 or hi < lo or margin < 1:
        raise WindowError(f"window {lo}:{hi} with margin {margin} certifies nothing")
    if np.any(A.levels > 0):
        raise StructureMismatchError(f"{A.name}: basis elements at positive level cannot be resolved against")
    if M.algebra is not A or M.side != "left":
        raise StructureMismatchError(f"{M.name} is not a left module over {A.name}")
    p, na = A.p, A.dim
    top = int(M.levels.max()) if M.dim else 0
    floor = top - (hi + margin)
    cap = RESOLUTION_CONFIG["max_generators"]
    gens: List[Generator] = []
    bounds: List[np.ndarray] = []
    images: List[np.ndarray] = []

    def current() -> SemifreeModule:
        return SemifreeModule(A, tuple(gens), tuple(bounds), name or f"F({M.name})", floor)

    for sigma in range(top, floor - 1, -1):
        while True:
            F = current().module
            cone = mapping_cone(_images_map(M, images, na), F, M)
            preferred = np.vstack([identity(M.dim), zeros(F.dim, M.dim)]) if M.dim else None
            classes = cohomology_classes(cone.differential, cone.degrees, cone.weights, p, (sigma, sigma), preferred)
            if classes.dim == 0:
                break
            v = classes.reps[:, 0]
            deg, wt = classes.class_bidegrees[0]
            m, x = v[: M.dim], v[M.dim:]
            support = sorted({int(i) // na for i in np.nonzero(x)[0]})
            layer = 0 if not support else 1 + max(gens[g].layer for g in support)
            gens.append(Generator(deg, wt, layer, f"g{len(gens)}"))
            bounds.append((-x) % p)
            images.append(m % p)
            if len(gens) > cap:
                raise WindowError(f"resolution of {M.name} needs more than {cap} generators; shrink the window")
    F = current()
    pi = _images_map(M, images, na)
    if not is_chain_map(pi, F.module, M):
        raise ModelError(f"resolution map of {M.name} is not a chain map")
    leftover = cohomology_classes(*_cone_data(pi, F.module, M), p, (floor, None))
    if leftover.dim:
        raise ModelError(f"resolution of {M.name} is not exact at level {floor}", witness=leftover.class_bidegrees[0])
    logger.info("✅ resolved %s: %d generators down to level %d", M.name, len(gens), floor)
    return SemifreeResolution(M, F, pi, (lo, hi), margin, floor)


def _cone_data(pi: np.ndarray, F: DgModule, M: DgModule):
    cone = mapping_cone(pi, F, M)
    return cone.differential, cone.degrees, cone.weights


def resolve_right(A: DgAlgebra, P: DgModule, window: Tuple[int, int], margin: Optional[int] = None) -> Tuple[DgAlgebra, SemifreeResolution]:
    """Resolve a right module as a left module over the opposite algebra."""
    A_op = A.opposite()
    return A_op, semifree_resolve(A_op, opposite_module(P, A_op), window, margin)
