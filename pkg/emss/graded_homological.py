"""
Graded free resolutions over a finite-dimensional graded algebra, and the
bigraded Tor and Ext they compute.

Tor^{s,t}: s = -n for homological degree n, t = internal degree.
Ext^{s,t}: s = n, t = the degree by which the cochain raises degree.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from exactla.matrix import matmul_mod, nullspace, rank_mod, zeros
from yoneda.graded import GradedAlgebra, GradedModule
from utils.errors import StructureMismatchError, WindowError

logger = logging.getLogger(__name__)

Bigraded = Dict[Tuple[int, int], int]


def free_module(E: GradedAlgebra, side: str, generator_degrees: np.ndarray) -> GradedModule:
    """⊕ g_j·E (right) or ⊕ E·g_j (left); basis element (j, a) sits at index j·dim E + a."""
    na, r = E.dim, len(generator_degrees)
    action = np.zeros((na, r * na, r * na), dtype=np.int64)
    # right: (g a)·b = g(ab); left: b·(a g) = (ba) g
    block = np.einsum("abc->bca", E.mult) if side == "right" else np.einsum("bac->bca", E.mult)
    for j in range(r):
        action[:, j * na:(j + 1) * na, j * na:(j + 1) * na] = block
    degrees = (np.asarray(generator_degrees, dtype=np.int64)[:, None] + E.degrees[None, :]).reshape(-1)
    return GradedModule(E, side, degrees, action % E.p, name=f"F[{r}]")


def _homogeneous_kernel(phi: np.ndarray, source_degrees: np.ndarray, target_degrees: np.ndarray, p: int) -> np.ndarray:
    """Kernel of a degree-0 map, as homogeneous columns in increasing degree."""
    columns = []
    for i in sorted(set(source_degrees.tolist())):
        src = np.nonzero(source_degrees == i)[0]
        dst = np.nonzero(target_degrees == i)[0]
        K = nullspace(phi[np.ix_(dst, src)], p) if len(dst) else np.eye(len(src), dtype=np.int64)
        for k in range(K.shape[1]):
            v = np.zeros(len(source_degrees), dtype=np.int64)
            v[src] = K[:, k]
            columns.append(v)
    return np.array(columns, dtype=np.int64).T if columns else zeros(len(source_degrees), 0)


def _vector_degree(v: np.ndarray, degrees: np.ndarray) -> int:
    return int(degrees[np.nonzero(v)[0][0]])


def module_generators(V: GradedModule, spanning: np.ndarray) -> List[np.ndarray]:
    """Homogeneous generators of the submodule spanned by the homogeneous columns of ``spanning``.

    Columns are visited in increasing degree; one is kept when it is not in the
    submodule generated so far.
    """
    p = V.p
    cols = [c for c in spanning.T if np.any(c)]
    cols.sort(key=lambda c: _vector_degree(c, V.degrees))
    chosen: List[np.ndarray] = []
    span = zeros(V.dim, 0)
    rank = 0
    for c in cols:
        if rank_mod(np.hstack([span, c[:, None]]), p) == rank:
            continue
        chosen.append(c)
        orbit = np.array([matmul_mod(V.action[a], c, p) for a in range(V.algebra.dim)], dtype=np.int64).T
        span = np.hstack([span, orbit])
        rank = rank_mod(span, p)
    return chosen


@dataclass(frozen=True, eq=False)
class GradedFreeResolution:
    """… -> F_1 -> F_0 -> M; ``boundaries[n]`` is F_{n+1} -> F_n, ``augmentation`` is F_0 -> M."""

    module: GradedModule
    generator_degrees: Tuple[np.ndarray, ...]
    augmentation: np.ndarray
    boundaries: Tuple[np.ndarray, ...]

    @property
    def length(self) -> int:
        return len(self.generator_degrees) - 1

    def free(self, n: int) -> GradedModule:
        return free_module(self.module.algebra, self.module.side, self.generator_degrees[n])

    def generator_boundary(self, n: int, j: int) -> np.ndarray:
        """∂(g_j) for a generator of F_n, n >= 1, as coordinates in F_{n-1}."""
        E = self.module.algebra
        col = np.zeros(len(self.generator_degrees[n]) * E.dim, dtype=np.int64)
        col[j * E.dim:(j + 1) * E.dim] = E.unit
        return matmul_mod(self.boundaries[n - 1], col, E.p)


def _images(V: GradedModule, vectors: List[np.ndarray]) -> np.ndarray:
    """The map F -> V sending g_j to vectors[j]: column (j, a) is v_j·a (or a·v_j)."""
    na, p = V.algebra.dim, V.p
    out = zeros(V.dim, len(vectors) * na)
    for j, v in enumerate(vectors):
        out[:, j * na:(j + 1) * na] = np.array([matmul_mod(V.action[a], v, p) for a in range(na)], dtype=np.int64).T
    return out


def graded_free_resolution(M: GradedModule, length: int) -> GradedFreeResolution:
    """Free resolution through F_length, built from generators of successive kernels."""
    if length < 0:
        raise WindowError("resolution length must be non-negative")
    E, p = M.algebra, M.p
    V = M
    spanning = np.eye(M.dim, dtype=np.int64)
    degrees: List[np.ndarray] = []
    maps: List[np.ndarray] = []
    for n in range(length + 1):
        gens = module_generators(V, spanning)
        gdeg = np.array([_vector_degree(g, V.degrees) for g in gens], dtype=np.int64)
        phi = _images(V, gens)
        degrees.append(gdeg)
        maps.append(phi)
        F = free_module(E, M.side, gdeg)
        spanning = _homogeneous_kernel(phi, F.degrees, V.degrees, p)
        V = F
    logger.debug("resolved %s: ranks %s", M.name, [len(d) for d in degrees])
    return GradedFreeResolution(M, tuple(degrees), maps[0], tuple(maps[1:]))


def _homology_dims(incoming: np.ndarray, outgoing: np.ndarray, degrees: np.ndarray, p: int) -> Dict[int, int]:
    """dim ker(outgoing) - dim im(incoming), per internal degree of the middle term."""
    out: Dict[int, int] = {}
    for t in sorted(set(degrees.tolist())):
        idx = np.nonzero(degrees == t)[0]
        z = len(idx) - (rank_mod(outgoing[:, idx], p) if outgoing.shape[0] else 0)
        b = rank_mod(incoming[idx, :], p) if incoming.shape[1] else 0
        if z - b:
            out[t] = z - b
    return out


def graded_tor(M: GradedModule, N: GradedModule, window: Tuple[int, int]) -> Bigraded:
    """Tor^{s,t}_E(M, N) for a right module M and a left module N, with -s in the window."""
    if M.side != "right" or N.side != "left" or M.algebra is not N.algebra:
        raise StructureMismatchError("graded_tor needs a right and a left module over the same algebra")
    lo, hi = window
    if lo < 0 or hi < lo:
        raise WindowError(f"window {lo}:{hi} is empty")
    E, p, m = M.algebra, M.p, M.dim
    res = graded_free_resolution(N, hi + 1)

    def chain(n: int) -> Tuple[np.ndarray, np.ndarray]:
        """M ⊗_E F_n: basis (j, q) at index j·dim M + q, and its degrees."""
        gdeg = res.generator_degrees[n]
        return gdeg, (gdeg[:, None] + M.degrees[None, :]).reshape(-1)

    def differential(n: int) -> np.ndarray:
        """m⊗g_i ↦ Σ (m·a)⊗g_l for ∂g_i = Σ a·g_l."""
        src, _ = chain(n)
        dst, _ = chain(n - 1)
        D = zeros(len(dst) * m, len(src) * m)
        for i in range(len(src)):
            beta = res.generator_boundary(n, i).reshape(len(dst), E.dim)
            for l, a in np.argwhere(beta):
                D[l * m:(l + 1) * m, i * m:(i + 1) * m] += beta[l, a] * M.action[a]
        return D % p

    dims: Bigraded = {}
    for n in range(lo, hi + 1):
        _, deg = chain(n)
        outgoing = differential(n) if n > 0 else zeros(0, len(deg))
        incoming = differential(n + 1)
        for t, k in _homology_dims(incoming, outgoing, deg, p).items():
            dims[(-n, t)] = k
    return dict(sorted(dims.items()))


def graded_ext(M: GradedModule, N: GradedModule, window: Tuple[int, int]) -> Bigraded:
    """Ext^{s,t}_E(M, N) for modules on the same side, with s in the window."""
    if M.side != N.side or M.algebra is not N.algebra:
        raise StructureMismatchError("graded_ext needs two modules of the same side over the same algebra")
    lo, hi = window
    if lo < 0 or hi < lo:
        raise WindowError(f"window {lo}:{hi} is empty")
    E, p, m = M.algebra, M.p, N.dim
    res = graded_free_resolution(M, hi + 1)

    def cochain(n: int) -> np.ndarray:
        """Hom_E(F_n, N): f(g_j) = e_q at index j·dim N + q, of degree |q| - |g_j|."""
        gdeg = res.generator_degrees[n]
        return (N.degrees[None, :] - gdeg[:, None]).reshape(-1)

    def coboundary(n: int) -> np.ndarray:
        """Hom(F_n, N) -> Hom(F_{n+1}, N), f ↦ f∘∂."""
        rows, cols = len(res.generator_degrees[n + 1]), len(res.generator_degrees[n])
        f_deg = cochain(n)
        D = zeros(rows * m, cols * m)
        for i in range(rows):
            beta = res.generator_boundary(n + 1, i).reshape(cols, E.dim)
            for l, a in np.argwhere(beta):
                block = beta[l, a] * N.action[a]
                if N.side == "left":
                    # f(a·g) = (-1)^{|a||f|} a·f(g)
                    signs = np.where((E.degrees[a] * f_deg[l * m:(l + 1) * m]) % 2 == 0, 1, p - 1)
                    block = block * signs[None, :]
                D[i * m:(i + 1) * m, l * m:(l + 1) * m] += block
        return D % p

    dims: Bigraded = {}
    for n in range(lo, hi + 1):
        deg = cochain(n)
        outgoing = coboundary(n)
        incoming = coboundary(n - 1) if n > 0 else zeros(len(deg), 0)
        for t, k in _homology_dims(incoming, outgoing, deg, p).items():
            dims[(n, t)] = k
    return dict(sorted(dims.items()))


def tensor_product_dims(M: GradedModule, N: GradedModule) -> Dict[int, int]:
    """dims of M ⊗_E N, as the cokernel of m·a⊗n - m⊗a·n."""
    if M.side != "right" or N.side != "left" or M.algebra is not N.algebra:
        raise StructureMismatchError("M ⊗_E N needs a right and a left module")
    p = M.p
    degrees = (M.degrees[:, None] + N.degrees[None, :]).reshape(-1)
    relations = [
        (np.kron(M.action[a], np.eye(N.dim, dtype=np.int64)) - np.kron(np.eye(M.dim, dtype=np.int64), N.action[a])) % p
        for a in range(M.algebra.dim)
    ]
    R = np.hstack(relations) if relations else zeros(len(degrees), 0)
    out: Dict[int, int] = defaultdict(int)
    for t in sorted(set(degrees.tolist())):
        idx = np.nonzero(degrees == t)[0]
        k = len(idx) - rank_mod(R[idx, :], p) if R.size else len(idx)
        if k:
            out[t] = k
    return dict(out)
