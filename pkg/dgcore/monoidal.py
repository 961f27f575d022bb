"""
The box product M ⊠ N = H2 ⊗_{A⊗A} (semifree(M) ⊗ semifree(N)), its internal Hom and symmetry.

H2 is a graded bimodule with zero differential: a left A-module with two
right actions x·(a⊗b) = (x·₁a)·₂b that commute up to the Koszul sign, and a
free left basis e_c.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import numpy as np

from dgcore.derived import ModuleLike, _intersect, derived_hom, hom_semifree, semifree_of
from dgcore.dg import (
    DgAlgebra,
    DgModule,
    LevelRange,
    augmentation_module,
    cohomology_classes,
    from_graded_module,
    ground_algebra,
    koszul_signs,
)
from dgcore.semifree import Generator, SemifreeModule
from exactla.matrix import identity, inverse_mod, is_invertible, matmul_mod, zeros
from yoneda.ext_n import GradedBimodule, ext_n, factor_swap, free_left_basis
from yoneda.model import CrossedModelDatum, build_E
from utils.errors import StructureMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MonoidalDatum:
    """A, H2 with its free left basis, a candidate swap ς on H2, and the unit object."""

    algebra: DgAlgebra
    H2: GradedBimodule
    basis: Tuple[int, ...]
    swap: np.ndarray
    unit: DgModule
    name: str = "H2"

    @property
    def p(self) -> int:
        return self.algebra.p

    @cached_property
    def decomposition(self) -> np.ndarray:
        """Inverse of (c, a) ↦ a·e_c; coordinates (c, a) sit at index c·dim A + a."""
        na, H = self.algebra.dim, self.H2
        phi = zeros(H.dim, len(self.basis) * na)
        for c, e in enumerate(self.basis):
            for a in range(na):
                phi[:, c * na + a] = H.left[a][:, e]
        if phi.shape[0] != phi.shape[1] or not is_invertible(phi, self.p):
            raise StructureMismatchError(f"{self.name}: basis is not a free left basis")
        return inverse_mod(phi, self.p)

    def decompose(self, x: np.ndarray) -> np.ndarray:
        """x = Σ a·e_c, returned as an (n_basis × dim A) coefficient array."""
        flat = matmul_mod(self.decomposition, np.asarray(x, dtype=np.int64) % self.p, self.p)
        return flat.reshape(len(self.basis), self.algebra.dim)

    def basis_degree(self, c: int) -> int:
        return int(self.H2.degrees[self.basis[c]])


def model_monoidal(model: CrossedModelDatum) -> MonoidalDatum:
    """H2 = E*(2) with zero differential, ς the factor swap, unit E*(0) = H*(U, k)."""
    E = build_E(model)
    A = DgAlgebra.from_graded(E, name=f"E({model.name})")
    H2 = ext_n(model, 2, E)
    unit = from_graded_module(A, ext_n(model, 0, E).left_module())
    return MonoidalDatum(A, H2, tuple(free_left_basis(model, H2)), factor_swap(model, H2), unit, f"E({model.name})(2)")


def ground_monoidal(p: int) -> MonoidalDatum:
    """A = H2 = k: the box product is the tensor product of complexes."""
    k = ground_algebra(p)
    one = np.ones((1, 1, 1), dtype=np.int64)
    H2 = GradedBimodule(k.algebra, np.zeros(1, dtype=np.int64), one, (one, one), ("1",), "k")
    return MonoidalDatum(k, H2, (0,), identity(1), augmentation_module(k), "k")


@dataclass(frozen=True, eq=False)
class BoxProduct:
    """Semifree model of M ⊠ N; ``keys[t]`` = (c, i, k) names generator e_c⊗g_i⊗g'_k."""

    semifree: SemifreeModule
    keys: Tuple[Tuple[int, int, int], ...]
    first: SemifreeModule
    second: SemifreeModule

    @property
    def module(self) -> DgModule:
        return self.semifree.module

    @property
    def certified(self) -> LevelRange:
        ex = self.semifree.exact_from
        return (None if ex is None else ex + 1, None)

    def dims(self) -> Dict[Tuple[int, int], int]:
        M = self.module
        return cohomology_classes(M.differential, M.degrees, M.weights, M.p, self.certified).dims()


def _exact_from(F: SemifreeModule, G: SemifreeModule) -> Optional[int]:
    bounds = []
    if F.exact_from is not None:
        bounds.append(F.exact_from + (G.max_level() or 0))
    if G.exact_from is not None:
        bounds.append(G.exact_from + (F.max_level() or 0))
    return max(bounds) if bounds else None


def _place(out: np.ndarray, coeffs: np.ndarray, scale: int, slot: Dict[int, int], na: int) -> None:
    """Add scale·Σ a·e_c into ``out``, with e_c at generator ``slot[c]``."""
    for c, a in np.argwhere(coeffs):
        out[slot[int(c)] * na + a] += scale * coeffs[c, a]


def _sign(exponent: int, p: int) -> int:
    return 1 if exponent % 2 == 0 else p - 1


def boxtimes(
    datum: MonoidalDatum,
    M: ModuleLike,
    N: ModuleLike,
    window: Tuple[int, int],
    margin: Optional[int] = None,
) -> BoxProduct:
    """Semifree model of M ⊠ N on generators e_c⊗g_i⊗g'_k.

    d(e_c⊗g⊗g') = (-1)^{|e_c|} e_c⊗(dg⊗g' + (-1)^{|g|} g⊗dg'); moving a
    coefficient a⊗b of the tensor past g costs (-1)^{|b||g|}.
    """
    A, p = datum.algebra, datum.p
    R1, R2 = datum.H2.rights
    FM = semifree_of(A, M, window, margin)
    FN = semifree_of(A, N, window, margin)
    na, nb, nm, nn = A.dim, len(datum.basis), FM.rank, FN.rank
    keys = sorted(itertools.product(range(nb), range(nm), range(nn)), key=lambda t: (t[1] + t[2], t[1], t[2], t[0]))
    position = {key: t for t, key in enumerate(keys)}
    bM, bN = FM.boundary_matrix(), FN.boundary_matrix()
    generators: List[Generator] = []
    boundaries: List[np.ndarray] = []
    for t, (c, i, k) in enumerate(keys):
        gi, gk = FM.generators[i], FN.generators[k]
        ec, deg_c = datum.basis[c], datum.basis_degree(c)
        generators.append(Generator(deg_c + gi.degree + gk.degree, deg_c + gi.weight + gk.weight,
                                    gi.layer + gk.layer, f"e{c}⊗{gi.label}⊗{gk.label}"))
        out = np.zeros(len(keys) * na, dtype=np.int64)
        outer = _sign(deg_c, p)
        for l, a in np.argwhere(bM[:, i].reshape(nm, na)):
            slot = {c2: position[(c2, int(l), k)] for c2 in range(nb)}
            _place(out, datum.decompose(R1[a][:, ec]), outer * bM[l * na + a, i], slot, na)
        for l, b in np.argwhere(bN[:, k].reshape(nn, na)):
            slot = {c2: position[(c2, i, int(l))] for c2 in range(nb)}
            scale = outer * _sign(gi.degree + A.degrees[b] * gi.degree, p) * bN[l * na + b, k]
            _place(out, datum.decompose(R2[b][:, ec]), scale, slot, na)
        if np.any(out[t * na:]):
            raise StructureMismatchError(f"boundary of generator {keys[t]} is not supported on earlier generators")
        boundaries.append(out[: t * na] % p)
    full = SemifreeModule(A, tuple(generators), tuple(boundaries), f"{FM.name}⊠{FN.name}", _exact_from(FM, FN))
    if full.exact_from is None:
        semifree, kept = full, tuple(keys)
    else:
        semifree = full.truncated(full.exact_from)
        kept = tuple(key for key, g in zip(keys, generators) if g.level >= full.exact_from)
    logger.debug("%s: %d generators", semifree.name, semifree.rank)
    return BoxProduct(semifree, kept, FM, FN)


def tensor_complex(X: DgModule, Y: DgModule) -> DgModule:
    """X ⊗_k Y with d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy; index x·dim Y + y."""
    p = X.p
    D = np.kron(X.differential, identity(Y.dim)) + np.kron(np.diag(koszul_signs(X.degrees, p)), Y.differential)
    return DgModule(
        ground_algebra(p), "left",
        (X.degrees[:, None] + Y.degrees[None, :]).reshape(-1),
        (X.weights[:, None] + Y.weights[None, :]).reshape(-1),
        np.eye(X.dim * Y.dim, dtype=np.int64)[None],
        D % p,
        name=f"{X.name}⊗{Y.name}",
    )


def koszul_swap(X: DgModule, Y: DgModule) -> np.ndarray:
    """x⊗y ↦ (-1)^{|x||y|} y⊗x, from X⊗Y to Y⊗X."""
    p, n, m = X.p, X.dim, Y.dim
    out = zeros(n * m, n * m)
    for x, y in itertools.product(range(n), range(m)):
        out[y * n + x, x * m + y] = _sign(X.degrees[x] * Y.degrees[y], p)
    return out


def swap_residue(datum: MonoidalDatum) -> Optional[Tuple[int, int, int]]:
    """First (x, a, b) with ς(x·(a⊗b)) ≠ (-1)^{|a||b|} ς(x)·(b⊗a); b = -1 flags ς(a·x) ≠ a·ς(x)."""
    H, p, A = datum.H2, datum.p, datum.algebra
    R1, R2 = H.rights
    S = datum.swap
    for a, b in itertools.product(range(A.dim), repeat=2):
        lhs = matmul_mod(S, matmul_mod(R2[b], R1[a], p), p)
        rhs = _sign(A.degrees[a] * A.degrees[b], p) * matmul_mod(matmul_mod(R2[a], R1[b], p), S, p) % p
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            return int(bad[0][1]), a, b
    for a in range(A.dim):
        bad = np.argwhere(matmul_mod(S, H.left[a], p) != matmul_mod(H.left[a], S, p))
        if bad.size:
            return int(bad[0][1]), a, -1
    return None


def box_swap(datum: MonoidalDatum, MN: BoxProduct, NM: BoxProduct) -> np.ndarray:
    """M⊠N -> N⊠M, A-linear, on generators e_c⊗g⊗g' ↦ (-1)^{|g||g'|} ς(e_c)⊗g'⊗g.

    Raises:
        StructureMismatchError: ς does not intertwine the actions; the witness triple is in the message.
    """
    bad = swap_residue(datum)
    if bad is not None:
        raise StructureMismatchError(f"{datum.name}: swap does not intertwine the actions at (x, a, b) = {bad}")
    A, p = datum.algebra, datum.p
    na = A.dim
    target = {key: t for t, key in enumerate(NM.keys)}
    left = np.einsum("bac->bca", A.mult)
    out = zeros(NM.semifree.dim, MN.semifree.dim)
    for t, (c, i, k) in enumerate(MN.keys):
        gi, gk = MN.first.generators[i], MN.second.generators[k]
        coeffs = datum.decompose(datum.swap[:, datum.basis[c]])
        image = np.zeros((NM.semifree.rank, na), dtype=np.int64)
        for c2, a2 in np.argwhere(coeffs):
            u = target.get((int(c2), k, i))
            if u is not None:
                image[u, a2] += _sign(gi.degree * gk.degree, p) * coeffs[c2, a2]
        for a in range(na):
            out[:, t * na + a] = (image @ left[a].T).reshape(-1)
    return out % p


def swap_descends(datum: MonoidalDatum, MN: BoxProduct, NM: BoxProduct) -> Dict[str, object]:
    """Is the generator-level swap a chain map on the certified levels?"""
    S = box_swap(datum, MN, NM)
    p = datum.p
    source, dest = MN.module, NM.module
    residue = (matmul_mod(dest.differential, S, p) - matmul_mod(S, source.differential, p)) % p
    lo = MN.certified[0]
    rows = np.arange(dest.dim) if lo is None else np.nonzero(dest.levels >= lo)[0]
    cols = np.arange(source.dim) if lo is None else np.nonzero(source.levels >= lo)[0]
    bad = np.argwhere(residue[np.ix_(rows, cols)])
    witness = None if not bad.size else {"source": int(cols[bad[0][1]]), "target": int(rows[bad[0][0]])}
    return {"residue_zero": witness is None, "witness": witness, "swap": S}


def hom_boxtimes(
    datum: MonoidalDatum,
    N: ModuleLike,
    R: DgModule,
    window: Tuple[int, int],
    margin: Optional[int] = None,
) -> Tuple[DgModule, SemifreeModule]:
    """Hom^⊠(N, R) = Hom_A(H2 ⊗_{A₂} semifree(N), R), a left A-module through ·₁.

    (a·f)(x) = (-1)^{|a|(|f|+|x|)} f(x·a), with (e_c⊗w)·a = (-1)^{|a||w|} (e_c·₁a)⊗w.
    Returns the module and its semifree source H2 ⊗_{A₂} semifree(N).
    """
    A, p = datum.algebra, datum.p
    R1, R2 = datum.H2.rights
    FN = semifree_of(A, N, window, margin)
    na, nb, nn = A.dim, len(datum.basis), FN.rank
    bN = FN.boundary_matrix()
    keys = sorted(itertools.product(range(nb), range(nn)), key=lambda t: (t[1], t[0]))
    position = {key: t for t, key in enumerate(keys)}
    generators, boundaries = [], []
    for t, (c, k) in enumerate(keys):
        gk, deg_c = FN.generators[k], datum.basis_degree(c)
        generators.append(Generator(deg_c + gk.degree, deg_c + gk.weight, gk.layer, f"e{c}⊗{gk.label}"))
        out = np.zeros(len(keys) * na, dtype=np.int64)
        for l, b in np.argwhere(bN[:, k].reshape(nn, na)):
            slot = {c2: position[(c2, int(l))] for c2 in range(nb)}
            _place(out, datum.decompose(R2[b][:, datum.basis[c]]), _sign(deg_c, p) * bN[l * na + b, k], slot, na)
        boundaries.append(out[: t * na] % p)
    Q = SemifreeModule(A, tuple(generators), tuple(boundaries), f"{datum.name}⊗{FN.name}", FN.exact_from)
    H, _ = hom_semifree(Q, R)
    m = R.dim
    gdeg = np.array([g.degree for g in Q.generators], dtype=np.int64)
    action = np.zeros((na, H.dim, H.dim), dtype=np.int64)
    for a in range(na):
        for (c, k), t in position.items():
            coeffs = datum.decompose(R1[a][:, datum.basis[c]])
            moved = A.degrees[a] * FN.generators[k].degree
            for c2, a2 in np.argwhere(coeffs):
                u = position[(int(c2), k)]
                f_deg = R.degrees - gdeg[u]
                exps = (A.degrees[a] * (f_deg + gdeg[t]) + moved + A.degrees[a2] * f_deg) % 2
                signs = np.where(exps == 0, 1, p - 1)
                action[a, t * m:(t + 1) * m, u * m:(u + 1) * m] += coeffs[c2, a2] * R.action[a2] * signs[None, :]
    module = DgModule(A, "left", H.degrees, H.weights, action % p, H.differential, name=f"Hom⊠({FN.name}, {R.name})")
    return module, Q


def adjunction_check(
    datum: MonoidalDatum,
    M: ModuleLike,
    N: ModuleLike,
    R: DgModule,
    window: Tuple[int, int],
    margin: Optional[int] = None,
) -> Dict[str, object]:
    """Compare h^0 of RHom(M⊠N, R) and RHom(M, Hom^⊠(N, R)) weight by weight on the common levels."""
    A = datum.algebra
    box = boxtimes(datum, M, N, window, margin)
    lhs = derived_hom(A, box.semifree, R, window, margin)
    inner, _ = hom_boxtimes(datum, box.second, R, window, margin)
    rhs = derived_hom(A, box.first, inner, window, margin)
    levels = _intersect(lhs.certified, rhs.certified)

    def h0(C: DgModule) -> Dict[int, int]:
        dims = cohomology_classes(C.differential, C.degrees, C.weights, C.p, levels).dims()
        return {w: n for (d, w), n in dims.items() if d == 0}

    first, second = h0(lhs.complex), h0(rhs.complex)
    logger.debug("adjunction on levels %s: %s vs %s", levels, first, second)
    return {"equal": first == second, "lhs": first, "rhs": second, "levels": list(levels)}


def unit_law(datum: MonoidalDatum, M: ModuleLike, window: Tuple[int, int], margin: Optional[int] = None) -> Dict[str, object]:
    """dims h*(M ⊠ unit) against dims h*(M) on the certified levels."""
    box = boxtimes(datum, M, datum.unit, window, margin)
    target = M.module if isinstance(M, SemifreeModule) else M
    levels = box.certified
    expected = cohomology_classes(target.differential, target.degrees, target.weights, target.p, levels).dims()
    got = box.dims()
    return {"equal": got == expected, "box": got, "expected": expected}


def associativity(
    datum: MonoidalDatum,
    M: ModuleLike,
    N: ModuleLike,
    R: ModuleLike,
    window: Tuple[int, int],
    margin: Optional[int] = None,
) -> Dict[str, object]:
    """dims h*((M⊠N)⊠R) against dims h*(M⊠(N⊠R)) on the common certified levels."""
    left = boxtimes(datum, boxtimes(datum, M, N, window, margin).semifree, R, window, margin)
    right = boxtimes(datum, M, boxtimes(datum, N, R, window, margin).semifree, window, margin)
    levels = _intersect(left.certified, right.certified)

    def dims(box: BoxProduct) -> Dict[Tuple[int, int], int]:
        C = box.module
        return cohomology_classes(C.differential, C.degrees, C.weights, C.p, levels).dims()

    first, second = dims(left), dims(right)
    return {"equal": first == second, "left": first, "right": second}


def boxtimes_symmetry(
    datum: MonoidalDatum,
    M: ModuleLike,
    N: ModuleLike,
    window: Tuple[int, int],
    margin: Optional[int] = None,
) -> Dict[str, object]:
    """The swap descends to a chain map M⊠N -> N⊠M that is invertible on the certified levels."""
    MN = boxtimes(datum, M, N, window, margin)
    NM = boxtimes(datum, N, M, window, margin)
    outcome = swap_descends(datum, MN, NM)
    S = outcome.pop("swap")
    lo = MN.certified[0]
    rows = np.arange(NM.semifree.dim) if lo is None else np.nonzero(NM.module.levels >= lo)[0]
    cols = np.arange(MN.semifree.dim) if lo is None else np.nonzero(MN.module.levels >= lo)[0]
    block = S[np.ix_(rows, cols)]
    outcome["invertible"] = block.shape[0] == block.shape[1] and is_invertible(block, datum.p)
    outcome["dims"] = {"MN": MN.dims(), "NM": NM.dims()}
    return outcome
