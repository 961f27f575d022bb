"""
Finite-dimensional dg algebras and dg modules over F_p.

Every basis element carries a cohomological degree and a non-negative weight.
Differentials raise the degree by one and keep the weight, so the level
``deg - wt`` goes up by one along d; products add both gradings.
Matrices act on column vectors: ``differential[:, j]`` is d(e_j).
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from exactla.matrix import complement_columns, identity, matmul_mod, nullspace, solve_mod, zeros
from yoneda.graded import GradedAlgebra, GradedModule
from utils.errors import ModelError, StructureMismatchError

logger = logging.getLogger(__name__)

Bidegree = Tuple[int, int]
LevelRange = Tuple[Optional[int], Optional[int]]


def koszul_signs(degrees: np.ndarray, p: int) -> np.ndarray:
    """(-1)^deg as residues mod p."""
    return np.where(np.asarray(degrees) % 2 == 0, 1, p - 1).astype(np.int64)


def bidegree_blocks(degrees: np.ndarray, weights: np.ndarray) -> Dict[Bidegree, np.ndarray]:
    blocks: Dict[Bidegree, List[int]] = defaultdict(list)
    for i, (d, w) in enumerate(zip(degrees.tolist(), weights.tolist())):
        blocks[(d, w)].append(i)
    return {b: np.array(idx, dtype=np.int64) for b, idx in sorted(blocks.items())}


def in_levels(level: int, levels: Optional[LevelRange]) -> bool:
    if levels is None:
        return True
    lo, hi = levels
    return (lo is None or level >= lo) and (hi is None or level <= hi)


def _check_homogeneous_differential(D: np.ndarray, degrees: np.ndarray, weights: np.ndarray, name: str) -> None:
    for i, j in np.argwhere(D):
        if degrees[i] != degrees[j] + 1 or weights[i] != weights[j]:
            raise ModelError(f"{name}: differential is not of bidegree (1, 0)", witness=(int(j), int(i)))


@dataclass(frozen=True, eq=False)
class DgAlgebra:
    """A graded algebra with weights and a square-zero derivation."""

    algebra: GradedAlgebra
    weights: np.ndarray
    differential: np.ndarray
    name: str = "A"

    def __post_init__(self):
        p = self.algebra.p
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=np.int64))
        object.__setattr__(self, "differential", np.asarray(self.differential, dtype=np.int64) % p)

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def degrees(self) -> np.ndarray:
        return self.algebra.degrees

    @property
    def mult(self) -> np.ndarray:
        return self.algebra.mult

    @property
    def unit(self) -> np.ndarray:
        return self.algebra.unit

    @property
    def levels(self) -> np.ndarray:
        return self.degrees - self.weights

    @property
    def is_formal_zero(self) -> bool:
        """True when the differential vanishes."""
        return not np.any(self.differential)

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.algebra.multiply(x, y)

    def validate(self) -> None:
        """Associativity, unit, bigrading, d² = 0 and the graded Leibniz rule on all basis pairs."""
        A, p, D = self.algebra, self.p, self.differential
        A.validate()
        if self.weights.shape != A.degrees.shape or np.any(self.weights < 0):
            raise ModelError(f"{self.name}: weights must be non-negative, one per basis element")
        for a, b, c in np.argwhere(A.mult % p):
            if self.weights[a] + self.weights[b] != self.weights[c]:
                raise ModelError(f"{self.name}: product does not add weights", witness=(int(a), int(b), int(c)))
        _check_homogeneous_differential(D, A.degrees, self.weights, self.name)
        if np.any(matmul_mod(D, D, p)):
            raise ModelError(f"{self.name}: d² ≠ 0")
        lhs = np.einsum("abc,ic->abi", A.mult, D) % p
        first = np.einsum("xa,xbi->abi", D, A.mult) % p
        second = np.einsum("yb,ayi->abi", D, A.mult) * koszul_signs(A.degrees, p)[:, None, None] % p
        bad = np.argwhere(lhs != (first + second) % p)
        if bad.size:
            raise ModelError(f"{self.name}: Leibniz rule fails", witness=tuple(int(x) for x in bad[0][:2]))

    @classmethod
    def from_graded(cls, A: GradedAlgebra, name: Optional[str] = None) -> DgAlgebra:
        """Zero differential, weight = degree."""
        return cls(A, A.degrees.copy(), zeros(A.dim, A.dim), name or A.name)

    def opposite(self) -> DgAlgebra:
        """a∘b = (-1)^{|a||b|} b a."""
        deg = self.degrees
        sign = np.where(np.outer(deg, deg) % 2 == 0, 1, self.p - 1)
        mult = np.einsum("bac->abc", self.mult) * sign[:, :, None] % self.p
        A = GradedAlgebra(deg.copy(), mult, self.unit.copy(), self.p, self.algebra.labels, f"{self.name}^op")
        return DgAlgebra(A, self.weights.copy(), self.differential.copy(), f"{self.name}^op")


def ground_algebra(p: int) -> DgAlgebra:
    """The field k as a dg algebra."""
    A = GradedAlgebra(np.zeros(1, dtype=np.int64), np.ones((1, 1, 1), dtype=np.int64), np.ones(1, dtype=np.int64), p, ("1",), "k")
    return DgAlgebra.from_graded(A, "k")


def tensor_algebra(A: DgAlgebra, B: DgAlgebra) -> DgAlgebra:
    """A ⊗ B with (a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa'⊗bb'; basis index a·dim B + b."""
    if A.p != B.p:
        raise StructureMismatchError("tensor product of algebras over different fields")
    p = A.p
    nb = B.dim
    sign = np.where(np.outer(B.degrees, A.degrees) % 2 == 0, 1, p - 1)  # [b, a']
    mult = np.einsum("xyz,uvw,uy->xuyvzw", A.mult, B.mult, sign) % p
    n = A.dim * nb
    mult = mult.reshape(n, n, n)
    degrees = (A.degrees[:, None] + B.degrees[None, :]).reshape(-1)
    weights = (A.weights[:, None] + B.weights[None, :]).reshape(-1)
    unit = np.kron(A.unit, B.unit) % p
    D = (np.kron(A.differential, identity(nb)) + np.kron(np.diag(koszul_signs(A.degrees, p)), B.differential)) % p
    labels = tuple(f"{la}⊗{lb}" for la in (A.algebra.labels or [f"e{i}" for i in range(A.dim)])
                   for lb in (B.algebra.labels or [f"e{j}" for j in range(nb)]))
    T = GradedAlgebra(degrees, mult, unit, p, labels, f"{A.name}⊗{B.name}")
    return DgAlgebra(T, weights, D, T.name)


@dataclass(frozen=True, eq=False)
class DgModule:
    """A left or right dg module; ``right_action`` adds a commuting right structure to a left module."""

    algebra: DgAlgebra
    side: str
    degrees: np.ndarray
    weights: np.ndarray
    action: np.ndarray
    differential: np.ndarray
    labels: Tuple[str, ...] = ()
    name: str = "M"
    right_action: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise StructureMismatchError(f"side must be 'left' or 'right', got {self.side!r}")
        if self.right_action is not None and self.side != "left":
            raise StructureMismatchError("an extra right action needs a left module")
        p = self.algebra.p
        object.__setattr__(self, "degrees", np.asarray(self.degrees, dtype=np.int64))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=np.int64))
        object.__setattr__(self, "action", np.asarray(self.action, dtype=np.int64) % p)
        object.__setattr__(self, "differential", np.asarray(self.differential, dtype=np.int64) % p)
        if self.right_action is not None:
            object.__setattr__(self, "right_action", np.asarray(self.right_action, dtype=np.int64) % p)

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return int(self.degrees.shape[0])

    @property
    def levels(self) -> np.ndarray:
        return self.degrees - self.weights

    def dims(self) -> Dict[Bidegree, int]:
        return {b: len(idx) for b, idx in bidegree_blocks(self.degrees, self.weights).items()}

    def as_graded(self) -> GradedModule:
        return GradedModule(self.algebra.algebra, self.side, self.degrees, self.action, self.labels, self.name)

    def right_graded(self) -> GradedModule:
        if self.right_action is None:
            raise StructureMismatchError(f"{self.name} has no right action")
        return GradedModule(self.algebra.algebra, "right", self.degrees, self.right_action, self.labels, self.name)

    def _leibniz_defect(self, action: np.ndarray, side: str) -> Optional[Tuple[int, int]]:
        A, p, D = self.algebra, self.p, self.differential
        dA = np.einsum("xa,xij->aij", A.differential, action) % p
        signs_a = koszul_signs(A.degrees, p)
        for a in range(A.dim):
            lhs = matmul_mod(D, action[a], p)
            if side == "left":
                rhs = (dA[a] + signs_a[a] * matmul_mod(action[a], D, p)) % p
            else:
                rhs = (matmul_mod(action[a], D, p) + dA[a] * koszul_signs(self.degrees, p)[None, :]) % p
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                return a, int(bad[0][1])
        return None

    def validate(self) -> None:
        """Module axioms, bigrading, d² = 0 and Leibniz compatibility on every basis pair."""
        p, A = self.p, self.algebra
        self.as_graded().validate()
        for a in range(A.dim):
            for i, j in np.argwhere(self.action[a]):
                if self.weights[i] != self.weights[j] + A.weights[a]:
                    raise ModelError(f"{self.name}: action does not add weights", witness=(a, int(j)))
        _check_homogeneous_differential(self.differential, self.degrees, self.weights, self.name)
        if np.any(matmul_mod(self.differential, self.differential, p)):
            raise ModelError(f"{self.name}: d² ≠ 0")
        bad = self._leibniz_defect(self.action, self.side)
        if bad is not None:
            raise ModelError(f"{self.name}: Leibniz rule fails", witness=bad)
        if self.right_action is not None:
            self.right_graded().validate()
            bad = self._leibniz_defect(self.right_action, "right")
            if bad is not None:
                raise ModelError(f"{self.name}: Leibniz rule fails for the right action", witness=bad)
            for a in range(A.dim):
                for b in range(A.dim):
                    lhs = matmul_mod(self.right_action[b], self.action[a], p)
                    if not np.array_equal(lhs, matmul_mod(self.action[a], self.right_action[b], p)):
                        raise ModelError(f"{self.name}: left and right actions do not commute", witness=(a, b))


def from_graded_module(A: DgAlgebra, M: GradedModule, right_action: Optional[np.ndarray] = None) -> DgModule:
    """Zero differential, weight = degree."""
    return DgModule(A, M.side, M.degrees.copy(), M.degrees.copy(), M.action, zeros(M.dim, M.dim),
                    M.labels, M.name, right_action)


def regular_dg_module(A: DgAlgebra, side: str = "left") -> DgModule:
    left = np.einsum("abc->acb", A.mult)
    right = np.einsum("bac->acb", A.mult)
    action = left if side == "left" else right
    return DgModule(A, side, A.degrees.copy(), A.weights.copy(), action, A.differential.copy(),
                    A.algebra.labels, A.name)


def augmentation_module(A: DgAlgebra, side: str = "left", augmentation: Optional[np.ndarray] = None) -> DgModule:
    """k in bidegree (0, 0) through an algebra map A -> k (default: the unit coefficient)."""
    eps = A.unit if augmentation is None else np.asarray(augmentation, dtype=np.int64)
    action = (eps % A.p).reshape(A.dim, 1, 1)
    return DgModule(A, side, np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64), action, zeros(1, 1), ("1",), "k")


def mapping_cone(f: np.ndarray, M: DgModule, N: DgModule) -> DgModule:
    """Cone(f: M -> N) = N ⊕ M[1] with d(n, m) = (dn + f m, -dm); left modules."""
    if M.algebra is not N.algebra or M.side != "left" or N.side != "left":
        raise StructureMismatchError("mapping cone needs two left modules over the same algebra")
    p = M.p
    m, n = M.dim, N.dim
    signs = koszul_signs(M.algebra.degrees, p)
    action = np.zeros((M.algebra.dim, n + m, n + m), dtype=np.int64)
    action[:, :n, :n] = N.action
    action[:, n:, n:] = M.action * signs[:, None, None]
    D = zeros(n + m, n + m)
    D[:n, :n] = N.differential
    D[:n, n:] = f
    D[n:, n:] = -M.differential
    return DgModule(M.algebra, "left", np.concatenate([N.degrees, M.degrees - 1]),
                    np.concatenate([N.weights, M.weights]), action, D % p, name=f"Cone({M.name}→{N.name})")


def is_chain_map(f: np.ndarray, M: DgModule, N: DgModule) -> bool:
    """Degree-0 module map commuting with the differentials."""
    p = M.p
    if f.shape != (N.dim, M.dim):
        return False
    if not np.array_equal(matmul_mod(N.differential, f, p), matmul_mod(f, M.differential, p)):
        return False
    return all(np.array_equal(matmul_mod(f, M.action[a], p), matmul_mod(N.action[a], f, p)) for a in range(M.algebra.dim))


@dataclass(frozen=True, eq=False)
class Cohomology:
    """Cohomology classes of a finite complex, chosen per bidegree."""

    p: int
    degrees: np.ndarray
    weights: np.ndarray
    reps: np.ndarray
    class_bidegrees: Tuple[Bidegree, ...]
    blocks: Dict[Bidegree, Tuple[np.ndarray, np.ndarray, np.ndarray]] = field(repr=False)

    @property
    def dim(self) -> int:
        return int(self.reps.shape[1])

    def dims(self) -> Dict[Bidegree, int]:
        out: Dict[Bidegree, int] = defaultdict(int)
        for b in self.class_bidegrees:
            out[b] += 1
        return dict(sorted(out.items()))

    def dims_by_degree(self) -> Dict[int, int]:
        out: Dict[int, int] = defaultdict(int)
        for (d, _), n in self.dims().items():
            out[d] += n
        return dict(sorted(out.items()))

    def dims_by_level(self) -> Dict[int, int]:
        out: Dict[int, int] = defaultdict(int)
        for (d, w), n in self.dims().items():
            out[d - w] += n
        return dict(sorted(out.items()))

    def coordinates(self, v: np.ndarray) -> np.ndarray:
        """Class coordinates of a cycle; components in untracked bidegrees are dropped."""
        p = self.p
        v = np.asarray(v, dtype=np.int64) % p
        out = np.zeros(self.dim, dtype=np.int64)
        for b, (idx, reps, bounds) in self.blocks.items():
            part = v[idx]
            if not np.any(part) or reps.shape[1] == 0:
                continue
            sol = solve_mod(np.hstack([reps, bounds]), part, p)
            if sol is None:
                raise ModelError(f"vector is not a cycle in bidegree {b}")
            cols = [k for k, cb in enumerate(self.class_bidegrees) if cb == b]
            out[cols] = sol[: reps.shape[1]]
        return out % p


def cohomology_classes(
    D: np.ndarray, degrees: np.ndarray, weights: np.ndarray, p: int,
    levels: Optional[LevelRange] = None, preferred: Optional[np.ndarray] = None,
) -> Cohomology:
    """ker d / im d per bidegree, optionally only at levels in ``levels``.

    Representatives are chosen greedily: first among the columns of
    ``preferred`` (cycles to favour), then among kernel basis vectors.
    """
    blocks = bidegree_blocks(degrees, weights)
    n = degrees.shape[0]
    reps_all: List[np.ndarray] = []
    class_bidegrees: List[Bidegree] = []
    kept: Dict[Bidegree, Tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
    for (d, w), cur in blocks.items():
        if not in_levels(d - w, levels):
            continue
        out = blocks.get((d + 1, w))
        src = blocks.get((d - 1, w))
        Z = nullspace(D[np.ix_(out, cur)], p) if out is not None else identity(len(cur))
        B = D[np.ix_(cur, src)] if src is not None else zeros(len(cur), 0)
        candidates = Z
        if preferred is not None and preferred.size:
            pref = preferred[cur]
            pref = pref[:, np.any(pref, axis=0)]
            if out is not None and pref.size:
                pref = pref[:, ~np.any(matmul_mod(D[np.ix_(out, cur)], pref, p), axis=0)]
            candidates = np.hstack([pref, Z])
        chosen = complement_columns(B, candidates, p) if candidates.shape[1] and len(cur) else []
        reps = candidates[:, chosen] if chosen else zeros(len(cur), 0)
        kept[(d, w)] = (cur, reps, B)
        for k in range(reps.shape[1]):
            full = np.zeros(n, dtype=np.int64)
            full[cur] = reps[:, k]
            reps_all.append(full)
            class_bidegrees.append((d, w))
    R = np.array(reps_all, dtype=np.int64).T if reps_all else zeros(n, 0)
    return Cohomology(p, degrees, weights, R, tuple(class_bidegrees), kept)


@dataclass(frozen=True, eq=False)
class CohomologyModule:
    """h*(M) with the induced action of h*(A)."""

    classes: Cohomology
    algebra_reps: np.ndarray
    module: GradedModule

    def dims(self) -> Dict[Bidegree, int]:
        return self.classes.dims()


def cohomology_algebra(A: DgAlgebra) -> Tuple[GradedAlgebra, np.ndarray]:
    """h*(A) and the representative of each of its basis elements; A itself when d = 0."""
    if A.is_formal_zero:
        return A.algebra, identity(A.dim)
    classes = cohomology_classes(A.differential, A.degrees, A.weights, A.p, preferred=identity(A.dim))
    h = classes.dim
    p = A.p
    mult = np.zeros((h, h, h), dtype=np.int64)
    for i in range(h):
        for j in range(h):
            mult[i, j] = classes.coordinates(A.multiply(classes.reps[:, i], classes.reps[:, j]))
    degrees = np.array([b[0] for b in classes.class_bidegrees], dtype=np.int64)
    unit = classes.coordinates(A.unit)
    return GradedAlgebra(degrees, mult % p, unit, p, name=f"h*({A.name})"), classes.reps


def cohomology(M: DgModule, levels: Optional[LevelRange] = None) -> CohomologyModule:
    """h*(M) at the given levels, as a graded module over h*(A)."""
    p = M.p
    classes = cohomology_classes(M.differential, M.degrees, M.weights, p, levels)
    H, a_reps = cohomology_algebra(M.algebra)
    h = classes.dim
    action = np.zeros((H.dim, h, h), dtype=np.int64)
    for alpha in range(H.dim):
        op = np.einsum("a,aij->ij", a_reps[:, alpha], M.action) % p
        for beta in range(h):
            action[alpha, :, beta] = classes.coordinates(matmul_mod(op, classes.reps[:, beta], p))
    degrees = np.array([b[0] for b in classes.class_bidegrees], dtype=np.int64)
    module = GradedModule(H, M.side, degrees, action % p, name=f"h*({M.name})")
    logger.debug("h*(%s): %s", M.name, classes.dims())
    return CohomologyModule(classes, a_reps, module)


def right_cohomology(M: DgModule, levels: Optional[LevelRange] = None) -> GradedModule:
    """h*(M) as a right module; the algebra must have zero differential.

    A right module carries its structure in ``action``, a bimodule in ``right_action``.
    """
    right = M.action if M.side == "right" else M.right_action
    if right is None or not M.algebra.is_formal_zero:
        raise StructureMismatchError(f"{M.name}: needs a right action over an algebra with d = 0")
    p = M.p
    classes = cohomology_classes(M.differential, M.degrees, M.weights, p, levels)
    A = M.algebra.algebra
    h = classes.dim
    action = np.zeros((A.dim, h, h), dtype=np.int64)
    for a in range(A.dim):
        for beta in range(h):
            action[a, :, beta] = classes.coordinates(matmul_mod(right[a], classes.reps[:, beta], p))
    degrees = np.array([b[0] for b in classes.class_bidegrees], dtype=np.int64)
    return GradedModule(A, "right", degrees, action % p, name=f"h*({M.name})")
