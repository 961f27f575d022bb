"""
Verification suites for the dg engine and the monoidal stand-ins.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from dgcore.derived import derived_hom, derived_tensor, invariance_defect
from dgcore.dg import (
    DgAlgebra,
    DgModule,
    augmentation_module,
    cohomology_algebra,
    cohomology_classes,
    ground_algebra,
    mapping_cone,
    regular_dg_module,
)
from dgcore.instances import (
    exterior_dg,
    exterior_minimal_resolution,
    koszul_test_algebra,
    model_trivial,
    two_term_module,
)
from dgcore.monoidal import (
    MonoidalDatum,
    adjunction_check,
    associativity,
    boxtimes,
    boxtimes_symmetry,
    ground_monoidal,
    koszul_swap,
    model_monoidal,
    swap_descends,
    swap_residue,
    tensor_complex,
    unit_law,
)
from dgcore.semifree import semifree_resolve
from exactla.matrix import identity, matmul_mod, zeros
from yoneda.model import CrossedModelDatum
from utils.errors import ModelError
from utils.helpers import check_result

logger = logging.getLogger(__name__)


@dataclass
class DgContext:
    """Λ(y) over F_p with the window the oracles are compared on."""

    p: int
    window: Tuple[int, int] = (0, 6)
    margin: Optional[int] = None

    @cached_property
    def A(self) -> DgAlgebra:
        return exterior_dg(self.p)

    @cached_property
    def k_left(self) -> DgModule:
        return augmentation_module(self.A, "left")

    @cached_property
    def k_right(self) -> DgModule:
        return augmentation_module(self.A, "right")

    def window_levels(self, sign: int) -> List[int]:
        lo, hi = self.window
        return [sign * n for n in range(lo, hi + 1)]


def _restrict(dims: Dict[int, int], levels: List[int]) -> Dict[int, int]:
    return {s: dims.get(s, 0) for s in levels}


def check_dg_axioms(ctx: DgContext) -> Dict[str, Any]:
    """d² = 0 and Leibniz on every basis pair of the bundled algebras and modules."""
    A = ctx.A
    T = koszul_test_algebra(ctx.p)
    objects = [A, T, ctx.k_left, ctx.k_right, regular_dg_module(A), regular_dg_module(A, "right"),
               two_term_module(A), regular_dg_module(T), augmentation_module(T)]
    for obj in objects:
        try:
            obj.validate()
        except ModelError as exc:
            return check_result(False, objects.index(obj), witness={"object": obj.name, "error": str(exc), "at": exc.witness})
    return check_result(True, len(objects))


def check_cohomology_examples(ctx: DgContext) -> Dict[str, Any]:
    """Zero differential, the cone of an identity, the two-term module and the Koszul test algebra."""
    A = ctx.A
    M = regular_dg_module(A)
    plain = cohomology_classes(M.differential, M.degrees, M.weights, ctx.p).dims()
    if plain != M.dims():
        return check_result(False, 1, witness={"case": "zero differential", "h": plain, "M": M.dims()})
    cone = mapping_cone(identity(M.dim), M, M)
    h_cone = cohomology_classes(cone.differential, cone.degrees, cone.weights, ctx.p).dim
    if h_cone:
        return check_result(False, 2, witness={"case": "cone of identity", "dim": h_cone})
    two = two_term_module(A)
    by_degree = cohomology_classes(two.differential, two.degrees, two.weights, ctx.p).dims_by_degree()
    if by_degree != {0: 1, 1: 1}:
        return check_result(False, 3, witness={"case": "two-term", "dims": by_degree})
    H, _ = cohomology_algebra(koszul_test_algebra(ctx.p))
    if H.dims() != {-1: 1, 0: 1}:
        return check_result(False, 4, witness={"case": "Λ(x)⊗k[t]/t²", "dims": H.dims()})
    return check_result(True, 4)


def check_resolution_oracle(ctx: DgContext) -> Dict[str, Any]:
    """The resolution of k over Λ(y) has one generator per level; a free module resolves to itself."""
    res = semifree_resolve(ctx.A, ctx.k_left, ctx.window, ctx.margin)
    per_level: Dict[int, int] = {}
    for g in res.resolution.generators:
        per_level[g.level] = per_level.get(g.level, 0) + 1
    expected = {s: 1 for s in range(res.floor, 1)}
    if dict(sorted(per_level.items())) != expected:
        return check_result(False, 1, witness={"generators_per_level": per_level, "expected": expected})
    free = semifree_resolve(ctx.A, regular_dg_module(ctx.A), ctx.window, ctx.margin)
    if free.resolution.rank != 1:
        return check_result(False, 2, witness={"free_rank": free.resolution.rank})
    return check_result(True, 2, details={"floor": res.floor})


def check_tor_oracle(ctx: DgContext) -> Dict[str, Any]:
    """dim Tor_n^{Λ(y)}(k, k) = 1 for n in the window, from the resolver and from the hand-built resolution."""
    levels = ctx.window_levels(-1)
    expected = {s: 1 for s in levels}
    oracle = exterior_minimal_resolution(ctx.A, ctx.window[1] + 1)
    for name, M in (("resolver", ctx.k_left), ("oracle", oracle)):
        tor = derived_tensor(ctx.k_right, M, ctx.window, ctx.margin)
        got = _restrict(tor.cohomology().dims_by_level(), levels)
        if got != expected:
            return check_result(False, len(levels), witness={"resolution": name, "tor": got, "certified": list(tor.certified)})
    return check_result(True, 2 * len(levels))


def check_ext_oracle(ctx: DgContext) -> Dict[str, Any]:
    """dim Ext^n_{Λ(y)}(k, k) = 1 for n in the window."""
    levels = ctx.window_levels(1)
    expected = {s: 1 for s in levels}
    oracle = exterior_minimal_resolution(ctx.A, ctx.window[1] + 1)
    for name, M in (("resolver", ctx.k_left), ("oracle", oracle)):
        ext = derived_hom(ctx.A, M, ctx.k_left, ctx.window, ctx.margin)
        got = _restrict(ext.cohomology().dims_by_level(), levels)
        if got != expected:
            return check_result(False, len(levels), witness={"resolution": name, "ext": got, "certified": list(ext.certified)})
    return check_result(True, 2 * len(levels))


def check_invariance(ctx: DgContext) -> Dict[str, Any]:
    """Replacing an argument by its own resolution, or resolving the other side, keeps cohomology dims."""
    A, window, margin = ctx.A, ctx.window, ctx.margin
    checked = 0
    for M in (ctx.k_left, two_term_module(A)):
        replaced = semifree_resolve(A, M, window, margin).module
        pairs = [
            ("tensor", derived_tensor(ctx.k_right, M, window, margin), derived_tensor(ctx.k_right, replaced, window, margin)),
            ("hom", derived_hom(A, M, ctx.k_left, window, margin), derived_hom(A, replaced, ctx.k_left, window, margin)),
            ("sides", derived_tensor(ctx.k_right, M, window, margin),
             derived_tensor(ctx.k_right, M, window, margin, resolve="right")),
        ]
        for name, first, second in pairs:
            defect = invariance_defect(first, second)
            if defect is not None:
                return check_result(False, checked, witness={"module": M.name, "functor": name, **defect})
            checked += 1
    return check_result(True, checked)


def check_identity_class(ctx: DgContext) -> Dict[str, Any]:
    """h^0 RHom(M, M) is nonzero when h*(M) is."""
    A = ctx.A
    for M in (ctx.k_left, two_term_module(A), regular_dg_module(A)):
        ext = derived_hom(A, M, M, ctx.window, ctx.margin)
        h0 = ext.cohomology().dims_by_degree().get(0, 0)
        if h0 < 1:
            return check_result(False, 1, witness={"module": M.name, "h0": h0})
    return check_result(True, 3)


@dataclass
class MonoidalContext:
    """A crossed model with H2 = E*(2) and the arguments {A, k} of the sweeps."""

    model: CrossedModelDatum
    window: Tuple[int, int] = (0, 2)
    margin: Optional[int] = None

    @cached_property
    def datum(self) -> MonoidalDatum:
        return model_monoidal(self.model)

    @cached_property
    def arguments(self) -> Dict[str, DgModule]:
        A = self.datum.algebra
        return {"A": regular_dg_module(A), "k": model_trivial(A, self.model)}

    @property
    def p(self) -> int:
        return self.model.p


def check_box_free_collapse(ctx: MonoidalContext) -> Dict[str, Any]:
    """A ⊠ A has the cohomology of H2."""
    A = ctx.arguments["A"]
    box = boxtimes(ctx.datum, A, A, ctx.window, ctx.margin)
    got = cohomology_classes(box.module.differential, box.module.degrees, box.module.weights, ctx.p,
                             box.certified).dims_by_degree()
    expected = ctx.datum.H2.left_module().dims()
    if got != expected:
        return check_result(False, 1, witness={"box": got, "H2": expected})
    return check_result(True, 1, details={"dims": got})


def _complexes(p: int) -> List[DgModule]:
    k = ground_algebra(p)
    one = np.ones((1, 1, 1), dtype=np.int64)
    point = DgModule(k, "left", [1], [1], one, zeros(1, 1), ("u",), "k[-1]")
    arrow = DgModule(k, "left", [0, 1, 1], [0, 0, 1], np.eye(3, dtype=np.int64)[None],
                     np.array([[0, 0, 0], [1, 0, 0], [0, 0, 0]], dtype=np.int64), ("a", "b", "c"), "a→b ⊕ c")
    return [augmentation_module(k), point, arrow]


def check_box_ground(ctx: MonoidalContext) -> Dict[str, Any]:
    """With A = H2 = k the box product is the tensor product of complexes."""
    datum = ground_monoidal(ctx.p)
    checked = 0
    for X, Y in itertools.product(_complexes(ctx.p), repeat=2):
        X, Y = _rebase(X, datum.algebra), _rebase(Y, datum.algebra)
        box = boxtimes(datum, X, Y, ctx.window, ctx.margin)
        T = tensor_complex(X, Y)
        expected = cohomology_classes(T.differential, T.degrees, T.weights, ctx.p, box.certified).dims()
        if box.dims() != expected:
            return check_result(False, checked, witness={"pair": [X.name, Y.name], "box": box.dims(), "tensor": expected})
        checked += 1
    return check_result(True, checked)


def _rebase(M: DgModule, k: DgAlgebra) -> DgModule:
    return DgModule(k, M.side, M.degrees, M.weights, M.action, M.differential, M.labels, M.name)


def check_koszul_swap(ctx: MonoidalContext) -> Dict[str, Any]:
    """The swap of complexes is an involutive chain map and signs odd⊗odd by -1."""
    p = ctx.p
    checked = 0
    for X, Y in itertools.product(_complexes(p), repeat=2):
        S, back = koszul_swap(X, Y), koszul_swap(Y, X)
        if not np.array_equal(matmul_mod(back, S, p), identity(S.shape[0])):
            return check_result(False, checked, witness={"pair": [X.name, Y.name], "error": "not involutive"})
        XY, YX = tensor_complex(X, Y), tensor_complex(Y, X)
        if not np.array_equal(matmul_mod(YX.differential, S, p), matmul_mod(S, XY.differential, p)):
            return check_result(False, checked, witness={"pair": [X.name, Y.name], "error": "not a chain map"})
        checked += 1
    odd = _complexes(p)[1]
    if koszul_swap(odd, odd)[0, 0] != p - 1:
        return check_result(False, checked, witness={"error": "odd⊗odd swap has no sign"})
    return check_result(True, checked + 1)


def check_swap_descent(ctx: MonoidalContext) -> Dict[str, Any]:
    """The factor swap of E*(2) intertwines the actions, and its box-level lift is a chain map."""
    bad = swap_residue(ctx.datum)
    if bad is not None:
        return check_result(False, 0, witness={"x": bad[0], "a": bad[1], "b": bad[2]})
    checked = 1
    for first, second in (("A", "A"), ("A", "k")):
        M, N = ctx.arguments[first], ctx.arguments[second]
        MN = boxtimes(ctx.datum, M, N, ctx.window, ctx.margin)
        NM = boxtimes(ctx.datum, N, M, ctx.window, ctx.margin)
        outcome = swap_descends(ctx.datum, MN, NM)
        if not outcome["residue_zero"]:
            return check_result(False, checked, witness={"pair": [first, second], **outcome["witness"]})
        checked += 1
    return check_result(True, checked)


def check_box_symmetry(ctx: MonoidalContext) -> Dict[str, Any]:
    """M ⊠ N ≅ N ⊠ M through the swap, on the certified levels."""
    checked = 0
    for first, second in itertools.product(ctx.arguments, repeat=2):
        outcome = boxtimes_symmetry(ctx.datum, ctx.arguments[first], ctx.arguments[second], ctx.window, ctx.margin)
        if not (outcome["residue_zero"] and outcome["invertible"]):
            return check_result(False, checked, witness={"pair": [first, second], "residue": outcome["witness"],
                                                         "invertible": outcome["invertible"]})
        checked += 1
    return check_result(True, checked)


def check_unit_law(ctx: MonoidalContext) -> Dict[str, Any]:
    """M ⊠ unit has the cohomology dims of M on the certified levels, for each argument M."""
    for name, M in ctx.arguments.items():
        outcome = unit_law(ctx.datum, M, ctx.window, ctx.margin)
        if not outcome["equal"]:
            return check_result(False, 1, witness={"M": name, "box": outcome["box"], "expected": outcome["expected"]})
    return check_result(True, len(ctx.arguments))


def check_associativity(ctx: MonoidalContext) -> Dict[str, Any]:
    """(M⊠N)⊠R and M⊠(N⊠R) have equal cohomology dims over the 2×2×2 sweep."""
    checked = 0
    for names in itertools.product(ctx.arguments, repeat=3):
        M, N, R = (ctx.arguments[n] for n in names)
        outcome = associativity(ctx.datum, M, N, R, ctx.window, ctx.margin)
        if not outcome["equal"]:
            return check_result(False, checked, witness={"triple": list(names), "left": outcome["left"], "right": outcome["right"]})
        checked += 1
    return check_result(True, checked)


def check_adjunction(ctx: MonoidalContext) -> Dict[str, Any]:
    """h^0 RHom(M⊠N, R) and h^0 RHom(M, Hom^⊠(N, R)) agree over the 2×2×2 sweep."""
    checked = 0
    for names in itertools.product(ctx.arguments, repeat=3):
        M, N, R = (ctx.arguments[n] for n in names)
        outcome = adjunction_check(ctx.datum, M, N, R, ctx.window, ctx.margin)
        if not outcome["equal"]:
            return check_result(False, checked, witness={"triple": list(names), "lhs": outcome["lhs"], "rhs": outcome["rhs"]})
        checked += 1
    return check_result(True, checked)


def check_adjunction_free(ctx: MonoidalContext) -> Dict[str, Any]:
    """M = N = R = A: both sides of the adjunction are computed without resolving anything new."""
    A = ctx.arguments["A"]
    outcome = adjunction_check(ctx.datum, A, A, A, ctx.window, ctx.margin)
    if not outcome["equal"]:
        return check_result(False, 1, witness={"lhs": outcome["lhs"], "rhs": outcome["rhs"]})
    return check_result(True, 1, details={"h0": outcome["lhs"]})
