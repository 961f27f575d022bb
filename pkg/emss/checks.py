"""
Verification suites for the Eilenberg–Moore spectral sequences.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from dgcore.dg import augmentation_module, ground_algebra
from dgcore.instances import exterior_dg, model_dg_algebra, model_trivial
from emss.graded_homological import graded_ext, graded_tor, tensor_product_dims
from emss.instances import EmInstance, bundled_instances
from emss.spectral import SpectralSequencePages, collapse_check_cohdelta, e2_tor_defect, em_tor_ss
from yoneda.graded import GradedAlgebra, GradedModule, regular_module
from yoneda.maindual import model_modules
from yoneda.model import CrossedModelDatum, build_E
from utils.helpers import check_result, mismatch

logger = logging.getLogger(__name__)


@dataclass
class EmssContext:
    model: CrossedModelDatum
    window: Tuple[int, int] = (0, 4)
    margin: Optional[int] = None
    seed: int = 0

    @cached_property
    def E(self) -> GradedAlgebra:
        return build_E(self.model)

    @cached_property
    def instances(self) -> List[EmInstance]:
        return bundled_instances(self.model)

    @cached_property
    def sequences(self) -> Dict[str, SpectralSequencePages]:
        out = {}
        for inst in self.instances:
            out[inst.name] = em_tor_ss(inst.algebra, inst.P, inst.M, self.window, self.margin)
        return out

    @property
    def p(self) -> int:
        return self.model.p


def _table(dims: Dict[Tuple[int, int], int]) -> Dict[str, int]:
    return {f"{s},{t}": n for (s, t), n in sorted(dims.items())}


def check_em_convergence(ctx: EmssContext) -> Dict[str, Any]:
    """Σ_s E_∞ equals h*(P ⊗^L M) per certified degree, and consecutive pages satisfy the rank identity."""
    for inst in ctx.instances:
        ss = ctx.sequences[inst.name]
        if ss.rank_defect is not None:
            return check_result(False, len(ctx.instances), witness={"instance": inst.name, **ss.rank_defect})
        if not ss.converged:
            return check_result(False, len(ctx.instances), witness={"instance": inst.name, "error": "last page ≠ E_∞"})
        if not ss.matches_target:
            return check_result(False, len(ctx.instances),
                                witness={"instance": inst.name, "totals": ss.totals(), "target": ss.target})
    return check_result(True, len(ctx.instances),
                        details={inst.name: ctx.sequences[inst.name].totals() for inst in ctx.instances})


def check_tor_vanishing(ctx: EmssContext) -> Dict[str, Any]:
    """E_r^{s,t} = 0 for s > 0."""
    for inst in ctx.instances:
        if not ctx.sequences[inst.name].tor_vanishing:
            return check_result(False, len(ctx.instances), witness={"instance": inst.name})
    return check_result(True, len(ctx.instances))


def check_e2_degeneration(ctx: EmssContext) -> Dict[str, Any]:
    """Where the layers are homological degrees, E_2 is graded Tor over h*A and no d_r with r >= 2 survives."""
    checked = 0
    for inst in ctx.instances:
        if not inst.compare_tor:
            continue
        ss = ctx.sequences[inst.name]
        defect = e2_tor_defect(ss)
        if defect is not None:
            return check_result(False, checked, witness={"instance": inst.name, **defect})
        if not ss.degenerate_at_e2:
            return check_result(False, checked, witness={"instance": inst.name,
                                                          "differentials": ss.summary()["nonzero_differentials"]})
        checked += 1
    return check_result(True, checked)


def check_second_ext_instance(ctx: EmssContext) -> Dict[str, Any]:
    """P = E(2) over E⊗E with M free: the abutment has the dims of E(2), all in filtration 0."""
    inst = next(i for i in ctx.instances if i.name.startswith("E⊗E"))
    ss = ctx.sequences[inst.name]
    expected = {t: n for t, n in inst.P.as_graded().dims().items() if n}
    if ss.totals() != expected:
        return check_result(False, 1, witness=mismatch("totals", ss.totals(), expected))
    off = [list(e) for e, dim in ss.infinity.items() if dim and e[0] != 0]
    if off:
        return check_result(False, 2, witness={"outside_s0": off[0]})
    return check_result(True, 2, details={"dims": expected})


def check_graded_oracles(ctx: EmssContext) -> Dict[str, Any]:
    """Graded Tor and Ext of k over Λ(y) and over k, and Tor of a free module."""
    lo, hi = ctx.window
    ext_alg = exterior_dg(ctx.p)
    k_left = augmentation_module(ext_alg).as_graded()
    k_right = augmentation_module(ext_alg, "right").as_graded()
    tor = graded_tor(k_right, k_left, ctx.window)
    expected_tor = {(-n, n): 1 for n in range(lo, hi + 1)}
    if tor != expected_tor:
        return check_result(False, 1, witness=mismatch("Tor over Λ(y)", _table(tor), _table(expected_tor)))
    ext = graded_ext(k_left, k_left, ctx.window)
    expected_ext = {(n, -n): 1 for n in range(lo, hi + 1)}
    if ext != expected_ext:
        return check_result(False, 2, witness=mismatch("Ext over Λ(y)", _table(ext), _table(expected_ext)))

    ground = ground_algebra(ctx.p).algebra
    one = np.ones((1, 2, 2), dtype=np.int64) * np.eye(2, dtype=np.int64)
    V_right = GradedModule(ground, "right", np.array([0, 1]), one, ("v0", "v1"), "V")
    V_left = GradedModule(ground, "left", np.array([0, 2]), one, ("w0", "w2"), "W")
    tor_k = graded_tor(V_right, V_left, (0, max(hi, 1)))
    tensor = {(0, t): n for t, n in tensor_product_dims(V_right, V_left).items()}
    if tor_k != tensor:
        return check_result(False, 3, witness=mismatch("Tor over k", _table(tor_k), _table(tensor)))
    ext_k = graded_ext(V_left, V_left, (0, max(hi, 1)))
    if any(s for (s, _), n in ext_k.items() if n):
        return check_result(False, 4, witness=mismatch("Ext over k", _table(ext_k), "s = 0 only"))

    A = model_dg_algebra(ctx.model)
    free = graded_tor(regular_module(A.algebra, "right"), model_trivial(A, ctx.model).as_graded(), ctx.window)
    if free != {(0, 0): 1}:
        return check_result(False, 5, witness=mismatch("Tor(E, k)", _table(free), {"0,0": 1}))
    return check_result(True, 5)


def check_cohdelta_collapse(ctx: EmssContext) -> Dict[str, Any]:
    """Ext^{s>0}(M, Δ_gr(E)) = 0 and h*RHom(M, B) ≅ Δ_gr(M) for the bundled right modules and 0."""
    modules = dict(model_modules(ctx.E, ctx.model))
    modules["0"] = GradedModule(ctx.E, "right", np.zeros(0, dtype=np.int64),
                                np.zeros((ctx.E.dim, 0, 0), dtype=np.int64), (), "0")
    reports = {}
    for name, M in modules.items():
        report = collapse_check_cohdelta(ctx.model, M, ctx.window, ctx.margin, ctx.seed)
        if not report["success"]:
            return check_result(False, len(reports), witness={"module": name, **report})
        reports[name] = report["delta_dims"]
    return check_result(True, len(reports), details=reports)
