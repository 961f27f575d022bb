"""
Small dg algebras and modules with known answers.
"""
from __future__ import annotations

import numpy as np

from dgcore.dg import DgAlgebra, DgModule, augmentation_module
from dgcore.semifree import Generator, SemifreeModule
from exactla.field import check_prime
from yoneda.graded import GradedAlgebra, exterior_algebra
from yoneda.model import CrossedModelDatum, build_E


def exterior_dg(p: int) -> DgAlgebra:
    """Λ(y), |y| = 1, zero differential."""
    return DgAlgebra.from_graded(exterior_algebra(1, check_prime(p)), "Λ(y)")


def koszul_test_algebra(p: int) -> DgAlgebra:
    """Λ(x) ⊗ k[t]/(t²) with |x| = -1, |t| = 0, both of weight 1, and dx = t.

    Basis 1, x, t, xt; its cohomology is k ⊕ k·[xt].
    """
    p = check_prime(p)
    mult = np.zeros((4, 4, 4), dtype=np.int64)
    for z in range(4):
        mult[0, z, z] = mult[z, 0, z] = 1
    mult[1, 2, 3] = mult[2, 1, 3] = 1
    unit = np.array([1, 0, 0, 0], dtype=np.int64)
    A = GradedAlgebra(np.array([0, -1, 0, -1], dtype=np.int64), mult, unit, p, ("1", "x", "t", "xt"), "Λ(x)⊗k[t]/t²")
    D = np.zeros((4, 4), dtype=np.int64)
    D[2, 1] = 1
    return DgAlgebra(A, np.array([0, 1, 1, 2], dtype=np.int64), D, A.name)


def two_term_module(A: DgAlgebra) -> DgModule:
    """A·g1 → A·g2 with d(g1) = y·g2 over Λ(y); h* is one-dimensional in degrees 0 and 1."""
    second = Generator(0, 0, 0, "g2")
    first = Generator(0, 1, 1, "g1")
    boundary = np.zeros(A.dim, dtype=np.int64)
    boundary[1] = 1
    F = SemifreeModule(A, (second, first), (np.zeros(0, dtype=np.int64), boundary), "A·g1→A·g2")
    return F.module


def exterior_minimal_resolution(A: DgAlgebra, length: int) -> SemifreeModule:
    """… → A·g2 → A·g1 → A·g0 → k over Λ(y), with d(g_n) = y·g_{n-1}; generator g_n in bidegree (0, n)."""
    na = A.dim
    generators, boundaries = [], []
    for n in range(length + 1):
        generators.append(Generator(0, n, n, f"g{n}"))
        b = np.zeros(n * na, dtype=np.int64)
        if n:
            b[(n - 1) * na + 1] = 1
        boundaries.append(b)
    return SemifreeModule(A, tuple(generators), tuple(boundaries), "F(k)", -length)


def model_dg_algebra(model: CrossedModelDatum) -> DgAlgebra:
    return DgAlgebra.from_graded(build_E(model), f"E({model.name})")


def model_augmentation(model: CrossedModelDatum) -> np.ndarray:
    """E* -> k sending 1⊗c to 1 and everything of positive degree to 0."""
    eps = np.zeros(model.cohomology.dim * model.c_order, dtype=np.int64)
    for c in range(model.c_order):
        eps[model.e_index(0, c)] = 1
    return eps


def model_trivial(A: DgAlgebra, model: CrossedModelDatum, side: str = "left") -> DgModule:
    return augmentation_module(A, side, model_augmentation(model))

