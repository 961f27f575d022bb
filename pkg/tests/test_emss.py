"""
Graded Tor/Ext, filtered spectral sequences and the Eilenberg–Moore checks.
"""
import numpy as np
import pytest

from dgcore.dg import augmentation_module
from dgcore.instances import exterior_dg
from emss import checks
from emss.checks import EmssContext
from emss.graded_homological import graded_ext, graded_tor
from emss.instances import bundled_instances
from emss.spectral import (
    collapse_check_cohdelta, e2_tor_defect, em_tor_ss, filtered_spectral_sequence, left_via_twist,
)
from utils.errors import StructureMismatchError, WindowError
from yoneda.maindual import model_modules
from tests.conftest import assert_passes

EMSS_CHECKS = [
    checks.check_em_convergence, checks.check_tor_vanishing, checks.check_e2_degeneration,
    checks.check_second_ext_instance, checks.check_graded_oracles,
]


@pytest.fixture(scope="module")
def context(model_p3_d1_c2):
    return EmssContext(model_p3_d1_c2, window=(0, 3), seed=11)


@pytest.mark.parametrize("check", EMSS_CHECKS, ids=lambda f: f.__name__)
def test_emss_suite(context, check):
    assert_passes(check(context))


@pytest.mark.slow
def test_cohdelta_collapse(context):
    assert_passes(checks.check_cohdelta_collapse(context))


@pytest.mark.parametrize("name", ["E", "k", "H", "k⊕H"])
def test_rhom_into_B_collapses_for_each_module(context, name):
    M = model_modules(context.E, context.model)[name]
    report = collapse_check_cohdelta(context.model, M, (0, 3), seed=11)
    assert report["success"], report
    assert report["iso"] == "found"


def test_rhom_into_B_dimensions(context):
    modules = model_modules(context.E, context.model)
    assert collapse_check_cohdelta(context.model, modules["E"], (0, 3))["delta_dims"] == {"0": 2, "1": 2}
    assert collapse_check_cohdelta(context.model, modules["k"], (0, 3))["derived_dims"] == {"1": 1}


@pytest.mark.parametrize("p", [2, 3, 5])
def test_tor_and_ext_of_k_over_exterior_algebra(p):
    A = exterior_dg(p)
    k_left = augmentation_module(A).as_graded()
    k_right = augmentation_module(A, "right").as_graded()
    assert graded_tor(k_right, k_left, (0, 3)) == {(-n, n): 1 for n in range(4)}
    assert graded_ext(k_left, k_left, (1, 3)) == {(n, -n): 1 for n in range(1, 4)}


def test_graded_tor_rejects_wrong_sides_and_empty_window():
    A = exterior_dg(3)
    k_left = augmentation_module(A).as_graded()
    with pytest.raises(StructureMismatchError):
        graded_tor(k_left, k_left, (0, 2))
    with pytest.raises(WindowError):
        graded_tor(augmentation_module(A, "right").as_graded(), k_left, (2, 1))


def _two_cell(filtration):
    # e0 in degree 0, e1 in degree 1, d(e0) = e1
    D = np.array([[0, 0], [1, 0]], dtype=np.int64)
    return filtered_spectral_sequence(D, np.array([0, 1]), np.array([0, 0]), np.array(filtration), 3)


def test_filtered_pages_of_a_two_cell_complex():
    pages = _two_cell([1, 0])
    assert pages.pages[0][(1, 0, 0)] == 1
    assert pages.pages[0][(0, 1, 0)] == 1
    assert pages.pages[1][(1, 0, 0)] == 1
    assert not any(pages.pages[2].values())
    assert not any(pages.infinity.values())
    assert pages.rank_defect is None
    assert pages.converged


def test_differential_may_not_raise_the_filtration():
    with pytest.raises(StructureMismatchError):
        _two_cell([0, 1])


def test_exterior_sequence_degenerates_and_matches_tor():
    A = exterior_dg(3)
    ss = em_tor_ss(A, augmentation_module(A, "right"), augmentation_module(A), (0, 3))
    assert ss.rank_defect is None
    assert ss.matches_target
    assert ss.degenerate_at_e2
    assert ss.tor_vanishing
    assert e2_tor_defect(ss) is None


def test_bundled_instances(model_p3_d1_c2):
    instances = bundled_instances(model_p3_d1_c2)
    assert [i.name for i in instances] == [
        "Λ(y): k ⊗ k", "E: E ⊗ k", "E⊗E: E(2) ⊗ E⊗E", "Λ(x)⊗k[t]/t²: k ⊗ k",
    ]
    for inst in instances:
        inst.P.validate()
        inst.M.validate()
    assert [i.formal for i in instances] == [True, True, True, False]


def test_left_via_twist_needs_a_right_module():
    A = exterior_dg(3)
    with pytest.raises(StructureMismatchError):
        left_via_twist(augmentation_module(A).as_graded(), np.eye(A.dim, dtype=np.int64))
