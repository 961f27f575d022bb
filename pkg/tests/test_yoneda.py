"""
Crossed-model algebra, anti-involutions, pairing and graded duality.
"""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yoneda import checks
from yoneda.checks import ModelContext
from yoneda.duality import delta_gr
from yoneda.ext_n import ext_n
from yoneda.graded import GradedAlgebra, exterior_algebra, regular_module
from yoneda.maindual import find_isomorphism
from yoneda.model import anti_involution_J, build_E, duality_character, twist_J_chi
from utils.errors import ModelError, StructureMismatchError, WindowError
from tests.conftest import assert_passes, load_model

MODEL_CHECKS = [
    checks.check_E_structure, checks.check_anti_involutions, checks.check_duality_character,
    checks.check_degree0_hecke, checks.check_pairing, checks.check_bimodule_B, checks.check_swap_sigma,
    checks.check_delta_modules, checks.check_delta_exact, checks.check_delta_injective, checks.check_delta_E,
    checks.check_main_duality, checks.check_ext_n, checks.check_factor_swap,
]


@pytest.fixture(scope="module", params=["model_p3_d1_c2", "model_p3_d2_c2", "model_p2_d2_c3"])
def context(request):
    return ModelContext(request.getfixturevalue(request.param), seed=7)


@pytest.mark.parametrize("check", MODEL_CHECKS, ids=lambda f: f.__name__)
def test_model_suite(context, check):
    assert_passes(check(context))


def test_E_dimensions(model_p3_d1_c2, model_p2_d2_c3):
    assert build_E(model_p3_d1_c2).dims() == {0: 2, 1: 2}
    assert build_E(model_p2_d2_c3).dims() == {0: 3, 1: 6, 2: 3}


def test_duality_character_is_top_determinant(model_p3_d1_c2, model_p3_d2_c2, model_p2_d2_c3):
    assert duality_character(model_p3_d1_c2) == {0: 1, 1: 2}
    assert duality_character(model_p3_d2_c2) == {0: 1, 1: 2}
    assert duality_character(model_p2_d2_c3) == {0: 1, 1: 1, 2: 1}


def test_signs_of_J_and_its_twist_on_y_tensor_c(model_p3_d1_c2):
    # C_2 acts on Z_3 by -1, so c·y = -y and χ_G(c) = -1
    model = model_p3_d1_c2
    y_c = model.e_index(1, 1)
    vector = np.zeros(build_E(model).dim, dtype=np.int64)
    vector[y_c] = 1
    minus = np.zeros_like(vector)
    minus[y_c] = model.p - 1
    assert np.array_equal(anti_involution_J(model) @ vector % model.p, minus)
    assert np.array_equal(twist_J_chi(model) @ vector % model.p, vector)


def test_pairing_sees_a_negative_sign(model_p3_d2_c2):
    """The d = 2 model has triples where (−1)^{s(d−i−s)} = −1."""
    result = checks.check_pairing(ModelContext(model_p3_d2_c2))
    assert_passes(result)
    assert result["details"]["negative_signs"] > 0


def test_delta_window_and_side(model_p3_d1_c2):
    E = build_E(model_p3_d1_c2)
    twist = twist_J_chi(model_p3_d1_c2)
    with pytest.raises(WindowError):
        delta_gr(regular_module(E, "right"), twist, 1, window=(1, 1))
    with pytest.raises(StructureMismatchError):
        delta_gr(regular_module(E, "left"), twist, 1)


def test_regular_module_is_not_its_shift(model_p3_d1_c2):
    E = build_E(model_p3_d1_c2)
    M = regular_module(E, "right")
    assert find_isomorphism(M, M, seed=0)["status"] == "found"
    D = delta_gr(M, twist_J_chi(model_p3_d1_c2), 1)
    assert D.dims() == {0: 2, 1: 2}


def test_ext_n_rejects_negative(model_p3_d1_c2):
    with pytest.raises(ModelError):
        ext_n(model_p3_d1_c2, -1, build_E(model_p3_d1_c2))


def test_ext_two_dimensions(model_p3_d1_c2):
    """E*(2) in the C_2 model has dims (4, 4)."""
    two = ext_n(model_p3_d1_c2, 2, build_E(model_p3_d1_c2))
    assert two.left_module().dims() == {0: 4, 1: 4}
    assert two.commutation_defect() is None


def test_exterior_algebra_signs():
    L = exterior_algebra(2, 5)
    L.validate()
    assert L.dims() == {0: 1, 1: 2, 2: 1}
    y1, y2 = np.eye(4, dtype=np.int64)[1], np.eye(4, dtype=np.int64)[2]
    assert np.array_equal(L.multiply(y1, y2), (-L.multiply(y2, y1)) % 5)
    assert not np.any(L.multiply(y1, y1))


def test_non_associative_algebra_rejected():
    mult = np.zeros((2, 2, 2), dtype=np.int64)
    mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 0, 1] = 1
    mult[1, 1, 0] = 1
    bad = GradedAlgebra(np.array([0, 1]), mult, np.array([1, 0]), 3, ("1", "x"), "bad")
    with pytest.raises(ModelError):
        bad.validate()


_MODELS = {name: load_model(name) for name in ("p3-d1-c2", "p3-d2-c2", "p2-d2-c3")}
_ALGEBRAS = {name: build_E(model) for name, model in _MODELS.items()}


@st.composite
def homogeneous(draw, E):
    """A random element of E* in a single degree, with that degree."""
    degree = draw(st.sampled_from(sorted(E.dims())))
    support = E.basis_in_degree(degree)
    coeffs = draw(st.lists(st.integers(0, E.p - 1), min_size=len(support), max_size=len(support)))
    x = np.zeros(E.dim, dtype=np.int64)
    x[support] = coeffs
    return x, degree


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(_ALGEBRAS)), st.data())
def test_E_is_associative_on_random_elements(name, data):
    E = _ALGEBRAS[name]
    x, y, z = (data.draw(homogeneous(E))[0] for _ in range(3))
    assert np.array_equal(E.multiply(E.multiply(x, y), z), E.multiply(x, E.multiply(y, z)))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(_ALGEBRAS)), st.sampled_from([anti_involution_J, twist_J_chi]), st.data())
def test_anti_involutions_reverse_random_products_with_the_koszul_sign(name, build, data):
    model, E = _MODELS[name], _ALGEBRAS[name]
    sigma = build(model)
    p = E.p
    x, i = data.draw(homogeneous(E))
    y, j = data.draw(homogeneous(E))
    sign = 1 if (i * j) % 2 == 0 else p - 1
    lhs = sigma @ E.multiply(x, y) % p
    rhs = sign * E.multiply(sigma @ y % p, sigma @ x % p) % p
    assert np.array_equal(lhs, rhs)
    assert np.array_equal(sigma @ (sigma @ x % p) % p, x)
