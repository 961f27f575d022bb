"""
dg algebras and modules, semifree resolutions, derived functors and the monoidal stand-ins.
"""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgcore import checks
from dgcore.checks import DgContext, MonoidalContext
from dgcore.derived import derived_tensor
from dgcore.dg import (
    DgAlgebra,
    augmentation_module,
    cohomology_algebra,
    cohomology_classes,
    ground_algebra,
    regular_dg_module,
)
from dgcore.instances import exterior_dg, exterior_minimal_resolution, koszul_test_algebra, two_term_module
from dgcore.monoidal import boxtimes
from dgcore.semifree import semifree_resolve
from dgcore.serialize import deserialize, serialize
from yoneda.graded import exterior_algebra
from utils.errors import ConfigError, ModelError
from tests.conftest import assert_passes

DG_CHECKS = [
    checks.check_dg_axioms, checks.check_cohomology_examples, checks.check_resolution_oracle,
    checks.check_tor_oracle, checks.check_ext_oracle, checks.check_invariance, checks.check_identity_class,
]

MONOIDAL_CHECKS = [
    checks.check_box_free_collapse, checks.check_box_ground, checks.check_koszul_swap,
    checks.check_swap_descent, checks.check_box_symmetry, checks.check_unit_law,
    checks.check_associativity, checks.check_adjunction, checks.check_adjunction_free,
]


@pytest.fixture(scope="module", params=[2, 3])
def dg_context(request):
    return DgContext(request.param, window=(0, 4))


@pytest.mark.parametrize("check", DG_CHECKS, ids=lambda f: f.__name__)
def test_dg_suite(dg_context, check):
    assert_passes(check(dg_context))


@pytest.fixture(scope="module", params=["model_trivial_c", "model_p3_d1_c2"], ids=["trivial-C", "C2"])
def monoidal_context(request):
    return MonoidalContext(request.getfixturevalue(request.param), window=(0, 1))


@pytest.mark.slow
@pytest.mark.parametrize("check", MONOIDAL_CHECKS, ids=lambda f: f.__name__)
def test_monoidal_suite(monoidal_context, check):
    assert_passes(check(monoidal_context))


def test_box_of_E_with_itself_on_the_C2_model(model_p3_d1_c2):
    ctx = MonoidalContext(model_p3_d1_c2, window=(0, 1))
    A = ctx.arguments["A"]
    box = boxtimes(ctx.datum, A, A, ctx.window)
    M = box.module
    dims = cohomology_classes(M.differential, M.degrees, M.weights, ctx.p, box.certified).dims_by_degree()
    assert dims == {0: 4, 1: 4}
    assert ctx.datum.H2.left_module().dims() == {0: 4, 1: 4}


@pytest.mark.parametrize("check", [checks.check_unit_law, checks.check_adjunction_free])
def test_unit_and_free_adjunction_on_the_C2_model(model_p3_d1_c2, check):
    assert_passes(check(MonoidalContext(model_p3_d1_c2, window=(0, 1))))


def test_koszul_test_algebra_cohomology():
    T = koszul_test_algebra(3)
    T.validate()
    H, _ = cohomology_algebra(T)
    assert H.dims() == {-1: 1, 0: 1}


def test_differential_must_square_to_zero_and_be_homogeneous():
    A = exterior_algebra(1, 3)
    D = np.zeros((2, 2), dtype=np.int64)
    D[1, 0] = 1
    # d(1) = y breaks the weight grading of the formal algebra
    with pytest.raises(ModelError):
        DgAlgebra(A, A.degrees.copy(), D, "bad").validate()


def test_resolution_of_k_has_one_generator_per_level():
    A = exterior_dg(3)
    res = semifree_resolve(A, augmentation_module(A), (0, 3))
    levels = sorted(g.level for g in res.resolution.generators)
    assert levels == list(range(res.floor, 1))
    assert res.floor <= -3


def test_tor_over_ground_field_is_plain_tensor():
    k = ground_algebra(5)
    M = augmentation_module(k, "right")
    N = augmentation_module(k)
    tor = derived_tensor(M, N, (0, 2))
    assert tor.cohomology().dims_by_level() == {0: 1}


def test_two_term_module_cohomology_by_degree():
    A = exterior_dg(2)
    M = two_term_module(A)
    M.validate()
    res = semifree_resolve(A, M, (0, 2))
    assert res.resolution.rank >= 1


def test_hand_built_resolution_is_a_dg_module():
    A = exterior_dg(3)
    F = exterior_minimal_resolution(A, 3)
    F.module.validate()
    assert F.rank == 4


@pytest.mark.parametrize("build", [
    lambda: koszul_test_algebra(3),
    lambda: exterior_dg(5),
    lambda: ground_algebra(2),
], ids=["koszul-test", "exterior", "ground"])
def test_serialized_algebra_rebuilds(build):
    A = build()
    B = deserialize(serialize(A))
    assert isinstance(B, DgAlgebra)
    assert B.p == A.p and B.name == A.name
    assert np.array_equal(B.degrees, A.degrees)
    assert np.array_equal(B.weights, A.weights)
    assert np.array_equal(B.mult % A.p, A.mult % A.p)
    assert np.array_equal(B.differential, A.differential)
    assert serialize(B) == serialize(A)


def test_serialized_module_rebuilds_over_its_algebra():
    A = koszul_test_algebra(3)
    M = regular_dg_module(A, "right")
    N = deserialize(serialize(M), A)
    assert N.side == "right"
    assert np.array_equal(N.action, M.action)
    assert np.array_equal(N.differential, M.differential)
    N.validate()


def test_module_text_needs_an_algebra():
    text = serialize(augmentation_module(exterior_dg(3)))
    with pytest.raises(ConfigError):
        deserialize(text)
    with pytest.raises(ConfigError) as err:
        deserialize(text, exterior_dg(5))
    assert err.value.key == "p"


def test_malformed_text_reports_the_line():
    text = "kind algebra\np 3\np 3\n"
    with pytest.raises(ConfigError) as err:
        deserialize(text)
    assert err.value.line == 3
    assert err.value.key == "p"


def test_out_of_range_entry_is_rejected():
    text = serialize(exterior_dg(3)) + "d 5 0 1\n"
    with pytest.raises(ConfigError) as err:
        deserialize(text)
    assert err.value.key == "d"


def test_unknown_kind_and_missing_header():
    with pytest.raises(ConfigError) as err:
        deserialize("kind coalgebra\np 3\nlabels 1\ndegree 0\nweight 0\n")
    assert err.value.key == "kind"
    with pytest.raises(ConfigError) as err:
        deserialize("kind algebra\np 3\n")
    assert err.value.key == "degree"


@st.composite
def homogeneous(draw, degrees, p):
    """A random vector supported in one degree, with that degree."""
    degree = draw(st.sampled_from(sorted(set(int(d) for d in degrees))))
    support = np.nonzero(degrees == degree)[0]
    coeffs = draw(st.lists(st.integers(0, p - 1), min_size=len(support), max_size=len(support)))
    vector = np.zeros(len(degrees), dtype=np.int64)
    vector[support] = coeffs
    return vector, degree


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.data())
def test_leibniz_on_random_elements_of_the_koszul_test_algebra(p, data):
    A = koszul_test_algebra(p)
    x, deg_x = data.draw(homogeneous(A.degrees, p))
    y, _ = data.draw(homogeneous(A.degrees, p))

    def d(v):
        return A.differential @ v % p

    sign = 1 if deg_x % 2 == 0 else p - 1
    assert np.array_equal(d(A.multiply(x, y)), (A.multiply(d(x), y) + sign * A.multiply(x, d(y))) % p)
    assert not np.any(d(d(x)))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.data())
def test_leibniz_on_random_elements_of_the_two_term_module(p, data):
    A = exterior_dg(p)
    M = two_term_module(A)
    a, deg_a = data.draw(homogeneous(A.degrees, p))
    m, _ = data.draw(homogeneous(M.degrees, p))

    def act(b, v):
        return np.einsum("a,aij,j->i", b, M.action, v) % p

    def d(v):
        return M.differential @ v % p

    sign = 1 if deg_a % 2 == 0 else p - 1
    assert np.array_equal(d(act(a, m)), sign * act(a, d(m)) % p)
