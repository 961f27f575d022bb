"""
Degree-0 suites on finite group pairs.
"""
from pathlib import Path

import numpy as np
import pytest

from smoothrep import checks
from smoothrep.checks import GroupPairContext
from smoothrep.groups import FinGroupDatum, builtin_pairs, symmetric_group_3
from smoothrep.hecke import anti_automorphism_J0, hecke, j0_product_defect
from smoothrep.reps import Rep
from utils.errors import ConfigError, ModelError
from utils.helpers import format_group_table, parse_group_table
from tests.conftest import assert_passes

DATA = Path(__file__).resolve().parent.parent / "data" / "groups"

DEGREE0_CHECKS = [
    checks.check_induce, checks.check_char_action, checks.check_J_involution, checks.check_J_support,
    checks.check_component_split, checks.check_shapiro, checks.check_rec, checks.check_Jprime,
    checks.check_pairing_well_defined, checks.check_refined_trace, checks.check_J_prime_J,
    checks.check_pairing_trace_composite, checks.check_fin_image, checks.check_swap_lemma,
    checks.check_factor_fr, checks.check_tr_cores, checks.check_frobenius_bijection, checks.check_hecke,
]


@pytest.fixture(scope="module", params=[("s3", 2), ("z3c2", 3)], ids=["S3-F2", "Z3xC2-F3"])
def context(request):
    name, p = request.param
    return GroupPairContext(builtin_pairs()[name], p)


@pytest.mark.parametrize("check", DEGREE0_CHECKS, ids=lambda f: f.__name__)
def test_degree0_suite(context, check):
    """Every degree-0 identity holds over complete Hom bases."""
    assert_passes(check(context))


def test_induce_reports_a_representation_that_fails_on_U():
    G = symmetric_group_3()
    mats = np.ones((G.order, 1, 1), dtype=np.int64)
    u = next(g for g in G.subgroup if g != G.identity)
    mats[u] = 0
    broken = Rep(G, mats, 3, "broken")
    result = checks.check_induce(GroupPairContext(G, 3, extra_reps=[broken]))
    assert not result["success"]
    assert result["checked"] == 2
    assert result["witness"]["rep"] == "broken"
    assert result["witness"]["error"].startswith("EquivarianceError")


def test_group_table_file_matches_builtin_shape():
    table = parse_group_table(DATA / "s3.txt")
    G = FinGroupDatum.from_table(table["mul"], table["subgroup"], "S3")
    G.validate()
    builtin = symmetric_group_3()
    assert G.order == builtin.order == 6
    assert G.index == builtin.index == 3
    assert len(G.double_cosets) == len(builtin.double_cosets) == 2


def test_group_table_round_trip_text():
    table = parse_group_table(DATA / "s3.txt")
    again = parse_group_table(format_group_table(table["mul"], table["inv"], table["subgroup"]))
    assert again == table


def test_group_table_errors_carry_line_numbers():
    with pytest.raises(ConfigError) as info:
        parse_group_table("order 2\n0 1\n1 7\n0 1\nU: 0\n")
    assert info.value.line == 3
    with pytest.raises(ConfigError):
        parse_group_table("order 2\n0 1\n1 0\n0 1\nV: 0\n")


def test_non_group_rejected():
    G = FinGroupDatum(np.array([[0, 1], [1, 1]]), np.array([0, 1]), 0, (0,), "bad")
    with pytest.raises(ModelError):
        G.validate()


def test_subgroup_must_close():
    G = symmetric_group_3().with_subgroup([0, 1, 2])
    with pytest.raises(ModelError):
        G.validate()


@pytest.mark.parametrize("name", sorted(builtin_pairs()))
def test_hecke_anti_automorphism(name):
    """J0(ab) = J0(b)J0(a) and J0² = id on every builtin pair."""
    G = builtin_pairs()[name]
    G.validate()
    H = hecke(G, 2)
    J = anti_automorphism_J0(H)
    assert np.array_equal(J @ J % 2, np.eye(H.dim, dtype=np.int64))
    for a in range(H.dim):
        for b in range(H.dim):
            assert not np.any(j0_product_defect(H, a, b))


def test_hecke_dimension_counts_double_cosets():
    G = symmetric_group_3()
    assert hecke(G, 3).dim == 2
    assert hecke(symmetric_group_3("whole"), 3).dim == 1
