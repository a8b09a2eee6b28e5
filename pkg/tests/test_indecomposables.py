import pytest

from services.dsl_parser import parse_algebra
from services.errors import ComputationLimitError
from services.indecomposables import enumerate_indecomposables, positive_roots_count, standard_name
from tests.conftest import d4_quiver, linear_quiver


@pytest.mark.parametrize("n,orientation", [(2, 0), (3, 0), (3, 1), (4, 5), (5, 0), (5, 10)])
def test_type_a_counts(field, n, orientation):
    A = parse_algebra(linear_quiver(n, orientation), field)
    mods = enumerate_indecomposables(A)
    assert len(mods) == n * (n + 1) // 2
    assert positive_roots_count(A) == len(mods)


@pytest.mark.parametrize("orientation", [0, 3, 7])
def test_type_d4_count(field, orientation):
    A = parse_algebra(d4_quiver(orientation), field)
    assert len(enumerate_indecomposables(A)) == 12


def test_example_quiver_has_fifteen(example1):
    assert len(example1.universe()) == 15


def test_standard_names(a2):
    names = [X.name for X in enumerate_indecomposables(a2)]
    assert names == ["P2", "I1", "P1"]


def test_dimension_vector_names(a3):
    middle = [X for X in enumerate_indecomposables(a3) if X.dims == (0, 1, 0)][0]
    assert standard_name(middle, a3) == "S2"


def test_kronecker_is_not_representation_finite(field):
    A = parse_algebra("quiver { 1 2; a: 1->2; b: 1->2 }", field)
    with pytest.raises(ComputationLimitError):
        enumerate_indecomposables(A)
