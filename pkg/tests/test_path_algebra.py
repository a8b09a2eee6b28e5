import pytest

from services.dsl_parser import parse_algebra
from services.errors import NonAdmissibleError
from tests.conftest import linear_quiver


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_linear_path_algebra_dimension(field, n):
    A = parse_algebra(linear_quiver(n), field)
    assert A.dimension == n * (n + 1) // 2
    assert A.is_hereditary


def test_zero_relations_cut_the_basis(field):
    A = parse_algebra("quiver { 1 2 3; a: 1->2; b: 2->3 } relations { a*b; }", field)
    assert A.dimension == 5
    assert not A.is_hereditary
    assert A.basis("1", "3") == []


def test_commutativity_relation(field):
    text = "quiver { 1 2 3 4; a: 1->2; b: 1->3; c: 2->4; d: 3->4 } relations { a*c - b*d; }"
    A = parse_algebra(text, field)
    assert len(A.basis("1", "4")) == 1
    assert A.dimension == 4 + 4 + 1


def test_cartan_matrix_counts_paths(a3):
    C = a3.cartan_matrix()
    assert C.tolist() == [[1, 1, 1], [0, 1, 1], [0, 0, 1]]


def test_relation_of_length_one_is_rejected(field):
    with pytest.raises(NonAdmissibleError):
        parse_algebra("quiver { 1 2; a: 1->2 } relations { a; }", field)
