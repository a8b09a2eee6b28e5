import pytest

from services import linalg
from services.decomposition import decompose, is_indecomposable, radical_endomorphisms
from services.dsl_parser import parse_algebra
from services.errors import InconsistentRepresentationError
from services.modules import (cokernel, cogen_membership, direct_sum, gen_membership, hom_dim, hom_space, injective,
                              is_isomorphic, kernel, make_module, projective, simple)
from tests.conftest import A3


def test_projectives_and_injectives_of_a3(a3):
    assert projective(a3, "1").dims == (1, 1, 1)
    assert projective(a3, "3").dims == (0, 0, 1)
    assert injective(a3, "3").dims == (1, 1, 1)
    assert injective(a3, "1").dims == (1, 0, 0)
    assert is_isomorphic(projective(a3, "1"), injective(a3, "3"))[0]


def test_hom_from_projective_is_the_vertex_space(a3):
    M = projective(a3, "1")
    for v in a3.vertices:
        assert hom_dim(projective(a3, v), M) == M.dim(v)


def test_hom_dimensions_on_a2(a2):
    P1, P2, S1 = projective(a2, "1"), projective(a2, "2"), simple(a2, "1")
    assert hom_dim(P2, P1) == 1
    assert hom_dim(P1, P2) == 0
    assert hom_dim(P1, S1) == 1
    assert hom_dim(S1, P1) == 0


def test_kernel_and_cokernel_of_radical_inclusion(a2):
    P1, P2 = projective(a2, "1"), projective(a2, "2")
    f = hom_space(P2, P1).basis[0]
    assert f.is_injective()
    K, _ = kernel(f)
    C, pi = cokernel(f)
    assert K.is_zero()
    assert C.dims == (1, 0)
    assert pi.is_surjective()
    assert pi.compose(f).is_zero()


def test_shape_mismatch_is_rejected(a2, field):
    with pytest.raises(InconsistentRepresentationError):
        make_module(a2, [1, 1], {"a": linalg.from_rows([[1, 1]], field)})


def test_relations_are_checked(field):
    A = parse_algebra("quiver { 1 2 3; a: 1->2; b: 2->3 } relations { a*b; }", field)
    one = linalg.from_rows([[1]], field)
    with pytest.raises(InconsistentRepresentationError):
        make_module(A, [1, 1, 1], {"a": one, "b": one})


def test_decompose_direct_sum(a2):
    P1, P2 = projective(a2, "1"), projective(a2, "2")
    M, _, _ = direct_sum([P2, P1, P2])
    parts = sorted((X.dims, n) for X, n in decompose(M))
    assert parts == [((0, 1), 2), ((1, 1), 1)]
    assert not is_indecomposable(M)
    assert is_indecomposable(P1)


def test_radical_of_local_endomorphism_ring(a2):
    assert radical_endomorphisms(projective(a2, "1")) == []


def test_generation_and_cogeneration(a2):
    P1, P2, S1 = projective(a2, "1"), projective(a2, "2"), simple(a2, "1")
    assert gen_membership(S1, [P1])
    assert not gen_membership(S1, [P2])
    assert cogen_membership(P2, [P1])
    assert not cogen_membership(S1, [P1])


@pytest.fixture
def a3_gf2():
    return parse_algebra(A3, linalg.make_field("GF(2)"))


def test_small_hom_space_is_searched_exhaustively(a3_gf2):
    M, _, _ = direct_sum([simple(a3_gf2, "1")] * 2)
    H = hom_space(M, M)
    assert H.is_enumerable()
    assert len(list(H.all_elements())) == 16
    ok, witness = is_isomorphic(M, M)
    assert ok and witness.is_isomorphism()


@pytest.mark.parametrize("k", [4, 5, 6])
def test_isomorphism_of_powers_over_gf2(a3_gf2, k):
    P2 = projective(a3_gf2, "2")
    M, _, _ = direct_sum([P2] * k)
    assert not hom_space(M, M).is_enumerable()
    ok, witness = is_isomorphic(M, M)
    assert ok
    assert witness.is_isomorphism()
    witness.check()
    assert [(X.dims, n) for X, n in decompose(M)] == [((0, 1, 1), k)]


def test_non_isomorphic_sums_over_gf2(a3_gf2):
    P2, S2, S3 = projective(a3_gf2, "2"), simple(a3_gf2, "2"), simple(a3_gf2, "3")
    M, _, _ = direct_sum([P2] * 4)
    N, _, _ = direct_sum([P2, P2, P2, S2, S3])
    assert M.dims == N.dims
    assert is_isomorphic(M, N) == (False, None)
