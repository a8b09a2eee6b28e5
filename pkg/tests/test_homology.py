from functools import lru_cache

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from services.dsl_parser import parse_algebra
from services.errors import InputError
from services.homology import (ext_dim, euler_form, global_dimension, injective_dimension, is_injective,
                               is_projective, projective_dimension, syzygy, tau, tau_inv)
from services.indecomposables import enumerate_indecomposables
from services.linalg import make_field
from services.modules import hom_dim, is_isomorphic, projective, simple
from tests.conftest import A3, d4_quiver, linear_quiver


@lru_cache(maxsize=None)
def hereditary_universe(text: str):
    A = parse_algebra(text, make_field("Q"))
    return A, enumerate_indecomposables(A)


quivers = st.one_of(
    st.builds(linear_quiver, st.integers(2, 5), st.integers(0, 15)),
    st.builds(d4_quiver, st.integers(0, 7)),
)


def test_ext_between_simples_of_a2(a2):
    S1, S2 = simple(a2, "1"), simple(a2, "2")
    assert ext_dim(S1, S2) == 1
    assert ext_dim(S2, S1) == 0
    assert ext_dim(S1, S2, degree=2) == 0


def test_syzygy_and_dimensions(a2):
    S1 = simple(a2, "1")
    assert syzygy(S1).dims == (0, 1)
    assert projective_dimension(S1) == 1
    assert injective_dimension(simple(a2, "2")) == 1
    assert is_projective(projective(a2, "2"))
    assert is_injective(S1)


def test_tau_of_a2(a2):
    assert tau(simple(a2, "1")).dims == (0, 1)
    assert tau(projective(a2, "1")).is_zero()
    assert tau_inv(simple(a2, "2")).dims == (1, 0)


@pytest.mark.parametrize("label", ["GF(2)", "GF(3)", "GF(5)"])
def test_a3_over_prime_fields(label):
    A = parse_algebra(A3, make_field(label))
    S1, S2, S3 = simple(A, "1"), simple(A, "2"), simple(A, "3")
    assert ext_dim(S1, S2) == 1
    assert ext_dim(S1, S3) == 0
    assert is_isomorphic(tau(S1), S2)[0]
    assert is_isomorphic(tau(S2), S3)[0]
    assert is_isomorphic(tau_inv(tau(S1)), S1)[0]
    assert [projective_dimension(S) for S in (S1, S2, S3)] == [1, 1, 0]


def test_tube_translates(example2):
    F2, F3, F4 = (example2.module(name) for name in ("F2", "F3", "F4"))
    assert is_isomorphic(tau(F4), F3)[0]
    assert is_isomorphic(tau(F3), F2)[0]


def test_global_dimension_with_zero_relation(field):
    A = parse_algebra("quiver { 1 2 3; a: 1->2; b: 2->3 } relations { a*b; }", field)
    assert global_dimension(A) == 2
    assert global_dimension(parse_algebra(linear_quiver(3), field)) == 1


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.data())
def test_euler_form_is_hom_minus_ext(data):
    A, mods = hereditary_universe(data.draw(quivers))
    M = data.draw(st.sampled_from(mods))
    N = data.draw(st.sampled_from(mods))
    assert hom_dim(M, N) - ext_dim(M, N) == euler_form(A, M.dims, N.dims)


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.data())
def test_auslander_reiten_formula(data):
    _, mods = hereditary_universe(data.draw(quivers))
    M = data.draw(st.sampled_from(mods))
    N = data.draw(st.sampled_from(mods))
    assert ext_dim(M, N) == hom_dim(N, tau(M))


@settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.data())
def test_tau_inverse_undoes_tau(data):
    _, mods = hereditary_universe(data.draw(quivers))
    M = data.draw(st.sampled_from(mods))
    if is_projective(M):
        return
    assert is_isomorphic(tau_inv(tau(M)), M)[0]


def test_euler_form_needs_hereditary(field):
    A = parse_algebra("quiver { 1 2 3; a: 1->2; b: 2->3 } relations { a*b; }", field)
    with pytest.raises(InputError):
        euler_form(A, [1, 0, 0], [0, 0, 1])
