import pytest

from services import linalg
from services.errors import InputError


def test_rank_and_kernel_over_rationals(field):
    M = linalg.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]], field)
    assert linalg.rank(M) == 2
    ker = linalg.kernel(M)
    assert ker.shape == (3, 1)
    assert linalg.is_zero(linalg.matmul(M, ker))


def test_fraction_scalars(field):
    M = linalg.from_rows([["1/2", "-3"]], field)
    assert linalg.to_rows(M)[0][0] == field.convert(1) / field.convert(2)


def test_solve_linear_reports_kernel(field):
    A = linalg.from_rows([[1, 1]], field)
    sol = linalg.solve_linear(A, [field.convert(2)])
    assert sol is not None
    assert len(sol.kernel) == 1
    assert sol.particular[0] + sol.particular[1] == field.convert(2)


def test_inconsistent_system_has_no_solution(field):
    A = linalg.from_rows([[1], [1]], field)
    assert linalg.solve_linear(A, [field.one, field.zero]) is None


def test_zero_sized_shapes(field):
    M = linalg.zeros(0, 3, field)
    assert linalg.rank(M) == 0
    assert linalg.kernel(M).shape == (3, 3)


def test_prime_field_arithmetic():
    K = linalg.make_field("GF(3)")
    M = linalg.from_rows([[1, 1], [1, 4]], K)
    assert linalg.rank(M) == 1
    assert linalg.field_label(K) == "GF(3)"


@pytest.mark.parametrize("label", ["GF(4)", "R", "GF(x)"])
def test_bad_fields_are_input_errors(label):
    with pytest.raises(InputError):
        linalg.make_field(label)


def test_reducer_quotient(field):
    one, zero = field.one, field.zero
    r = linalg.Reducer([[one, one, zero]], 3, field)
    assert r.quotient_dim == 2
    assert r.contains([field.convert(2), field.convert(2), field.zero])
    assert not r.contains([field.one, field.zero, field.zero])
