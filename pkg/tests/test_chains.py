import pytest

from services import linalg
from services.chains import build_chain, chain_partition, validate_chain
from services.dsl_parser import parse_algebra
from services.errors import ChainOrderError, NotExceptionalError
from services.localization import check_exceptional, in_perp, localize, member, perpendicular
from services.modules import direct_sum, projective, simple
from services.workspace import Workspace
from tests.conftest import A2, sample


def entries(items):
    return sorted((e.label, e.multiplicity) for e in items)


def dims(items):
    return sorted((tuple(e.dims), e.multiplicity) for e in items)


def test_perpendicular_of_first_step(example1):
    sigma = example1.sigma("I3+I2+I1")
    P = perpendicular(example1.algebra, sigma, example1.universe())
    assert sorted(X.name for X in P.indecomposables) == ["I4", "I5", "P5"]
    assert P.expected_rank == 2


def test_localizing_a2_at_the_simple_top(a2):
    epi = localize(a2, [member(simple(a2, "1"))])
    assert epi.module.dims == (2, 2)
    assert epi.dimension == 4
    assert epi.check_ring_structure() == []
    assert [(X.dims, n) for X, n in epi.decomposition()] == [((1, 1), 2)]
    assert epi.cokernel().dims == (1, 0)
    assert epi.kernel().is_zero()
    assert in_perp(projective(a2, "1"), epi.sigma)


def test_empty_localizing_set_is_identity(a3):
    epi = localize(a3, [])
    assert epi.module.dims == direct_sum([projective(a3, v) for v in a3.vertices])[0].dims
    assert epi.cokernel().is_zero()


def test_non_exceptional_sets_are_rejected(a2):
    P1 = projective(a2, "1")
    with pytest.raises(NotExceptionalError):
        check_exceptional([member(P1), member(P1)])


def test_example_chain_rings(example1, example1_chain):
    report = validate_chain(example1_chain, example1.universe())
    assert report.ok
    assert report.length == 3
    assert entries(report.steps[0].ring_module) == [("I5", 4), ("P5", 1)]
    assert entries(report.steps[1].ring_module) == [("I5", 1), ("P1", 3), ("P5", 1)]
    assert entries(report.connecting_maps[0].cokernel) == [("I2", 3)]
    assert report.connecting_maps[0].kernel == []
    assert report.steps[1].kernel == []
    assert dims(report.steps[1].cokernel) == [((1, 0, 0, 0, 0), 2), ((1, 0, 1, 0, 0), 1)]
    assert all(c.name != "0_A ≤ λ_0" and c.name != "λ_{n-2} ≤ id_A" for c in report.checks)


@pytest.mark.slow
def test_tame_example_chain_rings(example2):
    chain = build_chain(example2.algebra, example2.chain_sigmas())
    report = validate_chain(chain)
    assert report.ok
    assert entries(report.steps[0].ring_module) == [("P1", 1), ("P2", 1), ("P5", 3), ("P6", 1), ("P7", 1)]
    assert entries(report.steps[1].ring_module) == [("P1", 1), ("P2", 1), ("P4", 2), ("P5", 1), ("P6", 1), ("P7", 1)]
    assert report.connecting_maps[0].kernel == []
    assert dims(report.connecting_maps[0].cokernel) == [(example2.module("F3").dims, 2)]
    assert report.steps[1].kernel == []
    assert dims(report.steps[1].cokernel) == [(example2.module("F2").dims, 1)]


def test_localizing_over_gf2():
    A = parse_algebra(A2, linalg.make_field("GF(2)"))
    epi = localize(A, [member(simple(A, "1"))])
    assert epi.dimension == 4
    assert epi.check_ring_structure() == []
    assert [(X.dims, n) for X, n in epi.decomposition()] == [((1, 1), 2)]
    assert epi.cokernel().dims == (1, 0)


def test_chain_order_is_checked(example1):
    first, second = example1.chain_sigmas()
    with pytest.raises(ChainOrderError):
        build_chain(example1.algebra, [second, first])


def test_a2_partition(a2_workspace, a2_chain):
    layers = chain_partition(a2_chain, a2_workspace.universe())
    assert [sorted(X.name for X in layer) for layer in layers] == [["P2"], ["I1", "P1"]]


def test_trivial_chain_has_no_steps():
    ws = Workspace.from_file(sample("trivial.quiver"))
    chain = build_chain(ws.algebra, ws.chain_sigmas())
    assert chain.n == 1
    assert validate_chain(chain).ok
