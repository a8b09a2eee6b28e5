import pytest

from services.chains import build_chain, chain_partition
from services.dsl_parser import parse_algebra
from services.errors import InputError
from services.localization import member
from services.modules import projective, simple
from services.nsection import (NSection, build_nsection, functorial_finiteness, nsection_to_chain,
                               same_perpendiculars, torsion_pairs, verify_nsection)
from services.workspace import Workspace
from tests.conftest import sample


@pytest.fixture(scope="module")
def a2_section(a2_chain, a2_silting, a2_context, a2_functor):
    return build_nsection(a2_chain, a2_silting, a2_context, a2_functor)


@pytest.fixture(scope="module")
def example1_section(example1_chain, example1_silting, example1_context, example1_functor):
    return build_nsection(example1_chain, example1_silting, example1_context, example1_functor)


def test_a2_classes(a2_section):
    assert a2_section.n == 2
    assert sorted(X.dims for X in a2_section.classes[0]) == [(1, 0), (1, 1)]
    assert [X.dims for X in a2_section.classes[1]] == [(0, 1)]
    assert a2_section.origins == [["I1", "P1"], ["P2[1]"]]
    assert len(a2_section.indecomposables()) == 3


def test_a2_section_verifies(a2_section):
    report = verify_nsection(a2_section)
    assert report.ok, report.failures()


def test_swapped_classes_fail(a2_section):
    swapped = NSection(a2_section.algebra, [a2_section.classes[1], a2_section.classes[0]])
    report = verify_nsection(swapped, a2_section.indecomposables())
    assert not report.ok


def test_a2_torsion_pairs(a2_section, a2_context):
    report = torsion_pairs(a2_section, context=a2_context)
    assert report.ok, report.failures()
    assert [p.cut for p in report.pairs] == [0, 1, 2]
    assert report.pairs[0].torsion_free == []
    assert len(report.pairs[1].torsion) == 1


def test_a2_approximations(a2_section):
    for i in range(a2_section.n):
        assert functorial_finiteness(a2_section, i).ok
    with pytest.raises(InputError):
        functorial_finiteness(a2_section, 2)


def test_example_section(example1_section):
    assert example1_section.n == 3
    assert len(example1_section.indecomposables()) == 9
    assert sum(len(c) for c in example1_section.classes) == 9
    report = verify_nsection(example1_section)
    assert report.ok, report.failures()


def test_example_torsion_pairs(example1_section, example1_context):
    assert torsion_pairs(example1_section, context=example1_context).ok


def test_example_middle_class_is_functorially_finite(example1_section):
    assert functorial_finiteness(example1_section, 1).ok


def test_converse_recovers_the_a2_chain():
    ws = Workspace.from_file(sample("a2_section.quiver"))
    chain = nsection_to_chain(ws.algebra, ws.section_classes(), ws.universe())
    assert [s.module.dims for s in chain.steps[0].sigma] == [(1, 0)]
    expected = build_chain(ws.algebra, [[member(simple(ws.algebra, "1"))]])
    assert same_perpendiculars(chain, expected, ws.universe())


def test_converse_round_trip_on_example(example1, example1_chain):
    universe = example1.universe()
    classes = chain_partition(example1_chain, universe)
    recovered = nsection_to_chain(example1.algebra, classes, universe)
    assert recovered.n == 3
    assert same_perpendiculars(recovered, example1_chain, universe)


def test_converse_rejects_a_non_partition(a2):
    with pytest.raises(InputError):
        nsection_to_chain(a2, [[projective(a2, "2")], [projective(a2, "1")]])


def test_converse_rejects_backward_maps(a2):
    with pytest.raises(InputError):
        nsection_to_chain(a2, [[projective(a2, "1")], [projective(a2, "2"), simple(a2, "1")]])


def test_converse_needs_a_hereditary_algebra(field):
    A = parse_algebra("quiver { 1 2 3; a: 1->2; b: 2->3 } relations { a*b; }", field)
    with pytest.raises(InputError):
        nsection_to_chain(A, [[projective(A, v) for v in A.vertices]])
