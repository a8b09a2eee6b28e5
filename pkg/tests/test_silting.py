import pytest

from services.chains import build_chain
from services.dsl_parser import parse_algebra
from services.end_algebra import isomorphism_of_presentations
from services.errors import VerificationError
from services.silting import build_silting, end_algebra_report, present_end_algebra, silting_complex, verify_silting

A5_SQUARE_ZERO = ("quiver { 1 2 3 4 5; x1: 1->2; x2: 2->3; x3: 3->4; x4: 4->5 } "
                  "relations { x1*x2; x2*x3; x3*x4; }")


def graded(T):
    return sorted((s.module.dims, s.shift) for s in T.summands)


def test_a2_silting_complex(a2_silting):
    assert graded(a2_silting) == [((1, 0), 0), ((1, 1), 0)]
    assert verify_silting(a2_silting).ok
    assert end_algebra_report(a2_silting).dimension == 3


def test_example_silting_complex(example1_silting):
    assert graded(example1_silting) == [
        ((0, 0, 0, 0, 1), 0),
        ((0, 1, 0, 0, 0), 0),
        ((1, 0, 0, 0, 0), 1),
        ((1, 0, 1, 0, 0), 1),
        ((1, 1, 1, 1, 1), 0),
    ]
    assert example1_silting.length == 2
    assert verify_silting(example1_silting).ok


def test_doubling_breaks_silting(a2_silting):
    pieces = [(s.module, s.shift) for s in a2_silting.summands]
    pieces += [(s.module, s.shift + 1) for s in a2_silting.summands]
    T = silting_complex(a2_silting.algebra, pieces)
    report = verify_silting(T)
    assert not report.ok
    assert any(not c.passed and c.name == "number of summands equals number of simples" for c in report.checks)


def test_example_end_algebra(example1_silting, field):
    report = end_algebra_report(example1_silting)
    assert report.ok
    assert report.dimension == 9
    B = present_end_algebra(example1_silting).algebra
    assert len(B.relations) == 3
    assert isomorphism_of_presentations(B, parse_algebra(A5_SQUARE_ZERO, field)) is not None


def test_trivial_chain_gives_the_regular_module(a3):
    T = build_silting(build_chain(a3, []))
    assert graded(T) == [((0, 0, 1), 0), ((0, 1, 1), 0), ((1, 1, 1), 0)]
    assert verify_silting(T).ok


def test_missing_summands_are_not_silting(a2_chain, monkeypatch):
    degree_zero_only = silting_complex
    monkeypatch.setattr("services.silting.silting_complex",
                        lambda algebra, pieces, chain: degree_zero_only(algebra, pieces[:1], chain))
    with pytest.raises(VerificationError) as info:
        build_silting(a2_chain)
    assert info.value.message.startswith("not silting")
    assert info.value.exit_code == 1
    assert not info.value.report.ok


# arrows run from the target of a map to its source
TAME_END = ("quiver { 1 2 3 4 5 6 7; a1: 3->1; a2: 3->2; b1: 4->3; b2: 5->3; b: 6->3; g: 7->6 } "
            "relations { b*a1; b*a2; g*b; }")


@pytest.mark.slow
def test_tame_example_silting_complex(example2, field):
    T = build_silting(build_chain(example2.algebra, example2.chain_sigmas()))
    assert graded(T) == [
        ((0, 0, 0, 0, 1, 0, 0), 0),
        ((0, 0, 0, 1, 0, 0, 0), 1),
        ((0, 1, 0, 0, 0, 0, 0), 0),
        ((1, 0, 0, 0, 0, 0, 0), 0),
        ((1, 1, 1, 1, 1, 0, 0), 0),
        ((1, 1, 1, 1, 1, 0, 1), 0),
        ((1, 1, 1, 1, 1, 1, 0), 0),
    ]
    assert verify_silting(T).ok
    report = end_algebra_report(T)
    assert report.ok
    assert report.dimension == 17
    B = present_end_algebra(T).algebra
    assert isomorphism_of_presentations(B, parse_algebra(TAME_END, field)) is not None
