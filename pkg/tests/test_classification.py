import pytest

from services.chains import build_chain
from services.classification import classify_algebra, hom_digraph, left_part, predecessors, successors
from services.heart import HeartFunctor
from services.homology import projective_dimension
from services.indecomposables import enumerate_indecomposables
from services.silting import build_silting


def test_hereditary_algebras_are_quasi_tilted(a3):
    report = classify_algebra(a3)
    assert report.ok
    assert report.global_dimension == 1
    assert report.flags["quasi_tilted"]
    assert report.flags["shod"]
    assert report.flags["weakly_shod"]
    assert not report.flags["strictly_shod"]
    assert all(r.left_part and r.right_part for r in report.rows)
    assert report.outside_left_right == []
    assert report.flags["laura"]


def test_hom_digraph_orders_a2(a2):
    mods = enumerate_indecomposables(a2)
    g = hom_digraph(mods)
    names = [X.name for X in mods]
    p1 = names.index("P1")
    assert {names[k] for k in predecessors(g, p1)} == {"P1", "P2"}
    assert {names[k] for k in successors(g, p1)} == {"P1", "I1"}
    assert set(left_part(g, [projective_dimension(X) for X in mods])) == set(range(3))


def test_example_end_algebra_is_weakly_shod(example1_functor):
    report = classify_algebra(example1_functor.algebra)
    assert report.ok
    assert report.global_dimension == 4
    assert report.flags["weakly_shod"]
    assert not report.flags["shod"]
    assert not report.flags["quasi_tilted"]
    assert report.flags["laura"]
    assert report.notes["laura"].startswith("experimental")
    stuck = [r for r in report.rows if r.projective_dimension >= 2 and r.injective_dimension >= 2]
    assert stuck
    outside = {e.label for e in report.outside_left_right}
    assert outside == {r.label for r in report.rows if not (r.left_part or r.right_part)}
    assert {r.label for r in stuck} <= outside
    assert "not checked" in report.notes["weakly_shod"]


@pytest.mark.slow
def test_tame_example_end_algebra_is_shod(example2):
    chain = build_chain(example2.algebra, example2.chain_sigmas())
    B = HeartFunctor(build_silting(chain)).algebra
    assert B.num_vertices == 7
    assert len(B.relations) == 3
    report = classify_algebra(B)
    assert report.ok
    assert report.flags["shod"]
