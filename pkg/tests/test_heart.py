import pytest

from services.errors import InputError
from services.heart import HeartContext, apply_F, check_hom_exchange, heart_decomposition, heart_kernel_cokernel, \
    trace_approximation
from services.modules import hom_space, projective, simple


def test_a2_strata(a2_context):
    assert sorted(X.name for X in a2_context.members(0)) == ["I1", "P1"]
    assert [X.name for X in a2_context.members(1)] == ["P2"]
    report = heart_decomposition(a2_context)
    assert report.ok
    assert report.unclassified == []


def test_example_strata_sizes(example1_context):
    report = heart_decomposition(example1_context)
    assert report.ok
    assert len(report.strata) == 3
    assert len(report.unclassified) == 15 - 9
    assert sum(len(s.members) for s in report.strata) == 9
    assert all(len(example1_context.candidate_strata(X)) <= 1 for X in example1_context.universe)
    disjoint = next(c for c in report.checks if c.name == "strata are pairwise disjoint")
    assert disjoint.passed


class EverywhereContext(HeartContext):
    def in_stratum(self, X, j):
        return True


def test_overlapping_strata_are_reported(a2_chain, a2_workspace):
    report = heart_decomposition(EverywhereContext(a2_chain, a2_workspace.universe()))
    overlap = next(c for c in report.failures() if c.name == "strata are pairwise disjoint")
    assert "P2 in strata [0, 1]" in overlap.witness


def test_shifted_projective_goes_to_a_simple(a2_workspace, a2_functor, a2_context):
    P2 = projective(a2_workspace.algebra, "2")
    FP2 = apply_F(P2, 1, a2_functor, a2_context)
    assert FP2.dims == (0, 1)


def test_apply_f_checks_the_stratum(a2_workspace, a2_functor, a2_context):
    with pytest.raises(InputError):
        apply_F(projective(a2_workspace.algebra, "2"), 0, a2_functor, a2_context)


def test_hom_exchange(a2_functor, a2_context):
    assert check_hom_exchange(a2_functor, a2_context) == []


def test_heart_cokernel_of_top_projection(a2_workspace, a2_functor, a2_context):
    A = a2_workspace.algebra
    f = hom_space(projective(A, "1"), simple(A, "1")).basis[0]
    report = heart_kernel_cokernel(f, 0, a2_functor, a2_context)
    assert report.ok
    assert report.kernel == []
    assert [(e.label, e.shift) for e in report.cokernel] == [("P2", 1)]


def test_trace_approximation_needs_three_terms(a2_workspace, a2_context):
    with pytest.raises(InputError):
        trace_approximation(simple(a2_workspace.algebra, "1"), a2_context)
