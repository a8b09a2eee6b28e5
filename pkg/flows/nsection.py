import logging

from models.pipeline_state import PipelineStage, PipelineState
from services.classification import classify_algebra
from services.errors import ComputationLimitError, WorkbenchError
from services.heart import HeartContext, check_hom_exchange, heart_decomposition
from services.nsection import build_nsection, functorial_finiteness, torsion_pairs, verify_nsection

logger = logging.getLogger(__name__)


def nsection_node(state: PipelineState) -> PipelineState:
    """Heart strata, their images in mod B and every check on the resulting n-section."""
    workspace = state.workspace
    try:
        try:
            universe = workspace.universe()
        except ComputationLimitError as exc:
            state.notes.append(f"n-section not verified: {exc.message}")
            state.stage = PipelineStage.CLASSIFY
            return state
        context = HeartContext(state.chain, universe)
        state.context = context
        state.heart_report = heart_decomposition(context)
        section = build_nsection(state.chain, state.silting, context, state.functor)
        state.section = section
        state.nsection_report = verify_nsection(section)
        state.torsion_report = torsion_pairs(section, context=context)
        if section.n == 3:
            state.finiteness_reports = [functorial_finiteness(section, i) for i in range(section.n)]
        state.hom_exchange_failures = check_hom_exchange(state.functor, context)
    except WorkbenchError as exc:
        state.fail(exc.message, exc.exit_code)
        return state
    reports = [state.heart_report, state.nsection_report, state.torsion_report] + state.finiteness_reports
    ok = all(r.ok for r in reports) and not state.hom_exchange_failures
    state.add_message(PipelineStage.NSECTION.value, f"{section.n}-section with classes {section.labels()}",
                      {"ok": ok})
    if not ok:
        state.fail("n-section checks failed", 1)
        return state
    state.stage = PipelineStage.CLASSIFY
    return state


def route_from_nsection(state: PipelineState) -> str:
    return "finalize" if state.failed else "classify"


def classify_node(state: PipelineState) -> PipelineState:
    algebra = state.functor.algebra
    try:
        modules = state.section.indecomposables() if state.section is not None else None
        report = classify_algebra(algebra, modules, state.config.cap_dim)
    except ComputationLimitError as exc:
        state.notes.append(f"classification of {algebra.name} not verified: {exc.message}")
        state.stage = PipelineStage.DONE
        return state
    except WorkbenchError as exc:
        state.fail(exc.message, exc.exit_code)
        return state
    state.classification_report = report
    flags = ", ".join(k for k, v in report.flags.items() if v)
    state.add_message(PipelineStage.CLASSIFY.value, f"gl.dim {report.global_dimension}; {flags or 'no flags'}",
                      {"ok": report.ok})
    if not report.ok:
        state.fail("classification is inconsistent", 1)
        return state
    state.stage = PipelineStage.DONE
    return state
