import logging

from models.pipeline_state import PipelineStage, PipelineState
from services.errors import VerificationError, WorkbenchError
from services.heart import HeartFunctor
from services.silting import build_silting, end_algebra_report, present_end_algebra, verify_silting

logger = logging.getLogger(__name__)


def silting_node(state: PipelineState) -> PipelineState:
    try:
        T = build_silting(state.chain)
        report = verify_silting(T)
    except VerificationError as exc:
        state.silting_report = exc.report
        state.fail(exc.message, exc.exit_code)
        return state
    except WorkbenchError as exc:
        state.fail(exc.message, exc.exit_code)
        return state
    state.silting = T
    state.silting_report = report
    state.add_message(PipelineStage.SILTING.value, "T = " + " ⊕ ".join(T.labels()), {"ok": report.ok})
    if not report.ok:
        state.fail("T is not silting", 1)
        return state
    state.stage = PipelineStage.END_ALGEBRA
    return state


def route_from_silting(state: PipelineState) -> str:
    return "finalize" if state.failed else "end_algebra"


def end_algebra_node(state: PipelineState) -> PipelineState:
    try:
        presentation = present_end_algebra(state.silting)
        report = end_algebra_report(state.silting, presentation)
    except WorkbenchError as exc:
        state.fail(exc.message, exc.exit_code)
        return state
    state.functor = HeartFunctor(state.silting, presentation)
    state.end_algebra_report = report
    state.add_message(PipelineStage.END_ALGEBRA.value, report.dsl.strip(), {"ok": report.ok})
    if not report.ok:
        state.fail("End(T) presentation failed its checks", 1)
        return state
    state.stage = PipelineStage.NSECTION
    return state


def route_from_end_algebra(state: PipelineState) -> str:
    return "finalize" if state.failed else "nsection"
