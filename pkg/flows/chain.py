import logging

from models.pipeline_state import PipelineStage, PipelineState
from services.chains import build_chain, validate_chain
from services.errors import ComputationLimitError, WorkbenchError
from services.nsection import nsection_to_chain

logger = logging.getLogger(__name__)


def chain_node(state: PipelineState) -> PipelineState:
    """Build the chain from its localizing sets, or recover it from an n-section of ind A."""
    workspace = state.workspace
    try:
        try:
            universe = workspace.universe()
        except ComputationLimitError as exc:
            universe = None
            state.notes.append(f"ind {workspace.algebra.name} not enumerated: {exc.message}")
        if workspace.document.chain:
            chain = build_chain(workspace.algebra, workspace.chain_sigmas())
        else:
            if universe is None:
                state.fail("the converse construction needs every indecomposable of A", 3)
                return state
            chain = nsection_to_chain(workspace.algebra, workspace.section_classes(), universe)
        report = validate_chain(chain, universe)
    except WorkbenchError as exc:
        state.fail(exc.message, exc.exit_code)
        return state
    state.chain = chain
    state.chain_report = report
    state.add_message(PipelineStage.CHAIN.value, f"chain of length {chain.n}", {"ok": report.ok})
    if not report.ok:
        state.fail("chain validation failed", 1)
        return state
    state.stage = PipelineStage.SILTING
    return state


def route_from_chain(state: PipelineState) -> str:
    return "finalize" if state.failed else "silting"
