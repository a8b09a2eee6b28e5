import logging

from models.pipeline_state import PipelineStage, PipelineState
from services.errors import WorkbenchError
from services.workspace import Workspace

logger = logging.getLogger(__name__)


def load_node(state: PipelineState) -> PipelineState:
    logger.info("loading %s", state.source)
    try:
        workspace = Workspace.from_file(state.source, state.config)
    except WorkbenchError as exc:
        state.fail(exc.message, exc.exit_code)
        return state
    if not workspace.document.chain and not workspace.document.sections:
        state.fail(f"{state.source} declares neither a chain nor an n-section", 2)
        return state
    state.workspace = workspace
    state.add_message(PipelineStage.LOAD.value, f"loaded {workspace.algebra.name}: "
                      f"{workspace.algebra.num_vertices} vertices, dimension {workspace.algebra.dimension}")
    state.stage = PipelineStage.CHAIN
    return state


def route_from_load(state: PipelineState) -> str:
    return "finalize" if state.failed else "chain"
