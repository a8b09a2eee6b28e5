import logging
import sys
from typing import Optional

from langgraph.graph import END, StateGraph

from flows.chain import chain_node, route_from_chain
from flows.finalize import finalize_node
from flows.load import load_node, route_from_load
from flows.nsection import classify_node, nsection_node, route_from_nsection
from flows.silting import end_algebra_node, route_from_end_algebra, route_from_silting, silting_node
from models.config import WorkbenchConfig
from models.pipeline_state import PipelineState, VerifySummary

logger = logging.getLogger(__name__)

_pipeline_instance = None


def get_pipeline():
    """Get the global compiled verify graph"""
    global _pipeline_instance
    if _pipeline_instance is None:
        _pipeline_instance = create_verify_graph()
    return _pipeline_instance


def create_verify_graph():
    logger.debug("creating verify graph")
    g = StateGraph(PipelineState)

    g.add_node("load", load_node)
    g.add_node("chain", chain_node)
    g.add_node("silting", silting_node)
    g.add_node("end_algebra", end_algebra_node)
    g.add_node("nsection", nsection_node)
    g.add_node("classify", classify_node)
    g.add_node("finalize", finalize_node)

    g.set_entry_point("load")

    g.add_conditional_edges("load", route_from_load, {"chain": "chain", "finalize": "finalize"})
    g.add_conditional_edges("chain", route_from_chain, {"silting": "silting", "finalize": "finalize"})
    g.add_conditional_edges("silting", route_from_silting, {"end_algebra": "end_algebra", "finalize": "finalize"})
    g.add_conditional_edges(
        "end_algebra",
        route_from_end_algebra,
        {"nsection": "nsection", "finalize": "finalize"},
    )
    g.add_conditional_edges("nsection", route_from_nsection, {"classify": "classify", "finalize": "finalize"})
    g.add_edge("classify", "finalize")
    g.add_edge("finalize", END)

    return g.compile()


def run_verify(source: str, config: Optional[WorkbenchConfig] = None) -> PipelineState:
    state = PipelineState(source=source, config=config or WorkbenchConfig())
    result = get_pipeline().invoke(state, config={"recursion_limit": 20})
    return PipelineState(**dict(result)) if not isinstance(result, PipelineState) else result


def summarize(state: PipelineState) -> VerifySummary:
    return VerifySummary(
        source=state.source,
        ok=not state.failed,
        exit_code=state.exit_code,
        error=state.error,
        chain=state.chain_report,
        heart=state.heart_report,
        silting=state.silting_report,
        end_algebra=state.end_algebra_report,
        nsection=state.nsection_report,
        torsion_pairs=state.torsion_report,
        finiteness=state.finiteness_reports,
        hom_exchange_failures=state.hom_exchange_failures,
        classification=state.classification_report,
        notes=state.notes,
    )


def print_verify(state: PipelineState, out=sys.stdout):
    """Stage-by-stage verdict lines for the text format."""
    for message in state.messages:
        ok = message["metadata"].get("ok", "exit_code" not in message["metadata"])
        mark = "✅" if ok else "❌"
        lines = message["content"].splitlines() or [""]
        print(f"{mark} {message['stage'].lower()}: {lines[0]}", file=out)
        for line in lines[1:]:
            print(f"     {line}", file=out)
    reports = [state.chain_report, state.heart_report, state.silting_report, state.end_algebra_report,
               state.nsection_report, state.torsion_report, state.classification_report] + state.finiteness_reports
    for report in reports:
        for item in report.failures() if report is not None else []:
            witness = f" [{item.witness}]" if item.witness else ""
            print(f"   ❌ {item.name}: {item.detail}{witness}", file=out)
    for failure in state.hom_exchange_failures:
        print(f"   ❌ {failure}", file=out)
    for note in state.notes:
        print(f"   ⚠️  {note}", file=out)


if __name__ == "__main__":
    from cli import main

    raise SystemExit(main(["verify", *sys.argv[1:]]))
