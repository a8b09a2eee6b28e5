import io
import json

import pytest

from cli import run
from main import create_verify_graph, print_verify, run_verify, summarize
from models.config import WorkbenchConfig
from models.pipeline_state import PipelineStage
from tests.conftest import sample


def test_graph_compiles():
    assert create_verify_graph() is not None


def test_a2_pipeline():
    state = run_verify(sample("a2.quiver"))
    assert state.exit_code == 0
    assert state.stage == PipelineStage.DONE
    assert state.end_algebra_report.dimension == 3
    assert [len(c) for c in state.nsection_report.classes] == [2, 1]
    assert state.hom_exchange_failures == []
    assert state.classification_report.flags["quasi_tilted"]
    assert state.messages[-1]["content"] == "all checks passed"


@pytest.mark.parametrize("label", ["GF(2)", "GF(3)"])
def test_a2_pipeline_over_prime_fields(label):
    state = run_verify(sample("a2.quiver"), WorkbenchConfig(field=label))
    assert state.exit_code == 0
    assert state.end_algebra_report.dimension == 3
    assert [len(c) for c in state.nsection_report.classes] == [2, 1]


def test_pipeline_from_classes():
    state = run_verify(sample("a2_section.quiver"))
    assert state.exit_code == 0
    assert state.chain_report.ok
    assert state.silting_report.ok


def test_missing_input_stops_at_load():
    state = run_verify("no/such/file.quiver")
    assert state.failed
    assert state.exit_code == 2
    assert state.chain_report is None
    summary = summarize(state)
    assert not summary.ok
    assert summary.error.startswith("cannot read")


def test_document_without_chain(tmp_path):
    path = tmp_path / "bare.quiver"
    path.write_text("quiver { 1 2; a: 1->2 }\n", encoding="utf-8")
    state = run_verify(str(path))
    assert state.exit_code == 2


def test_text_rendering():
    out = io.StringIO()
    print_verify(run_verify(sample("a2.quiver")), out)
    lines = out.getvalue().splitlines()
    assert lines[0].startswith("✅ load:")
    assert any(line.startswith("✅ done:") for line in lines)


def test_example_verify_json():
    out = io.StringIO()
    code = run(["verify", sample("example1.quiver"), "--format", "json"], out=out, err=io.StringIO())
    assert code == 0
    data = json.loads(out.getvalue())
    assert data["ok"] is True
    assert data["end_algebra"]["dimension"] == 9
    assert len(data["finiteness"]) == 3
    assert data["classification"]["global_dimension"] == 4


@pytest.mark.slow
def test_tame_example_skips_the_section():
    state = run_verify(sample("example2.quiver"))
    assert state.exit_code == 0
    assert state.nsection_report is None
    assert any(note.startswith("n-section not verified") for note in state.notes)
    assert state.classification_report.flags["shod"]
