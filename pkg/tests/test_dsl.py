import json

import pytest

from models.documents import ModuleDocument
from services import emitters
from services.dsl_parser import load_document, parse_algebra, parse_document, parse_references
from services.errors import DslSyntaxError, InputError, UnknownReferenceError
from services.modules import is_isomorphic
from services.workspace import Workspace
from tests.conftest import sample


def test_document_blocks():
    doc = load_document(sample("example1.quiver"))
    assert doc.algebra.vertices == ["1", "2", "3", "4", "5"]
    assert [a.label for a in doc.algebra.arrows] == ["a", "b", "c", "d"]
    assert doc.modules[0].name == "M13"
    assert doc.modules[0].maps == {"a": [["1"]]}
    assert doc.chain == [["I3", "I2", "I1"], ["M13", "I1"]]
    assert doc.name == "example1"


def test_section_block():
    doc = load_document(sample("a2_section.quiver"))
    assert doc.sections == [["P2"], ["P1", "S1"]]


def test_syntax_error_carries_position():
    with pytest.raises(DslSyntaxError) as info:
        parse_document("quiver { 1 2;\n  a 1->2 }")
    assert info.value.line == 2
    assert info.value.exit_code == 2


def test_unknown_vertex():
    with pytest.raises(UnknownReferenceError):
        parse_document("quiver { 1 2; a: 1->3 }")


def test_unknown_arrow_in_relation():
    with pytest.raises(UnknownReferenceError):
        parse_document("quiver { 1 2 3; a: 1->2; b: 2->3 } relations { a*z; }")


def test_references():
    assert parse_references("I3+I2+I1") == ["I3", "I2", "I1"]
    assert parse_references("M13, P4[1], (1,0,1)") == ["M13", "P4[1]", "(1,0,1)"]


def test_dsl_round_trip(field):
    text = "quiver { 1 2 3; a: 1->2; b: 2->3 } relations { a*b; }"
    A = parse_algebra(text, field)
    again = parse_algebra(emitters.algebra_to_dsl(A), field)
    assert again.dimension == A.dimension
    assert again.relation_texts() == A.relation_texts()


def test_json_documents(tmp_path, field):
    A = parse_algebra("quiver { 1 2; a: 1->2 }", field)
    path = tmp_path / "a2.json"
    path.write_text(emitters.algebra_to_json(A), encoding="utf-8")
    doc = load_document(str(path))
    assert doc.algebra.vertices == ["1", "2"]
    assert doc.algebra.arrows[0].src == "1"


def test_json_modules_with_numeric_entries(tmp_path):
    data = {
        "algebra": {"vertices": ["1", "2"], "arrows": [{"label": "a", "src": "1", "dst": "2"}]},
        "modules": [{"dims": [1, 1], "maps": {"a": [[1]]}}, {"name": "N", "dims": [2, 1], "maps": {"a": [["1/3", 2]]}}],
    }
    path = tmp_path / "modules.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    ws = Workspace.from_file(str(path))
    assert sorted(ws.modules) == ["M1", "N"]
    assert is_isomorphic(ws.module("M1"), ws.module("P1"))[0]
    assert ws.module("N").dims == (2, 1)

    again = ModuleDocument.model_validate_json(emitters.module_to_document(ws.module("N")).model_dump_json())
    assert again.dims == [2, 1]
    assert again.maps == {"a": [["1/3", "2"]]}


def test_json_rejects_unknown_fields(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"vertices": ["1"], "loops": []}), encoding="utf-8")
    with pytest.raises(InputError):
        load_document(str(path))


def test_missing_file():
    with pytest.raises(InputError):
        load_document("no/such/file.quiver")


def test_dot_output(field):
    A = parse_algebra("quiver { 1 2; a: 1->2 }", field)
    dot = emitters.quiver_to_dot(A)
    assert dot.startswith("digraph Q {")
    assert '"1" -> "2" [label="a"]' in dot
