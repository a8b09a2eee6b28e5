import io
import json

from cli import run
from tests.conftest import sample


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_hom_query():
    code, out, _ = invoke("hom", sample("a2.quiver"), "P1", "P2")
    assert code == 0
    assert out.startswith("dim 0")


def test_ext_query_as_json():
    code, out, _ = invoke("ext", sample("a2.quiver"), "S1", "P2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["dimension"] == 1
    assert data["ok"] is True


def test_tau_query():
    code, out, _ = invoke("tau", sample("a2.quiver"), "S1")
    assert code == 0
    assert out.strip() == "τ S1 = P2 [0, 1]"


def test_indec_lists_fifteen():
    code, out, _ = invoke("indec", sample("example1.quiver"))
    assert code == 0
    assert out.startswith("15 indecomposables")


def test_parse_dot():
    code, out, _ = invoke("parse", sample("a2.quiver"), "--format", "dot")
    assert code == 0
    assert out.startswith("digraph Q {")


def test_dot_unavailable_is_input_error():
    code, _, err = invoke("hom", sample("a2.quiver"), "P1", "P2", "--format", "dot")
    assert code == 2
    assert "InputError" in err


def test_perp_with_sigma():
    code, out, _ = invoke("perp", sample("example1.quiver"), "--sigma", "I3+I2+I1")
    assert code == 0
    assert out.startswith("perp(I3, I2, I1) = add(")


def test_silt_on_trivial_chain():
    code, out, _ = invoke("silt", sample("trivial.quiver"))
    assert code == 0
    first = out.splitlines()[0]
    assert first.startswith("T = ")
    assert sorted(first[4:].split(" ⊕ ")) == ["P1", "P2", "P3"]


def test_end_algebra_of_a2():
    code, out, _ = invoke("end-algebra", sample("a2.quiver"), "--format", "json")
    assert code == 0
    assert json.loads(out)["dimension"] == 3


def test_unknown_module():
    code, _, err = invoke("hom", sample("a2.quiver"), "P1", "Q7")
    assert code == 2
    assert "UnknownReferenceError" in err


def test_missing_file():
    code, _, err = invoke("parse", "no/such/file.quiver")
    assert code == 2
    assert err.startswith("❌ InputError")


def test_computation_limit(tmp_path):
    path = tmp_path / "kronecker.quiver"
    path.write_text("quiver { 1 2; a: 1->2; b: 1->2 }\n", encoding="utf-8")
    code, _, err = invoke("indec", str(path))
    assert code == 3
    assert "ComputationLimitError" in err


def test_bad_field_flag():
    code, _, _ = invoke("hom", sample("a2.quiver"), "P1", "P2", "--field", "GF(4)")
    assert code == 2
