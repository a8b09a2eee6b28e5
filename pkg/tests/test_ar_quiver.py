from services import emitters
from services.ar_quiver import ar_quiver
from services.dsl_parser import parse_algebra
from tests.conftest import d4_quiver


def test_a2_ar_quiver(a2):
    q = ar_quiver(a2)
    assert q.names == ["P2", "I1", "P1"]
    assert q.irreducible == {(0, 2): 1, (2, 1): 1}
    assert q.translate == {1: 0}
    assert q.mesh_failures == []
    assert q.tau_orbits() == [[0, 1], [2]]


def test_d4_meshes_hold(field):
    q = ar_quiver(parse_algebra(d4_quiver(), field))
    assert len(q.modules) == 12
    assert q.mesh_failures == []
    assert len(q.translate) == 12 - 4


def test_ar_quiver_dot(a2):
    dot = emitters.ar_quiver_to_dot(ar_quiver(a2))
    assert dot.startswith("digraph AR {")
    assert '"I1" -> "P2" [style="dashed",constraint="false"]' in dot
