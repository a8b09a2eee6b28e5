from pathlib import Path

import pytest

from models.config import WorkbenchConfig
from services import linalg
from services.chains import build_chain
from services.dsl_parser import parse_algebra
from services.heart import HeartContext, HeartFunctor
from services.silting import build_silting
from services.workspace import Workspace

SAMPLES = Path(__file__).resolve().parent.parent / "samples"

A2 = "quiver { 1 2; a: 1->2 }"
A3 = "quiver { 1 2 3; a: 1->2; b: 2->3 }"


def sample(name: str) -> str:
    return str(SAMPLES / name)


def linear_quiver(n: int, orientation: int = 0) -> str:
    """A_n with arrow i between vertices i and i+1 reversed when bit i of orientation is set."""
    arrows = []
    for i in range(1, n):
        if orientation >> (i - 1) & 1:
            arrows.append(f"x{i}: {i + 1}->{i}")
        else:
            arrows.append(f"x{i}: {i}->{i + 1}")
    return "quiver { " + " ".join(str(v) for v in range(1, n + 1)) + "; " + "; ".join(arrows) + " }"


def d4_quiver(orientation: int = 0) -> str:
    arrows = []
    for k, leaf in enumerate(("1", "3", "4")):
        arrows.append(f"y{leaf}: 2->{leaf}" if orientation >> k & 1 else f"y{leaf}: {leaf}->2")
    return "quiver { 1 2 3 4; " + "; ".join(arrows) + " }"


@pytest.fixture(autouse=True)
def fixed_seed():
    linalg.set_seed(WorkbenchConfig().seed)


@pytest.fixture
def field():
    return linalg.make_field("Q")


@pytest.fixture
def a2(field):
    return parse_algebra(A2, field)


@pytest.fixture
def a3(field):
    return parse_algebra(A3, field)


@pytest.fixture(scope="session")
def a2_workspace():
    return Workspace.from_file(sample("a2.quiver"))


@pytest.fixture(scope="session")
def a2_chain(a2_workspace):
    return build_chain(a2_workspace.algebra, a2_workspace.chain_sigmas())


@pytest.fixture(scope="session")
def a2_silting(a2_chain):
    return build_silting(a2_chain)


@pytest.fixture(scope="session")
def a2_context(a2_chain, a2_workspace):
    return HeartContext(a2_chain, a2_workspace.universe())


@pytest.fixture(scope="session")
def a2_functor(a2_silting):
    return HeartFunctor(a2_silting)


@pytest.fixture(scope="session")
def example1():
    return Workspace.from_file(sample("example1.quiver"))


@pytest.fixture(scope="session")
def example1_chain(example1):
    return build_chain(example1.algebra, example1.chain_sigmas())


@pytest.fixture(scope="session")
def example1_silting(example1_chain):
    return build_silting(example1_chain)


@pytest.fixture(scope="session")
def example1_context(example1_chain, example1):
    return HeartContext(example1_chain, example1.universe())


@pytest.fixture(scope="session")
def example1_functor(example1_silting):
    return HeartFunctor(example1_silting)


@pytest.fixture(scope="session")
def example2():
    return Workspace.from_file(sample("example2.quiver"))
