"""Text forms of algebras, modules and AR quivers: the DSL, JSON documents and Graphviz DOT."""
from typing import Dict, List, Optional, Sequence

from models.documents import AlgebraDocument, ModuleDocument
from services import linalg
from services.modules import FDModule
from services.path_algebra import BoundQuiverAlgebra


class DotGraph:
    """Graphviz digraph assembled from node and edge statements."""

    def __init__(self, name: str = "Q", options: Optional[List[str]] = None):
        self.name = name
        self.options = options if options is not None else ["rankdir=LR", "node [shape=circle]"]
        self.nodes: List[str] = []
        self.edges: List[str] = []

    @staticmethod
    def _unpack(attrs: Dict[str, object]) -> str:
        return ",".join(f"{k}=\"{v}\"" for k, v in attrs.items())

    def node(self, identifier: str, **attrs):
        self.nodes.append(f"\"{identifier}\" [{self._unpack(attrs)}]" if attrs else f"\"{identifier}\"")

    def edge(self, a: str, b: str, **attrs):
        self.edges.append(f"\"{a}\" -> \"{b}\" [{self._unpack(attrs)}]" if attrs else f"\"{a}\" -> \"{b}\"")

    def render(self) -> str:
        lines = [f"digraph {self.name} {{"]
        lines += [f"  {o};" for o in self.options]
        lines += [f"  {n};" for n in self.nodes]
        lines += [f"  {e};" for e in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"


def quiver_to_dot(algebra: BoundQuiverAlgebra) -> str:
    g = DotGraph(name="Q")
    for v in algebra.vertices:
        g.node(v)
    for a in algebra.quiver.arrows:
        g.edge(a.src, a.dst, label=a.label)
    return g.render()


def ar_quiver_to_dot(quiver) -> str:
    """Irreducible maps as solid edges (labelled by multiplicity above one), τ as dashed edges."""
    g = DotGraph(name="AR", options=["rankdir=LR", "node [shape=box]"])
    names = quiver.names
    for k, name in enumerate(names):
        g.node(name, label=f"{name}\\n{','.join(str(d) for d in quiver.modules[k].dims)}")
    for (i, j), m in sorted(quiver.irreducible.items()):
        if m > 1:
            g.edge(names[i], names[j], label=m)
        else:
            g.edge(names[i], names[j])
    for x, tx in sorted(quiver.translate.items()):
        g.edge(names[x], names[tx], style="dashed", constraint="false")
    return g.render()


def algebra_to_document(algebra: BoundQuiverAlgebra) -> AlgebraDocument:
    return AlgebraDocument(vertices=list(algebra.vertices), arrows=list(algebra.quiver.arrows),
                           relations=algebra.relation_texts())


def algebra_to_json(algebra: BoundQuiverAlgebra) -> str:
    return algebra_to_document(algebra).model_dump_json(indent=2)


def algebra_to_dsl(algebra: BoundQuiverAlgebra) -> str:
    arrows = "; ".join(f"{a.label}: {a.src}->{a.dst}" for a in algebra.quiver.arrows)
    head = f"quiver {{ {' '.join(algebra.vertices)}" + (f"; {arrows} }}" if arrows else " }")
    if not algebra.relations:
        return head + "\n"
    return head + "\nrelations { " + " ".join(f"{r};" for r in algebra.relation_texts()) + " }\n"


def module_to_document(M: FDModule) -> ModuleDocument:
    K = M.field
    maps = {}
    for label in M.algebra.arrows:
        m = M.maps[label]
        if m.shape[0] and m.shape[1]:
            maps[label] = [[linalg.format_scalar(x, K) for x in row] for row in linalg.to_rows(m)]
    return ModuleDocument(name=M.label(), dims=list(M.dims), maps=maps)


def module_to_dsl(M: FDModule, name: Optional[str] = None) -> str:
    doc = module_to_document(M)
    name = name or (M.name if M.name.isidentifier() else "M")
    parts = [f"module {name} {{ dim {' '.join(str(d) for d in doc.dims)};"]
    for label, rows in doc.maps.items():
        parts.append(f"map {label} = [" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in rows) + "];")
    parts.append("}")
    return " ".join(parts) + "\n"


def references_to_dsl(keyword: str, block: str, groups: Sequence[Sequence[str]]) -> str:
    """`chain { step { ... } ; ... }` or `nsection { class { ... } ; ... }`."""
    inner = " ; ".join(f"{keyword} {{ {', '.join(g)} }}" for g in groups)
    return f"{block} {{ {inner} }}\n"
