from typing import Dict, List, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, model_validator


class Arrow(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str = Field(..., description="Arrow label, unique in the quiver")
    src: str = Field(..., description="Source vertex")
    dst: str = Field(..., description="Target vertex")


class RelationTerm(BaseModel):
    model_config = ConfigDict(frozen=True)

    coefficient: str = "1"
    arrows: Tuple[str, ...]


class Relation(BaseModel):
    """Linear combination of parallel paths; `a*b` runs through a first, then b."""

    model_config = ConfigDict(frozen=True)

    terms: Tuple[RelationTerm, ...]

    def text(self) -> str:
        out = []
        for i, term in enumerate(self.terms):
            coeff = term.coefficient.strip()
            negative = coeff.startswith("-")
            magnitude = coeff[1:].strip() if negative else coeff
            path = "*".join(term.arrows)
            body = path if magnitude == "1" else f"{magnitude}*{path}"
            if i == 0:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(out)


class Quiver(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()

    @model_validator(mode="after")
    def _check_labels(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex labels must be unique")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ValueError("arrow labels must be unique")
        known = set(self.vertices)
        for a in self.arrows:
            if a.src not in known or a.dst not in known:
                raise ValueError(f"arrow {a.label}: endpoints {a.src}->{a.dst} are not declared vertices")
            if a.src == a.dst:
                raise ValueError(f"arrow {a.label} is a loop; loops are not supported")
        return self

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def arrow_map(self) -> Dict[str, Arrow]:
        return {a.label: a for a in self.arrows}

    def arrows_from(self, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.src == v]

    def arrows_into(self, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.dst == v]

    def digraph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for a in self.arrows:
            g.add_edge(a.src, a.dst, key=a.label)
        return g

    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.digraph())

    def opposite(self) -> "Quiver":
        return Quiver(
            vertices=self.vertices,
            arrows=tuple(Arrow(label=a.label, src=a.dst, dst=a.src) for a in self.arrows),
        )
