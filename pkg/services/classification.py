"""Homological classification of a representation-finite algebra: shod, quasi-tilted and their relatives.

Paths in ind B are sequences of nonzero maps between indecomposables; every
module is its own predecessor and successor.
"""
import logging
from typing import Dict, List, Optional, Sequence

import networkx as nx

from models.reports import ClassificationReport, DimensionRow, ModuleEntry
from services.decomposition import radical_endomorphisms
from services.homology import global_dimension, injective_dimension, is_injective, is_projective, \
    projective_dimension
from services.indecomposables import enumerate_indecomposables
from services.modules import FDModule, HomSpace
from services.path_algebra import BoundQuiverAlgebra

logger = logging.getLogger(__name__)


def hom_digraph(modules: Sequence[FDModule]) -> nx.DiGraph:
    """Edge i -> j when Hom(X_i, X_j) ≠ 0 for i ≠ j."""
    g = nx.DiGraph()
    g.add_nodes_from(range(len(modules)))
    for i, X in enumerate(modules):
        for j, Y in enumerate(modules):
            if i != j and HomSpace(X, Y).dim:
                g.add_edge(i, j)
    return g


def radical_digraph(modules: Sequence[FDModule]) -> nx.DiGraph:
    """Edge i -> j for a nonzero non-invertible map, loops included."""
    g = hom_digraph(modules)
    for i, X in enumerate(modules):
        if radical_endomorphisms(X):
            g.add_edge(i, i)
    return g


def predecessors(g: nx.DiGraph, i: int) -> set:
    return nx.ancestors(g, i) | {i}


def successors(g: nx.DiGraph, i: int) -> set:
    return nx.descendants(g, i) | {i}


def left_part(g: nx.DiGraph, pd: Sequence[int]) -> List[int]:
    """L_B: every predecessor has projective dimension at most one."""
    return [i for i in g.nodes if all(pd[k] <= 1 for k in predecessors(g, i))]


def right_part(g: nx.DiGraph, idim: Sequence[int]) -> List[int]:
    """R_B: every successor has injective dimension at most one."""
    return [i for i in g.nodes if all(idim[k] <= 1 for k in successors(g, i))]


def bounded_injective_to_projective_paths(modules: Sequence[FDModule], g: Optional[nx.DiGraph] = None) -> bool:
    """No path from an injective to a projective runs through a cycle of radical maps."""
    g = g if g is not None else radical_digraph(modules)
    injectives = [i for i, X in enumerate(modules) if is_injective(X)]
    projectives = [i for i, X in enumerate(modules) if is_projective(X)]
    downstream = set()
    for i in injectives:
        downstream |= successors(g, i)
    upstream = set()
    for i in projectives:
        upstream |= predecessors(g, i)
    cyclic = {v for comp in nx.strongly_connected_components(g) if len(comp) > 1 for v in comp}
    cyclic |= {v for v in g.nodes if g.has_edge(v, v)}
    return not (cyclic & downstream & upstream)


def classify_algebra(algebra: BoundQuiverAlgebra, modules: Optional[Sequence[FDModule]] = None,
                     cap_dim: Optional[int] = None) -> ClassificationReport:
    modules = list(modules) if modules is not None else enumerate_indecomposables(algebra, cap_dim)
    pd = [projective_dimension(X) for X in modules]
    idim = [injective_dimension(X) for X in modules]
    g = hom_digraph(modules)
    left = set(left_part(g, pd))
    right = set(right_part(g, idim))
    gl = global_dimension(algebra)
    report = ClassificationReport(global_dimension=gl)
    for k, X in enumerate(modules):
        report.rows.append(DimensionRow(label=X.label(), dims=tuple(X.dims), projective_dimension=pd[k],
                                        injective_dimension=idim[k], left_part=k in left,
                                        right_part=k in right))
    shod = all(p <= 1 or i <= 1 for p, i in zip(pd, idim))
    outside = [k for k in range(len(modules)) if k not in left | right]
    report.outside_left_right = [ModuleEntry(label=modules[k].label(), dims=tuple(modules[k].dims))
                                 for k in outside]
    # ind B is enumerated, so its complement of L_B ∪ R_B is finite
    cofinite = True
    bounded = bounded_injective_to_projective_paths(modules)
    weakly = cofinite
    flags: Dict[str, Optional[bool]] = {
        "quasi_tilted": shod and gl <= 2,
        "shod": shod,
        "strictly_shod": shod and gl == 3,
        "weakly_shod": weakly,
        "laura": cofinite,
        "bounded_injective_to_projective_paths": bounded,
    }
    report.flags = flags
    report.notes = {
        "weakly_shod": f"L_B ∪ R_B misses {len(outside)} of {len(modules)} indecomposables; "
                       "oriented cycles in nonsemiregular components: not checked",
        "laura": f"experimental: derived from the {len(outside)} indecomposables outside L_B ∪ R_B",
    }
    report.add_check("quasi-tilted implies shod", not flags["quasi_tilted"] or shod)
    report.add_check("shod implies weakly shod", not shod or weakly)
    report.add_check("strictly shod iff shod of global dimension 3", flags["strictly_shod"] == (shod and gl == 3))
    report.add_check("shod algebras have global dimension at most 3", not shod or gl <= 3, f"gl.dim = {gl}")
    logger.info("%s: gl.dim %d, shod %s, weakly shod %s, |L| = %d, |R| = %d", algebra.name, gl, shod, weakly,
                len(left), len(right))
    return report
