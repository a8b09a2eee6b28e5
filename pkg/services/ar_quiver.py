"""Auslander-Reiten quiver of a representation-finite algebra from its list of indecomposables."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import networkx as nx

from services import linalg
from services.decomposition import find_isomorphic, radical_endomorphisms
from services.homology import is_projective, tau
from services.indecomposables import enumerate_indecomposables
from services.modules import FDModule, HomSpace
from services.path_algebra import BoundQuiverAlgebra

logger = logging.getLogger(__name__)


@dataclass
class ARQuiver:
    algebra: BoundQuiverAlgebra
    modules: List[FDModule]
    irreducible: Dict[Tuple[int, int], int] = field(default_factory=dict)
    translate: Dict[int, int] = field(default_factory=dict)
    mesh_failures: List[str] = field(default_factory=list)

    @property
    def names(self) -> List[str]:
        return [X.label() for X in self.modules]

    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        for k, name in enumerate(self.names):
            g.add_node(k, label=name, dims=self.modules[k].dims)
        for (i, j), m in sorted(self.irreducible.items()):
            g.add_edge(i, j, kind="irreducible", multiplicity=m)
        for x, tx in sorted(self.translate.items()):
            g.add_edge(x, tx, kind="tau")
        return g

    def tau_orbits(self) -> List[List[int]]:
        starts = [k for k in range(len(self.modules)) if k not in self.translate]
        orbits = []
        inverse = {v: k for k, v in self.translate.items()}
        for k in starts:
            orbit = [k]
            while orbit[-1] in inverse:
                orbit.append(inverse[orbit[-1]])
            orbits.append(orbit)
        return orbits


def radical_basis(X: FDModule, Y: FDModule, space: HomSpace, same: bool):
    return radical_endomorphisms(X, space) if same else list(space.basis)


def ar_quiver(algebra: BoundQuiverAlgebra, modules: Optional[List[FDModule]] = None,
              cap_dim: Optional[int] = None) -> ARQuiver:
    """dim Irr(X, Y) = dim rad(X, Y) - dim rad²(X, Y), with rad² spanned by compositions through indecomposables."""
    modules = modules if modules is not None else enumerate_indecomposables(algebra, cap_dim)
    n = len(modules)
    spaces = {}
    rad = {}
    for i in range(n):
        for j in range(n):
            H = HomSpace(modules[i], modules[j])
            spaces[i, j] = H
            rad[i, j] = radical_basis(modules[i], modules[j], H, i == j) if H.dim else []
    quiver = ARQuiver(algebra, modules)
    K = algebra.field
    for i in range(n):
        for j in range(n):
            if not rad[i, j]:
                continue
            H = spaces[i, j]
            composites = []
            for z in range(n):
                for f in rad[i, z]:
                    for g in rad[z, j]:
                        composites.append(H.coordinates(g.compose(f)))
            reducer = linalg.Reducer(composites, H.dim, K)
            rad_coords = [reducer.reduce(H.coordinates(f)) for f in rad[i, j]]
            irr = linalg.rank(linalg.from_rows(rad_coords, K, H.dim, convert=False)) if rad_coords else 0
            if irr:
                quiver.irreducible[i, j] = irr
    for x, X in enumerate(modules):
        if is_projective(X):
            continue
        k = find_isomorphic(tau(X), modules)
        if k < 0:
            quiver.mesh_failures.append(f"τ{X.label()} is missing from the list of indecomposables")
            continue
        quiver.translate[x] = k
        middle = sum(m * modules[y].total_dim for (y, t), m in quiver.irreducible.items() if t == x)
        if middle != X.total_dim + modules[k].total_dim:
            quiver.mesh_failures.append(
                f"mesh at {X.label()}: middle term has dimension {middle}, "
                f"expected {X.total_dim} + {modules[k].total_dim}")
    logger.info("AR quiver of %s: %d vertices, %d arrows", algebra.name, n, len(quiver.irreducible))
    return quiver
