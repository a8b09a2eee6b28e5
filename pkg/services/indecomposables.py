"""Indecomposable enumeration by knitting τ⁻¹-orbits of projectives and τ-orbits of injectives."""
import logging
from collections import deque
from typing import Dict, List, Optional, Tuple

import networkx as nx

from services.errors import ComputationLimitError
from services.homology import tau, tau_inv
from services.modules import FDModule, injective, is_isomorphic, projective, simple
from services.path_algebra import BoundQuiverAlgebra

logger = logging.getLogger(__name__)

MAX_INDECOMPOSABLES = 2000


class IsoclassIndex:
    """Modules up to isomorphism, bucketed by dimension vector."""

    def __init__(self):
        self.members: List[FDModule] = []
        self._buckets: Dict[Tuple[int, ...], List[int]] = {}

    def find(self, X: FDModule) -> int:
        for k in self._buckets.get(X.dims, []):
            if is_isomorphic(self.members[k], X)[0]:
                return k
        return -1

    def add(self, X: FDModule) -> Tuple[int, bool]:
        k = self.find(X)
        if k >= 0:
            return k, False
        self.members.append(X)
        self._buckets.setdefault(X.dims, []).append(len(self.members) - 1)
        return len(self.members) - 1, True

    def __len__(self):
        return len(self.members)


def default_cap(algebra: BoundQuiverAlgebra) -> int:
    return 2 * algebra.dimension


def standard_name(X: FDModule, algebra: BoundQuiverAlgebra) -> str:
    """P<v>, I<v> or S<v> when X is one of those, else its dimension vector."""
    for prefix, build in (("P", projective), ("I", injective), ("S", simple)):
        for v in algebra.vertices:
            Y = build(algebra, v)
            if Y.dims == X.dims and is_isomorphic(X, Y)[0]:
                return f"{prefix}{v}"
    return "M" + "".join(str(d) for d in X.dims) if all(d < 10 for d in X.dims) else \
        "M(" + ",".join(str(d) for d in X.dims) + ")"


def enumerate_indecomposables(algebra: BoundQuiverAlgebra, cap_dim: Optional[int] = None) -> List[FDModule]:
    """Every indecomposable reachable from a projective by τ⁻¹ or from an injective by τ.

    Complete for representation-directed algebras; an orbit growing past cap_dim
    means the algebra is not representation-finite within the bound.
    """
    cap = cap_dim if cap_dim is not None else default_cap(algebra)
    index = IsoclassIndex()
    queue = deque()
    for v in algebra.vertices:
        queue.append((projective(algebra, v), +1))
    for v in algebra.vertices:
        queue.append((injective(algebra, v), -1))
    while queue:
        X, direction = queue.popleft()
        if X.total_dim == 0:
            continue
        if X.total_dim > cap:
            raise ComputationLimitError(
                f"{algebra.name} is not representation-finite within dimension {cap} "
                f"(reached dimension vector {list(X.dims)})")
        _, new = index.add(X)
        if not new:
            continue
        if len(index) > MAX_INDECOMPOSABLES:
            raise ComputationLimitError(f"more than {MAX_INDECOMPOSABLES} indecomposables over {algebra.name}")
        queue.append((tau_inv(X) if direction > 0 else tau(X), direction))
    found = sorted(index.members, key=lambda X: (X.total_dim, X.dims))
    logger.info("%s: %d indecomposables (cap %d)", algebra.name, len(found), cap)
    return [X if X.name else X.renamed(standard_name(X, algebra)) for X in found]


def positive_roots_count(algebra: BoundQuiverAlgebra) -> int:
    """Number of positive roots of the underlying Dynkin graph, for cross-checks."""
    g = algebra.quiver.digraph().to_undirected()
    n = g.number_of_nodes()
    degrees = sorted((d for _, d in g.degree()), reverse=True)
    if not nx.is_tree(nx.Graph(g)) or g.number_of_edges() != n - 1:
        raise ComputationLimitError("underlying graph is not Dynkin")
    if not degrees or degrees[0] <= 2:
        return n * (n + 1) // 2
    if degrees[0] == 3 and degrees[1] <= 2:
        branch = _branch_lengths(nx.Graph(g))
        if branch[:2] == [1, 1]:
            return n * (n - 1)
        if branch == [1, 2, 2]:
            return 36
        if branch == [1, 2, 3]:
            return 63
        if branch == [1, 2, 4]:
            return 120
    raise ComputationLimitError("underlying graph is not Dynkin")


def _branch_lengths(g) -> List[int]:
    center = next(v for v, d in g.degree() if d == 3)
    out = []
    for start in g.neighbors(center):
        length, prev, cur = 1, center, start
        while g.degree(cur) == 2:
            prev, cur = cur, next(w for w in g.neighbors(cur) if w != prev)
            length += 1
        out.append(length)
    return sorted(out)

