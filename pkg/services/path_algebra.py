"""Path algebras of quivers modulo admissible relations.

Conventions: a path is read left to right, so ``a*b`` runs through ``a`` and
then ``b``. Right modules are representations of the quiver itself, and an
arrow ``a: i -> j`` acts as a matrix from the vertex-i space to the vertex-j
space. P_i = e_i A is spanned by the paths starting at i, and I_i = D(A e_i)
by the duals of the paths ending at i.
"""
import logging
from collections import defaultdict
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from models.quiver import Arrow, Quiver, Relation
from services import linalg
from services.errors import InputError, NonAdmissibleError

logger = logging.getLogger(__name__)

MAX_CYCLIC_DEGREE = 64


class Path(NamedTuple):
    source: str
    target: str
    arrows: Tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e{self.source}"


def trivial_path(v: str) -> Path:
    return Path(v, v, ())


def concatenate(p: Path, q: Path) -> Optional[Path]:
    if p.target != q.source:
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


def _path_order(p: Path):
    return (-p.length, p.arrows)


class BoundQuiverAlgebra:
    """kQ/I with a path basis of irreducible paths, computed once."""

    def __init__(self, quiver: Quiver, relations: Sequence[Relation] = (), field=QQ, name: str = "A"):
        self.quiver = quiver
        self.relations = tuple(relations)
        self.field = field
        self.name = name
        self.vertices: Tuple[str, ...] = tuple(quiver.vertices)
        self.arrows: Dict[str, Arrow] = quiver.arrow_map()
        self._opposite: Optional["BoundQuiverAlgebra"] = None
        self._relation_vectors = [self._relation_terms(r) for r in self.relations]
        self._basis: Dict[Tuple[str, str], List[Path]] = {}
        self._index: Dict[Path, int] = {}
        self._rewrite: Dict[Path, Dict[Path, object]] = {}
        self._max_length = 0
        self._build_basis()
        logger.debug("algebra %s: %d vertices, %d arrows, dimension %d",
                     name, len(self.vertices), len(self.arrows), self.dimension)

    @property
    def is_hereditary(self) -> bool:
        return not self.relations

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def _relation_terms(self, relation: Relation) -> List[Tuple[object, Path]]:
        terms = []
        endpoints = set()
        for term in relation.terms:
            if len(term.arrows) < 2:
                raise NonAdmissibleError(
                    f"relation '{relation.text()}' contains a path of length {len(term.arrows)}; "
                    "relations must lie in the square of the arrow ideal")
            path = self._path_from_labels(term.arrows)
            endpoints.add((path.source, path.target))
            terms.append((linalg.scalar(term.coefficient, self.field), path))
        if len(endpoints) > 1:
            raise InputError(f"relation '{relation.text()}' mixes paths with different endpoints")
        return terms

    def _path_from_labels(self, labels: Sequence[str]) -> Path:
        try:
            arrows = [self.arrows[x] for x in labels]
        except KeyError as exc:
            raise InputError(f"unknown arrow {exc.args[0]!r}") from exc
        for a, b in zip(arrows, arrows[1:]):
            if a.dst != b.src:
                raise InputError(f"arrows {a.label} and {b.label} do not compose ({a.label} ends at "
                                 f"{a.dst}, {b.label} starts at {b.src})")
        return Path(arrows[0].src, arrows[-1].dst, tuple(labels))

    def path(self, labels: Sequence[str]) -> Path:
        return self._path_from_labels(labels)

    def _extend(self, paths: Iterable[Path]) -> List[Path]:
        out = []
        for p in paths:
            for a in self.quiver.arrows_from(p.target):
                out.append(Path(p.source, a.dst, p.arrows + (a.label,)))
        return out

    def _build_basis(self):
        acyclic = self.quiver.is_acyclic()
        if not acyclic:
            for r in self._relation_vectors:
                if len({p.length for _, p in r}) > 1:
                    raise NonAdmissibleError(
                        "relations on a quiver with oriented cycles must be homogeneous")
        layer = [trivial_path(v) for v in self.vertices]
        degree = 0
        seen: List[Path] = []
        while layer:
            seen.extend(layer)
            if not acyclic:
                survivors = self._reduce_block(layer, self._ideal_vectors(seen, layer))
                if degree >= 2 and not survivors:
                    self._max_length = degree - 1
                    break
                if degree > MAX_CYCLIC_DEGREE:
                    raise NonAdmissibleError(
                        f"no power of the arrow ideal vanishes up to degree {MAX_CYCLIC_DEGREE}; "
                        "the relation ideal is not admissible")
            layer = self._extend(layer)
            degree += 1
        if acyclic:
            self._max_length = max(p.length for p in seen)
            self._reduce_block(seen, self._ideal_vectors(seen, seen))
        for block in self._basis.values():
            block.sort(key=lambda p: (p.length, p.arrows))
        self._index = {}
        for block in self._basis.values():
            for k, p in enumerate(block):
                self._index[p] = k

    def _ideal_vectors(self, paths: List[Path], universe: List[Path]) -> List[Dict[Path, object]]:
        """Spanning set u·rho·v of the ideal, restricted to products landing in the universe."""
        known = set(universe)
        ending = defaultdict(list)
        starting = defaultdict(list)
        for p in paths:
            ending[p.target].append(p)
            starting[p.source].append(p)
        vectors = []
        for terms in self._relation_vectors:
            s, t = terms[0][1].source, terms[0][1].target
            for u in ending[s]:
                for v in starting[t]:
                    vec = {}
                    for c, p in terms:
                        full = Path(u.source, v.target, u.arrows + p.arrows + v.arrows)
                        if full in known:
                            vec[full] = vec.get(full, self.field.zero) + c
                    if vec:
                        vectors.append(vec)
        return vectors

    def _reduce_block(self, universe: List[Path], vectors: List[Dict[Path, object]]) -> List[Path]:
        """Eliminate longest paths first; the non-pivot paths of each block join the basis."""
        K = self.field
        blocks = defaultdict(list)
        for p in universe:
            blocks[(p.source, p.target)].append(p)
        grouped = defaultdict(list)
        for vec in vectors:
            p = next(iter(vec))
            grouped[(p.source, p.target)].append(vec)
        all_survivors = []
        for key, paths in blocks.items():
            paths = sorted(paths, key=_path_order)
            pos = {p: k for k, p in enumerate(paths)}
            rows = [[vec.get(p, K.zero) for p in paths] for vec in grouped.get(key, [])]
            if rows:
                R, pivots = linalg.rref(DomainMatrix(rows, (len(rows), len(paths)), K))
                data = linalg.to_rows(R)
            else:
                pivots, data = (), []
            free = [j for j in range(len(paths)) if j not in pivots]
            for i, pcol in enumerate(pivots):
                self._rewrite[paths[pcol]] = {
                    paths[j]: -data[i][j] for j in free if not K.is_zero(data[i][j])}
            survivors = [paths[j] for j in free]
            self._basis.setdefault(key, []).extend(survivors)
            for p in survivors:
                self._index[p] = -1
            all_survivors.extend(survivors)
        return all_survivors

    # -- basis and multiplication -------------------------------------------------

    def basis(self, i: str, j: str) -> List[Path]:
        return self._basis.get((i, j), [])

    def path_basis(self) -> List[Path]:
        out = []
        for i in self.vertices:
            for j in self.vertices:
                out.extend(self.basis(i, j))
        return out

    @property
    def dimension(self) -> int:
        return sum(len(b) for b in self._basis.values())

    def index(self, p: Path) -> int:
        return self._index[p]

    def normal_form(self, p: Path) -> Dict[Path, object]:
        K = self.field
        if p in self._index:
            return {p: K.one}
        if p in self._rewrite:
            return dict(self._rewrite[p])
        if p.length > self._max_length:
            return {}
        raise InputError(f"path {p.label()} is not composable in {self.name}")

    def reduce(self, combination: Dict[Path, object]) -> Dict[Path, object]:
        K = self.field
        out: Dict[Path, object] = {}
        for p, c in combination.items():
            if K.is_zero(c):
                continue
            for q, d in self.normal_form(p).items():
                out[q] = out.get(q, K.zero) + c * d
        return {q: c for q, c in out.items() if not K.is_zero(c)}

    def multiply_paths(self, p: Path, q: Path) -> Dict[Path, object]:
        full = concatenate(p, q)
        if full is None:
            return {}
        return self.normal_form(full)

    def multiply(self, x: Dict[Path, object], y: Dict[Path, object]) -> Dict[Path, object]:
        K = self.field
        out: Dict[Path, object] = {}
        for p, c in x.items():
            for q, d in y.items():
                for r, e in self.multiply_paths(p, q).items():
                    out[r] = out.get(r, K.zero) + c * d * e
        return {r: c for r, c in out.items() if not K.is_zero(c)}

    def coordinates(self, i: str, j: str, combination: Dict[Path, object]) -> List:
        K = self.field
        vec = [K.zero] * len(self.basis(i, j))
        for p, c in self.reduce(combination).items():
            vec[self._index[p]] = vec[self._index[p]] + c
        return vec

    def element(self, i: str, j: str, coords: Sequence) -> Dict[Path, object]:
        K = self.field
        return {p: c for p, c in zip(self.basis(i, j), coords) if not K.is_zero(c)}

    def arrow_path(self, label: str) -> Path:
        a = self.arrows[label]
        return Path(a.src, a.dst, (label,))

    def relation_combinations(self) -> List[Dict[Path, object]]:
        return [{p: c for c, p in terms} for terms in self._relation_vectors]

    # -- derived structure -----------------------------------------------------

    def cartan_matrix(self) -> np.ndarray:
        n = self.num_vertices
        C = np.zeros((n, n), dtype=int)
        for a, i in enumerate(self.vertices):
            for b, j in enumerate(self.vertices):
                C[a, b] = len(self.basis(i, j))
        return C

    def vertex_index(self, v: str) -> int:
        try:
            return self.vertices.index(v)
        except ValueError as exc:
            raise InputError(f"unknown vertex {v!r} in {self.name}") from exc

    def opposite(self) -> "BoundQuiverAlgebra":
        if self._opposite is None:
            rels = []
            for r in self.relations:
                rels.append(Relation(terms=tuple(
                    t.model_copy(update={"arrows": tuple(reversed(t.arrows))}) for t in r.terms)))
            op = BoundQuiverAlgebra(self.quiver.opposite(), rels, self.field, name=f"{self.name}^op")
            op._opposite = self
            self._opposite = op
        return self._opposite

    def relation_texts(self) -> List[str]:
        return [r.text() for r in self.relations]

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra({self.name}, dim={self.dimension})"
