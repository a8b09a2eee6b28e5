"""Endomorphism algebras of graded sums M_1[s_1] + ... + M_r[s_r] over a hereditary algebra.

e_a B e_b = Hom_D(T_b, T_a) = Ext^{s_a - s_b}(M_b, M_a), which is Hom for equal
shifts, Ext¹ when s_a = s_b + 1 and zero otherwise. The product is x·y = x∘y.
An arrow a -> b of the presenting quiver is an element of e_a B e_b.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from models.quiver import Arrow, Quiver, Relation, RelationTerm
from services import linalg
from services.decomposition import character
from services.errors import InputError, InternalInconsistencyError
from services.homology import ExtClass, ExtSpace, yoneda, yoneda_pull
from services.modules import FDModule, HomSpace, ModuleMorphism, identity_morphism
from services.path_algebra import BoundQuiverAlgebra, Path

logger = logging.getLogger(__name__)

MAX_PRESENTATION_DEGREE = 64


@dataclass(frozen=True, eq=False)
class GradedSummand:
    module: FDModule
    shift: int
    label: str

    def display(self) -> str:
        return f"{self.label}[{self.shift}]" if self.shift else self.label


class GradedEndAlgebra:
    """Structure constants of End_D(T) on Hom and Ext¹ bases, computed lazily."""

    def __init__(self, summands: Sequence[GradedSummand]):
        if not summands:
            raise InputError("endomorphism algebra of the zero object")
        self.summands = list(summands)
        self.field = summands[0].module.field
        self._spaces: Dict[Tuple[int, int], object] = {}
        self._products: Dict[Tuple[int, int, int], List[List[List]]] = {}

    @property
    def size(self) -> int:
        return len(self.summands)

    def degree(self, a: int, b: int) -> int:
        return self.summands[a].shift - self.summands[b].shift

    def space(self, a: int, b: int):
        """HomSpace or ExtSpace realizing e_a B e_b, or None."""
        key = (a, b)
        if key not in self._spaces:
            d = self.degree(a, b)
            Mb, Ma = self.summands[b].module, self.summands[a].module
            if d == 0:
                self._spaces[key] = HomSpace(Mb, Ma)
            elif d == 1:
                self._spaces[key] = ExtSpace(Mb, Ma)
            else:
                self._spaces[key] = None
        return self._spaces[key]

    def block_dim(self, a: int, b: int) -> int:
        s = self.space(a, b)
        return s.dim if s is not None else 0

    @property
    def dimension(self) -> int:
        return sum(self.block_dim(a, b) for a in range(self.size) for b in range(self.size))

    def cartan_matrix(self) -> np.ndarray:
        return np.array([[self.block_dim(a, b) for b in range(self.size)] for a in range(self.size)], dtype=int)

    def basis_element(self, a: int, b: int, k: int):
        s = self.space(a, b)
        return s.basis[k]

    def identity(self, a: int) -> List:
        H = self.space(a, a)
        return H.coordinates(identity_morphism(self.summands[a].module))

    def _coordinates(self, a: int, c: int, value) -> List:
        s = self.space(a, c)
        if isinstance(value, ModuleMorphism):
            return s.coordinates(value)
        return s.coordinates(value.cocycle)

    def compose(self, x, y):
        """x∘y for a Hom/Ext basis element x of block (a, b) and y of block (b, c)."""
        x_ext = isinstance(x, ExtClass)
        y_ext = isinstance(y, ExtClass)
        if x_ext and y_ext:
            return None
        if not x_ext and not y_ext:
            return x.compose(y)
        if x_ext:
            return yoneda_pull(y, x)
        return yoneda(y, x)

    def products(self, a: int, b: int, c: int) -> List[List[List]]:
        """table[i][j] = coordinates in block (a, c) of basis_i(a, b)·basis_j(b, c)."""
        key = (a, b, c)
        if key not in self._products:
            K = self.field
            out_dim = self.block_dim(a, c)
            left, right = self.space(a, b), self.space(b, c)
            table = []
            if left is not None and right is not None:
                for x in left.basis:
                    row = []
                    for y in right.basis:
                        if out_dim == 0 or self.space(a, c) is None:
                            row.append([K.zero] * out_dim)
                            continue
                        value = self.compose(x, y)
                        row.append([K.zero] * out_dim if value is None else self._coordinates(a, c, value))
                    table.append(row)
            self._products[key] = table
        return self._products[key]

    def multiply(self, a: int, b: int, c: int, x: Sequence, y: Sequence) -> List:
        """Product of coordinate vectors x ∈ e_a B e_b and y ∈ e_b B e_c."""
        K = self.field
        out = [K.zero] * self.block_dim(a, c)
        table = self.products(a, b, c)
        for i, xi in enumerate(x):
            if K.is_zero(xi):
                continue
            for j, yj in enumerate(y):
                if K.is_zero(yj):
                    continue
                c_ij = xi * yj
                out = [o + c_ij * t for o, t in zip(out, table[i][j])]
        return out

    def radical(self, a: int, b: int) -> List[List]:
        """Coordinate basis of the radical in block (a, b); summands are indecomposable and distinct."""
        K = self.field
        n = self.block_dim(a, b)
        unit = [[K.one if t == k else K.zero for t in range(n)] for k in range(n)]
        if a != b or n == 0:
            return unit
        values = [character(f) for f in self.space(a, a).basis]
        pivot = next((k for k, v in enumerate(values) if not K.is_zero(v)), None)
        if pivot is None:
            return unit
        out = []
        for k in range(n):
            if k == pivot:
                continue
            c = K.quo(values[k], values[pivot])
            vec = list(unit[k])
            vec[pivot] = -c
            out.append(vec)
        return out

    def check_associativity(self) -> List[str]:
        failures = []
        K = self.field
        r = self.size
        for a, b, c, d in itertools.product(range(r), repeat=4):
            if not (self.block_dim(a, b) and self.block_dim(b, c) and self.block_dim(c, d)):
                continue
            for i in range(self.block_dim(a, b)):
                x = [K.one if t == i else K.zero for t in range(self.block_dim(a, b))]
                for j in range(self.block_dim(b, c)):
                    y = [K.one if t == j else K.zero for t in range(self.block_dim(b, c))]
                    xy = self.multiply(a, b, c, x, y)
                    for k in range(self.block_dim(c, d)):
                        z = [K.one if t == k else K.zero for t in range(self.block_dim(c, d))]
                        left = self.multiply(a, c, d, xy, z)
                        right = self.multiply(a, b, d, x, self.multiply(b, c, d, y, z))
                        if left != right:
                            failures.append(f"(x·y)·z ≠ x·(y·z) on blocks {a},{b},{c},{d}")
        return failures


def end_algebra(summands: Sequence[GradedSummand]) -> GradedEndAlgebra:
    return GradedEndAlgebra(summands)


# -- presentation by quiver and relations -------------------------------------------------------

@dataclass
class QuiverPresentation:
    algebra: BoundQuiverAlgebra
    vertex_summands: Dict[str, str]
    arrow_elements: Dict[str, Tuple[int, int, List]]
    nilpotency: int


def _relation_from_vector(paths: List[Tuple[str, ...]], vec: Sequence, K) -> Relation:
    terms = []
    for p, c in zip(paths, vec):
        if not K.is_zero(c):
            terms.append(RelationTerm(coefficient=linalg.format_scalar(c, K), arrows=p))
    return Relation(terms=tuple(terms))


def present_as_bound_quiver(E: GradedEndAlgebra, name: str = "B") -> QuiverPresentation:
    """Quiver from rad/rad², relations as greedy generators of the kernel degree by degree."""
    K = E.field
    r = E.size
    vertices = [str(a + 1) for a in range(r)]
    # rad² and arrows
    arrows: List[Tuple[str, int, int, List]] = []
    for a in range(r):
        for b in range(r):
            n = E.block_dim(a, b)
            if n == 0:
                continue
            square = []
            for c in range(r):
                for x in E.radical(a, c):
                    for y in E.radical(c, b):
                        square.append(E.multiply(a, c, b, x, y))
            chosen = [list(v) for v in square]
            k = 0
            for vec in E.radical(a, b):
                if linalg.in_span(chosen, vec, n, K):
                    continue
                chosen.append(vec)
                arrows.append((f"x{len(arrows) + 1}", a, b, vec))
                k += 1
            logger.debug("block (%d,%d): dim %d, %d arrows", a, b, n, k)
    # path values by length until everything vanishes
    layers: List[List[Tuple[Tuple[str, ...], int, int, List]]] = [
        [((label,), a, b, vec) for label, a, b, vec in arrows]]
    while True:
        previous = layers[-1]
        nxt = []
        for labels, a, b, vec in previous:
            for label, b2, c, avec in arrows:
                if b2 != b:
                    continue
                nxt.append((labels + (label,), a, c, E.multiply(a, b, c, vec, avec)))
        if all(all(K.is_zero(x) for x in v) for _, _, _, v in nxt):
            layers.append(nxt)
            break
        layers.append(nxt)
        if len(layers) > MAX_PRESENTATION_DEGREE:
            raise InternalInconsistencyError("radical of the endomorphism algebra is not nilpotent")
    nilpotency = max((len(labels) for layer in layers for labels, _, _, v in layer
                      if any(not K.is_zero(x) for x in v)), default=0)
    relations = _minimal_relations(E, layers, arrows)
    quiver = Quiver(vertices=tuple(vertices),
                    arrows=tuple(Arrow(label=label, src=vertices[a], dst=vertices[b]) for label, a, b, _ in arrows))
    B = BoundQuiverAlgebra(quiver, relations, K, name=name)
    if B.dimension != E.dimension:
        raise InternalInconsistencyError(
            f"presentation has dimension {B.dimension}, endomorphism algebra has {E.dimension}")
    return QuiverPresentation(
        algebra=B,
        vertex_summands={v: s.display() for v, s in zip(vertices, E.summands)},
        arrow_elements={label: (a, b, vec) for label, a, b, vec in arrows},
        nilpotency=nilpotency,
    )


def _minimal_relations(E: GradedEndAlgebra, layers, arrows) -> List[Relation]:
    """Kernel of kQ -> B on paths of length 2..L+1, generators picked greedily per degree."""
    K = E.field
    r = E.size
    top = len(layers)
    chosen: Dict[Tuple[int, int], List[Dict[Tuple[str, ...], object]]] = {}
    relations: List[Relation] = []
    arrow_ends = {label: (a, b) for label, a, b, _ in arrows}
    for d in range(2, top + 1):
        for a in range(r):
            for b in range(r):
                paths = []
                values = []
                for layer in layers[1:d]:
                    for labels, s, t, vec in layer:
                        if s == a and t == b:
                            paths.append(labels)
                            values.append(vec)
                if not paths:
                    continue
                paths_order = sorted(range(len(paths)), key=lambda k: (-len(paths[k]), paths[k]))
                paths = [paths[k] for k in paths_order]
                values = [values[k] for k in paths_order]
                n = E.block_dim(a, b)
                evaluation = linalg.from_columns(values, n, K)
                kernel_vectors, _ = linalg.kernel_with_free(evaluation)
                existing = [_as_vector(g, paths, K) for g in _ideal_multiples(chosen, arrow_ends, a, b, d)]
                span = [list(v) for v in existing if any(not K.is_zero(x) for x in v)]
                for vec in kernel_vectors:
                    if linalg.in_span(span, vec, len(paths), K):
                        continue
                    span.append(list(vec))
                    element = {p: c for p, c in zip(paths, vec) if not K.is_zero(c)}
                    chosen.setdefault((a, b), []).append(element)
                    relations.append(_relation_from_vector(paths, vec, K))
    return relations


def _ideal_multiples(chosen, arrow_ends, a: int, b: int, d: int) -> List[Dict]:
    """u·ρ·v for chosen relations ρ with all terms of length ≤ d, as path combinations from a to b."""
    out = []

    def paths_from(v: int, max_len: int) -> List[Tuple[Tuple[str, ...], int]]:
        result = [((), v)]
        frontier = [((), v)]
        for _ in range(max_len):
            new = []
            for p, end in frontier:
                for label, (s, t) in arrow_ends.items():
                    if s == end:
                        new.append((p + (label,), t))
            result.extend(new)
            frontier = new
        return result

    for (s, t), rels in chosen.items():
        for rho in rels:
            longest = max(len(p) for p in rho)
            room = d - longest
            if room < 0:
                continue
            prefixes = [(p, end) for p, end in paths_from(a, room) if end == s]
            suffixes = paths_from(t, room)
            for u, _ in prefixes:
                for v, end in suffixes:
                    if end != b or len(u) + len(v) > room:
                        continue
                    out.append({u + p + v: c for p, c in rho.items()})
    return out


def _as_vector(combination: Dict, paths: List[Tuple[str, ...]], K) -> List:
    index = {p: k for k, p in enumerate(paths)}
    vec = [K.zero] * len(paths)
    for p, c in combination.items():
        if p in index:
            vec[index[p]] += c
    return vec


# -- comparing bound quiver algebras --------------------------------------------------------------

def _arrow_counts(B: BoundQuiverAlgebra) -> np.ndarray:
    n = B.num_vertices
    C = np.zeros((n, n), dtype=int)
    for a in B.arrows.values():
        C[B.vertex_index(a.src), B.vertex_index(a.dst)] += 1
    return C


def _vertex_matchings(A1: np.ndarray, A2: np.ndarray, C1: np.ndarray, C2: np.ndarray):
    n = A1.shape[0]
    perm = [-1] * n
    used = [False] * n

    def extend(i: int):
        if i == n:
            yield list(perm)
            return
        for j in range(n):
            if used[j]:
                continue
            ok = A1[i, i] == A2[j, j] and C1[i, i] == C2[j, j]
            for k in range(i):
                if not ok:
                    break
                ok = (A1[i, k] == A2[j, perm[k]] and A1[k, i] == A2[perm[k], j]
                      and C1[i, k] == C2[j, perm[k]] and C1[k, i] == C2[perm[k], j])
            if ok:
                perm[i] = j
                used[j] = True
                yield from extend(i + 1)
                used[j] = False
        perm[i] = -1

    yield from extend(0)


def _arrow_matchings(B1: BoundQuiverAlgebra, B2: BoundQuiverAlgebra, perm: List[int]):
    groups = {}
    for a in B1.quiver.arrows:
        key = (B1.vertex_index(a.src), B1.vertex_index(a.dst))
        groups.setdefault(key, []).append(a.label)
    options = []
    for (i, j), labels in sorted(groups.items()):
        targets = [a.label for a in B2.quiver.arrows
                   if B2.vertex_index(a.src) == perm[i] and B2.vertex_index(a.dst) == perm[j]]
        options.append([(labels, list(p)) for p in itertools.permutations(targets)])
    for combo in itertools.product(*options):
        mapping = {}
        for labels, targets in combo:
            mapping.update(zip(labels, targets))
        yield mapping


def isomorphism_of_presentations(B1: BoundQuiverAlgebra, B2: BoundQuiverAlgebra) -> Optional[Dict[str, str]]:
    """A vertex and arrow relabeling carrying the ideal of B1 onto that of B2, if one exists.

    Matches dimension, Cartan matrix and arrow counts, then checks that every
    relabeled relation of B1 vanishes in B2; equal dimensions make the ideals equal.
    """
    if B1.dimension != B2.dimension or B1.num_vertices != B2.num_vertices:
        return None
    A1, A2 = _arrow_counts(B1), _arrow_counts(B2)
    C1, C2 = B1.cartan_matrix(), B2.cartan_matrix()
    for perm in _vertex_matchings(A1, A2, C1, C2):
        for arrow_map in _arrow_matchings(B1, B2, perm):
            if all(_relation_vanishes(rel, arrow_map, B2) for rel in B1.relations):
                mapping = {B1.vertices[i]: B2.vertices[j] for i, j in enumerate(perm)}
                mapping.update(arrow_map)
                return mapping
    return None


def _relation_vanishes(rel: Relation, arrow_map: Dict[str, str], B: BoundQuiverAlgebra) -> bool:
    K = B.field
    combination: Dict[Path, object] = {}
    for term in rel.terms:
        p = B.path([arrow_map[x] for x in term.arrows])
        combination[p] = combination.get(p, K.zero) + linalg.scalar(term.coefficient, K)
    return not B.reduce(combination)
