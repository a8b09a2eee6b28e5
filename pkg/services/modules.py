"""Finite-dimensional right modules, morphisms and Hom spaces.

A module stores one dimension per vertex (declaration order) and one matrix
per arrow of shape (dim target x dim source). Morphisms store one block per
vertex. ``g.compose(f)`` is g∘f: apply f first.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from services import linalg
from services.errors import AlgebraMismatchError, InconsistentRepresentationError, InputError
from services.path_algebra import BoundQuiverAlgebra, Path

logger = logging.getLogger(__name__)

ISO_ATTEMPTS = 8
EXHAUSTIVE_LIMIT = 1024


@dataclass(frozen=True, eq=False)
class FDModule:
    algebra: BoundQuiverAlgebra
    dims: Tuple[int, ...]
    maps: Mapping[str, DomainMatrix]
    name: str = ""

    @property
    def field(self):
        return self.algebra.field

    def dim(self, v: str) -> int:
        return self.dims[self.algebra.vertex_index(v)]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def arrow_map(self, label: str) -> DomainMatrix:
        return self.maps[label]

    def path_matrix(self, path: Path) -> DomainMatrix:
        n = self.dim(path.source)
        out = linalg.identity(n, self.field)
        for label in path.arrows:
            out = linalg.matmul(self.maps[label], out)
        return out

    def combination_matrix(self, combination: Dict[Path, object]) -> Optional[DomainMatrix]:
        out = None
        for p, c in combination.items():
            term = linalg.scale(self.path_matrix(p), c)
            out = term if out is None else linalg.add(out, term)
        return out

    def label(self) -> str:
        return self.name or "(" + ",".join(str(d) for d in self.dims) + ")"

    @cached_property
    def fingerprint(self) -> Tuple:
        entries = tuple(
            (label, tuple(tuple(str(self.field.to_sympy(x)) for x in row)
                          for row in linalg.to_rows(self.maps[label])))
            for label in sorted(self.maps))
        return (id(self.algebra), self.dims, entries)

    def __hash__(self):
        return hash(self.fingerprint)

    def __eq__(self, other):
        return isinstance(other, FDModule) and self.fingerprint == other.fingerprint

    def __repr__(self):
        return f"FDModule({self.label()})"

    def renamed(self, name: str) -> "FDModule":
        return FDModule(self.algebra, self.dims, self.maps, name)


@dataclass(frozen=True, eq=False)
class ModuleMorphism:
    source: FDModule
    target: FDModule
    blocks: Tuple[DomainMatrix, ...]

    @property
    def algebra(self) -> BoundQuiverAlgebra:
        return self.source.algebra

    def block(self, v: str) -> DomainMatrix:
        return self.blocks[self.algebra.vertex_index(v)]

    def compose(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """self∘other, other applied first."""
        if other.target.dims != self.source.dims:
            raise InputError("morphisms are not composable")
        blocks = tuple(linalg.matmul(a, b) for a, b in zip(self.blocks, other.blocks))
        return ModuleMorphism(other.source, self.target, blocks)

    def __add__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target,
                              tuple(linalg.add(a, b) for a, b in zip(self.blocks, other.blocks)))

    def scaled(self, c) -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target, tuple(linalg.scale(b, c) for b in self.blocks))

    def is_zero(self) -> bool:
        return all(linalg.is_zero(b) for b in self.blocks)

    def is_injective(self) -> bool:
        return all(linalg.rank(b) == b.shape[1] for b in self.blocks)

    def is_surjective(self) -> bool:
        return all(linalg.rank(b) == b.shape[0] for b in self.blocks)

    def is_isomorphism(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def vector(self) -> List:
        out = []
        for b in self.blocks:
            for row in linalg.to_rows(b):
                out.extend(row)
        return out

    def check(self):
        for a in self.algebra.arrows.values():
            i = self.algebra.vertex_index(a.src)
            j = self.algebra.vertex_index(a.dst)
            left = linalg.matmul(self.target.maps[a.label], self.blocks[i])
            right = linalg.matmul(self.blocks[j], self.source.maps[a.label])
            if not linalg.equal(left, right):
                raise InconsistentRepresentationError(f"morphism does not commute with arrow {a.label}")
        return self

    def equals(self, other: "ModuleMorphism") -> bool:
        return all(linalg.equal(a, b) for a, b in zip(self.blocks, other.blocks))


# -- constructors --------------------------------------------------------------------------

def make_module(algebra: BoundQuiverAlgebra, dims: Sequence[int], maps: Mapping[str, DomainMatrix],
                name: str = "", check: bool = True) -> FDModule:
    dims = tuple(int(d) for d in dims)
    if len(dims) != algebra.num_vertices:
        raise InconsistentRepresentationError(
            f"dimension vector has {len(dims)} entries, algebra {algebra.name} has {algebra.num_vertices} vertices")
    if any(d < 0 for d in dims):
        raise InconsistentRepresentationError("negative dimension")
    K = algebra.field
    full = {}
    for label, a in algebra.arrows.items():
        rows, cols = dims[algebra.vertex_index(a.dst)], dims[algebra.vertex_index(a.src)]
        m = maps.get(label)
        if m is None:
            m = linalg.zeros(rows, cols, K)
        if m.shape != (rows, cols):
            raise InconsistentRepresentationError(
                f"map {label}: expected shape {rows}x{cols} (target x source), got {m.shape[0]}x{m.shape[1]}")
        full[label] = m
    unknown = set(maps) - set(algebra.arrows)
    if unknown:
        raise InconsistentRepresentationError(f"maps given for unknown arrows: {sorted(unknown)}")
    M = FDModule(algebra, dims, full, name)
    if check:
        for rel, text in zip(algebra.relation_combinations(), algebra.relation_texts()):
            value = M.combination_matrix(rel)
            if value is not None and not linalg.is_zero(value):
                raise InconsistentRepresentationError(f"module {M.label()} violates relation {text}")
    return M


def zero_module(algebra: BoundQuiverAlgebra) -> FDModule:
    return make_module(algebra, [0] * algebra.num_vertices, {}, "0", check=False)


@lru_cache(maxsize=None)
def simple(algebra: BoundQuiverAlgebra, v: str) -> FDModule:
    dims = [0] * algebra.num_vertices
    dims[algebra.vertex_index(v)] = 1
    return make_module(algebra, dims, {}, f"S{v}", check=False)


@lru_cache(maxsize=None)
def projective(algebra: BoundQuiverAlgebra, v: str) -> FDModule:
    """e_v A: vertex w spanned by basis paths v -> w; arrows act by right multiplication."""
    K = algebra.field
    dims = [len(algebra.basis(v, w)) for w in algebra.vertices]
    maps = {}
    for label, a in algebra.arrows.items():
        src_basis = algebra.basis(v, a.src)
        cols = [algebra.coordinates(v, a.dst, algebra.multiply_paths(p, algebra.arrow_path(label)))
                for p in src_basis]
        maps[label] = linalg.from_columns(cols, len(algebra.basis(v, a.dst)), K)
    return make_module(algebra, dims, maps, f"P{v}", check=False)


@lru_cache(maxsize=None)
def injective(algebra: BoundQuiverAlgebra, v: str) -> FDModule:
    """D(A e_v): vertex w spanned by duals of basis paths w -> v; (phi·a)(q) = phi(a·q)."""
    K = algebra.field
    dims = [len(algebra.basis(w, v)) for w in algebra.vertices]
    maps = {}
    for label, a in algebra.arrows.items():
        src_basis = algebra.basis(a.src, v)
        dst_basis = algebra.basis(a.dst, v)
        rows = []
        for q in dst_basis:
            coords = algebra.coordinates(a.src, v, algebra.multiply_paths(algebra.arrow_path(label), q))
            rows.append(coords)
        maps[label] = DomainMatrix([list(r) for r in rows], (len(dst_basis), len(src_basis)), K)
    return make_module(algebra, dims, maps, f"I{v}", check=False)


def direct_sum(modules: Sequence[FDModule], name: str = "") -> Tuple[FDModule, List[ModuleMorphism], List[ModuleMorphism]]:
    """The sum with its canonical inclusions and projections."""
    if not modules:
        raise InputError("direct sum of an empty list")
    algebra = modules[0].algebra
    K = algebra.field
    for M in modules:
        if M.algebra is not algebra:
            raise AlgebraMismatchError("direct sum over different algebras")
    dims = [sum(M.dims[i] for M in modules) for i in range(algebra.num_vertices)]
    maps = {label: linalg.block_diagonal([M.maps[label] for M in modules], K) for label in algebra.arrows}
    S = FDModule(algebra, tuple(dims), maps, name or " + ".join(M.label() for M in modules))
    inclusions, projections = [], []
    offsets = [0] * algebra.num_vertices
    for M in modules:
        inc, proj = [], []
        for i in range(algebra.num_vertices):
            d, total, off = M.dims[i], dims[i], offsets[i]
            block = [[K.one if r == off + c else K.zero for c in range(d)] for r in range(total)]
            inc.append(DomainMatrix(block, (total, d), K))
            proj.append(linalg.transpose(inc[-1]))
            offsets[i] += d
        inclusions.append(ModuleMorphism(M, S, tuple(inc)))
        projections.append(ModuleMorphism(S, M, tuple(proj)))
    return S, inclusions, projections


def identity_morphism(M: FDModule) -> ModuleMorphism:
    return ModuleMorphism(M, M, tuple(linalg.identity(d, M.field) for d in M.dims))


def zero_morphism(M: FDModule, N: FDModule) -> ModuleMorphism:
    return ModuleMorphism(M, N, tuple(linalg.zeros(n, m, M.field) for m, n in zip(M.dims, N.dims)))


def morphism_into_sum(parts: Sequence[ModuleMorphism], target: FDModule) -> ModuleMorphism:
    """(f_1, ..., f_k): M -> N_1 + ... + N_k stacked vertically."""
    K = target.field
    blocks = []
    for i, d in enumerate(parts[0].source.dims):
        blocks.append(linalg.vstack([f.blocks[i] for f in parts], d, K))
    return ModuleMorphism(parts[0].source, target, tuple(blocks))


def morphism_from_sum(parts: Sequence[ModuleMorphism], source: FDModule) -> ModuleMorphism:
    """[f_1 ... f_k]: M_1 + ... + M_k -> N side by side."""
    K = source.field
    blocks = []
    for i, d in enumerate(parts[0].target.dims):
        blocks.append(linalg.hstack([f.blocks[i] for f in parts], d, K))
    return ModuleMorphism(source, parts[0].target, tuple(blocks))


def morphism_from_generators(vertices: Sequence[str], target: FDModule, images: Sequence[List],
                             source: Optional[FDModule] = None) -> ModuleMorphism:
    """The map P_{v_1} + ... + P_{v_k} -> N sending e_{v_k} to images[k] in N_{v_k}."""
    algebra = target.algebra
    K = algebra.field
    if source is None:
        source = direct_sum([projective(algebra, v) for v in vertices])[0] if vertices else zero_module(algebra)
    blocks = []
    for w in algebra.vertices:
        cols = []
        for v, img in zip(vertices, images):
            for p in algebra.basis(v, w):
                cols.append(linalg.columns(linalg.matmul(target.path_matrix(p),
                                                         linalg.from_columns([img], target.dim(v), K)))[0])
        blocks.append(linalg.from_columns(cols, target.dim(w), K))
    return ModuleMorphism(source, target, tuple(blocks))


def regular_module(algebra: BoundQuiverAlgebra) -> FDModule:
    return direct_sum([projective(algebra, v) for v in algebra.vertices], name=algebra.name)[0]


def generic_module(algebra: BoundQuiverAlgebra, dim_vector: Sequence[int], name: str = "") -> FDModule:
    """A representation with random maps; all-ones maps when the vector is thin."""
    if not algebra.is_hereditary:
        raise InputError("modules by dimension vector are only defined for hereditary algebras")
    K = algebra.field
    dims = tuple(int(d) for d in dim_vector)
    rng = linalg.rng_for("generic", dims)
    thin = all(d in (0, 1) for d in dims)
    maps = {}
    for label, a in algebra.arrows.items():
        rows, cols = dims[algebra.vertex_index(a.dst)], dims[algebra.vertex_index(a.src)]
        if thin:
            maps[label] = DomainMatrix([[K.one] * cols for _ in range(rows)], (rows, cols), K)
        else:
            maps[label] = DomainMatrix([[linalg.random_scalar(rng, K, 9) for _ in range(cols)] for _ in range(rows)],
                                       (rows, cols), K)
    return make_module(algebra, dims, maps, name, check=False)


# -- sub- and quotient modules -------------------------------------------------------------

def _restricted_maps(M: FDModule, bases: Sequence[DomainMatrix]) -> Dict[str, DomainMatrix]:
    algebra = M.algebra
    lefts = [linalg.left_inverse(B) for B in bases]
    maps = {}
    for label, a in algebra.arrows.items():
        i, j = algebra.vertex_index(a.src), algebra.vertex_index(a.dst)
        moved = linalg.matmul(M.maps[label], bases[i])
        coords = linalg.matmul(lefts[j], moved)
        if not linalg.equal(linalg.matmul(bases[j], coords), moved):
            raise InconsistentRepresentationError(f"subspace is not closed under arrow {label}")
        maps[label] = coords
    return maps


def submodule(M: FDModule, bases: Sequence[DomainMatrix], name: str = "") -> Tuple[FDModule, ModuleMorphism]:
    """Submodule spanned per vertex by the (independent) columns of bases[i], with its inclusion."""
    bases = [linalg.image(B) if B.shape[1] else B for B in bases]
    maps = _restricted_maps(M, bases)
    U = FDModule(M.algebra, tuple(B.shape[1] for B in bases), maps, name)
    return U, ModuleMorphism(U, M, tuple(bases))


def quotient(M: FDModule, bases: Sequence[DomainMatrix], name: str = "") -> Tuple[FDModule, ModuleMorphism]:
    """M / U for the submodule spanned by bases, with the projection."""
    algebra = M.algebra
    K = M.field
    projections = [linalg.cokernel_projection(B) if B.shape[1] else linalg.identity(B.shape[0], K)
                   for B in bases]
    sections = [linalg.transpose(linalg.left_inverse(linalg.transpose(Q))) for Q in projections]
    maps = {}
    for label, a in algebra.arrows.items():
        i, j = algebra.vertex_index(a.src), algebra.vertex_index(a.dst)
        maps[label] = linalg.matmul(projections[j], linalg.matmul(M.maps[label], sections[i]))
    Q = FDModule(algebra, tuple(P.shape[0] for P in projections), maps, name)
    return Q, ModuleMorphism(M, Q, tuple(projections))


def kernel(f: ModuleMorphism, name: str = "") -> Tuple[FDModule, ModuleMorphism]:
    return submodule(f.source, [linalg.kernel(b) for b in f.blocks], name)


def image(f: ModuleMorphism, name: str = "") -> Tuple[FDModule, ModuleMorphism]:
    return submodule(f.target, [linalg.image(b) for b in f.blocks], name)


def cokernel(f: ModuleMorphism, name: str = "") -> Tuple[FDModule, ModuleMorphism]:
    return quotient(f.target, [linalg.image(b) for b in f.blocks], name)


def span_of_images(morphisms: Sequence[ModuleMorphism], target: FDModule) -> List[DomainMatrix]:
    """Per-vertex basis of the sum of the images."""
    K = target.field
    out = []
    for i, d in enumerate(target.dims):
        mats = [f.blocks[i] for f in morphisms if f.blocks[i].shape[1]]
        if not mats:
            out.append(linalg.zeros(d, 0, K))
            continue
        out.append(linalg.image(linalg.hstack(mats, d, K)))
    return out


# -- Hom spaces ----------------------------------------------------------------------------

class HomSpace:
    """Solutions of the commutation system N(a)X_i = X_j M(a), one unknown block per vertex."""

    def __init__(self, source: FDModule, target: FDModule):
        if source.algebra is not target.algebra:
            raise AlgebraMismatchError(f"Hom({source.label()}, {target.label()}) across different algebras")
        self.source = source
        self.target = target
        algebra = source.algebra
        K = algebra.field
        self.offsets = []
        total = 0
        for m, n in zip(source.dims, target.dims):
            self.offsets.append(total)
            total += m * n
        self.nvars = total
        rows = []
        for label, a in algebra.arrows.items():
            i, j = algebra.vertex_index(a.src), algebra.vertex_index(a.dst)
            m_i, n_i = source.dims[i], target.dims[i]
            m_j, n_j = source.dims[j], target.dims[j]
            if m_i == 0 or n_j == 0:
                continue
            Na = linalg.to_rows(target.maps[label])
            Ma = linalg.to_rows(source.maps[label])
            for r in range(n_j):
                for c in range(m_i):
                    row = [K.zero] * total
                    for k in range(n_i):
                        row[self.offsets[i] + k * m_i + c] += Na[r][k]
                    for k in range(m_j):
                        row[self.offsets[j] + r * m_j + k] -= Ma[k][c]
                    rows.append(row)
        if rows:
            self._vectors, self.free = linalg.kernel_with_free(DomainMatrix(rows, (len(rows), total), K))
        else:
            self._vectors = [[K.one if t == s else K.zero for t in range(total)] for s in range(total)]
            self.free = list(range(total))
        self._basis: Optional[List[ModuleMorphism]] = None

    @property
    def dim(self) -> int:
        return len(self._vectors)

    def _morphism(self, vec: Sequence) -> ModuleMorphism:
        K = self.source.field
        blocks = []
        for off, m, n in zip(self.offsets, self.source.dims, self.target.dims):
            rows = [list(vec[off + r * m: off + (r + 1) * m]) for r in range(n)]
            blocks.append(DomainMatrix(rows, (n, m), K))
        return ModuleMorphism(self.source, self.target, tuple(blocks))

    @property
    def basis(self) -> List[ModuleMorphism]:
        if self._basis is None:
            self._basis = [self._morphism(v) for v in self._vectors]
        return self._basis

    def element(self, coords: Sequence) -> ModuleMorphism:
        K = self.source.field
        vec = [K.zero] * self.nvars
        for c, v in zip(coords, self._vectors):
            if not K.is_zero(c):
                vec = [x + c * y for x, y in zip(vec, v)]
        return self._morphism(vec)

    def coordinates(self, f: ModuleMorphism) -> List:
        """Coordinates of a morphism already known to lie in this space."""
        vec = f.vector()
        return [vec[j] for j in self.free]

    def random_element(self, rng) -> ModuleMorphism:
        K = self.source.field
        return self.element([linalg.random_scalar(rng, K) for _ in range(self.dim)])

    def is_enumerable(self, limit: int = EXHAUSTIVE_LIMIT) -> bool:
        """True over GF(p) when the space has at most `limit` elements."""
        K = self.source.field
        return not K.is_QQ and K.characteristic() ** self.dim <= limit

    def all_elements(self) -> Iterator[ModuleMorphism]:
        K = self.source.field
        scalars = [K.convert(c) for c in range(K.characteristic())]
        for coords in itertools.product(scalars, repeat=self.dim):
            yield self.element(coords)


def hom_space(M: FDModule, N: FDModule) -> HomSpace:
    return HomSpace(M, N)


def hom_dim(M: FDModule, N: FDModule) -> int:
    return HomSpace(M, N).dim


def basis_isomorphism(M: FDModule, N: FDModule, H: Optional[HomSpace] = None) -> Optional[ModuleMorphism]:
    """An invertible basis element of Hom(M, N).

    Complete when M is indecomposable: the non-invertible maps M -> N then form a subspace.
    """
    if M.dims != N.dims:
        return None
    H = H or HomSpace(M, N)
    return next((f for f in H.basis if f.is_isomorphism()), None)


def is_isomorphic(M: FDModule, N: FDModule) -> Tuple[bool, Optional[ModuleMorphism]]:
    """Decide M ≅ N; returns the witness when they are.

    A small Hom space over GF(p) is searched exhaustively. Otherwise the basis and a few
    random elements are tried before the indecomposable summands of M and N are paired.
    """
    if M.dims != N.dims:
        return False, None
    if M.total_dim == 0:
        return True, identity_morphism(M) if M is N else zero_morphism(M, N)
    H = HomSpace(M, N)
    if H.dim == 0:
        return False, None
    f = basis_isomorphism(M, N, H)
    if f is not None:
        return True, f
    if H.is_enumerable():
        f = next((g for g in H.all_elements() if g.is_isomorphism()), None)
        return f is not None, f
    rng = linalg.rng_for("iso", M.dims, H.dim)
    for _ in range(ISO_ATTEMPTS):
        f = H.random_element(rng)
        if f.is_isomorphism():
            return True, f
    from services.decomposition import isomorphism_by_summands
    return isomorphism_by_summands(M, N)


# -- traces, generation, cogeneration ------------------------------------------------------

def trace(generators: Sequence[FDModule], M: FDModule) -> Tuple[FDModule, ModuleMorphism]:
    """Sum of the images of all maps G -> M, G among the generators."""
    maps = []
    for G in generators:
        maps.extend(HomSpace(G, M).basis)
    return submodule(M, span_of_images(maps, M), name=f"tr({M.label()})")


def gen_membership(M: FDModule, generators: Sequence[FDModule]) -> bool:
    T, _ = trace(generators, M)
    return T.dims == M.dims


def reject(M: FDModule, generators: Sequence[FDModule]) -> Tuple[FDModule, ModuleMorphism]:
    """M modulo the trace of the generators."""
    _, inc = trace(generators, M)
    return quotient(M, list(inc.blocks), name=f"{M.label()}/tr")


def cogen_membership(M: FDModule, cogenerators: Sequence[FDModule]) -> bool:
    """M embeds in a finite sum of cogenerators iff the kernels of all maps to them meet in zero."""
    K = M.field
    maps = []
    for G in cogenerators:
        maps.extend(HomSpace(M, G).basis)
    for i, d in enumerate(M.dims):
        if d == 0:
            continue
        mats = [f.blocks[i] for f in maps if f.blocks[i].shape[0]]
        if not mats:
            return False
        if linalg.rank(linalg.vstack(mats, d, K)) < d:
            return False
    return True


# -- duality -------------------------------------------------------------------------------

def dual(M: FDModule) -> FDModule:
    """D M = Hom_k(M, k) as a module over the opposite algebra; arrow maps transposed."""
    op = M.algebra.opposite()
    maps = {label: linalg.transpose(m) for label, m in M.maps.items()}
    name = f"D{M.name}" if M.name else ""
    return FDModule(op, M.dims, maps, name)


def dual_morphism(f: ModuleMorphism) -> ModuleMorphism:
    return ModuleMorphism(dual(f.target), dual(f.source), tuple(linalg.transpose(b) for b in f.blocks))


def factor_through_quotient(q: ModuleMorphism, g: ModuleMorphism) -> ModuleMorphism:
    """The map h on the quotient with h∘q = g, for g vanishing on ker q."""
    blocks = []
    for qb, gb in zip(q.blocks, g.blocks):
        section = linalg.transpose(linalg.left_inverse(linalg.transpose(qb)))
        blocks.append(linalg.matmul(gb, section))
    return ModuleMorphism(q.target, g.target, tuple(blocks))


def factor_through_mono(i: ModuleMorphism, g: ModuleMorphism) -> ModuleMorphism:
    """The map h with i∘h = g, for g landing in the image of the monomorphism i."""
    blocks = []
    for ib, gb in zip(i.blocks, g.blocks):
        h = linalg.matmul(linalg.left_inverse(ib), gb)
        if not linalg.equal(linalg.matmul(ib, h), gb):
            raise InputError("map does not factor through the monomorphism")
        blocks.append(h)
    return ModuleMorphism(g.source, i.source, tuple(blocks))


def pushout(f: ModuleMorphism, g: ModuleMorphism, name: str = "") -> Tuple[FDModule, ModuleMorphism, ModuleMorphism]:
    """Pushout of N <-f- K -g-> P: returns E with the maps N -> E and P -> E."""
    S, (inc_n, inc_p), _ = direct_sum([f.target, g.target])
    glue = morphism_into_sum([f, g.scaled(-f.source.field.one)], S)
    E, q = cokernel(glue, name)
    return E, q.compose(inc_n), q.compose(inc_p)


def left_multiplication(algebra: BoundQuiverAlgebra, r: Dict[Path, object], i: str, j: str) -> ModuleMorphism:
    """P_j -> P_i, t ↦ r·t, for r ∈ e_i A e_j."""
    K = algebra.field
    Pi, Pj = projective(algebra, i), projective(algebra, j)
    blocks = []
    for w in algebra.vertices:
        cols = [algebra.coordinates(i, w, algebra.multiply(r, {t: K.one})) for t in algebra.basis(j, w)]
        blocks.append(linalg.from_columns(cols, len(algebra.basis(i, w)), K))
    return ModuleMorphism(Pj, Pi, tuple(blocks))
