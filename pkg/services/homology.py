"""Projective presentations, Ext¹ with explicit cocycles, the Auslander-Reiten translate and homological dimensions.

An extension class of Ext¹(M, N) is represented by a cocycle K -> N on the
syzygy K = ker(P0 -> M) of the minimal projective cover; two cocycles agree in
Ext¹ when they differ by a map restricted from P0.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.matrices import DomainMatrix

from services import linalg
from services.errors import AlgebraMismatchError, ComputationLimitError, InputError, InternalInconsistencyError
from services.modules import (FDModule, HomSpace, ModuleMorphism, cokernel, direct_sum, dual,
                              factor_through_mono, factor_through_quotient, identity_morphism, injective,
                              kernel, morphism_from_generators, morphism_from_sum, morphism_into_sum,
                              projective, pushout, simple, zero_module, zero_morphism)
from services.path_algebra import BoundQuiverAlgebra

logger = logging.getLogger(__name__)


class ProjectiveCover(NamedTuple):
    vertices: Tuple[str, ...]
    module: FDModule
    epi: ModuleMorphism
    images: Tuple[Tuple, ...]


def top_generators(M: FDModule) -> List[Tuple[str, List]]:
    """Vectors completing rad M to M at every vertex, as (vertex, vector) pairs."""
    algebra = M.algebra
    K = M.field
    out = []
    for v in algebra.vertices:
        d = M.dim(v)
        if d == 0:
            continue
        incoming = [M.maps[a.label] for a in algebra.quiver.arrows_into(v) if M.maps[a.label].shape[1]]
        rad = linalg.image(linalg.hstack(incoming, d, K)) if incoming else linalg.zeros(d, 0, K)
        for k in linalg.extend_to_basis(rad):
            out.append((v, [K.one if t == k else K.zero for t in range(d)]))
    return out


def _cover_from_generators(M: FDModule, gens: Sequence[Tuple[str, List]]) -> ProjectiveCover:
    algebra = M.algebra
    vertices = tuple(v for v, _ in gens)
    images = tuple(tuple(x) for _, x in gens)
    if vertices:
        P = direct_sum([projective(algebra, v) for v in vertices],
                       name="+".join(f"P{v}" for v in vertices))[0]
    else:
        P = zero_module(algebra)
    eps = morphism_from_generators(vertices, M, [list(x) for x in images], source=P)
    return ProjectiveCover(vertices, P, eps, images)


@lru_cache(maxsize=4096)
def projective_cover(M: FDModule) -> ProjectiveCover:
    return _cover_from_generators(M, top_generators(M))


@dataclass(frozen=True)
class Presentation:
    """P1 -d-> P0 -epi-> M -> 0 with the syzygy K = ker(epi) and its inclusion into P0."""

    module: FDModule
    cover: ProjectiveCover
    syzygy: FDModule
    inclusion: ModuleMorphism
    syzygy_cover: ProjectiveCover

    @property
    def d(self) -> ModuleMorphism:
        return self.inclusion.compose(self.syzygy_cover.epi)


def presentation(M: FDModule, extra_vertices: Sequence[str] = ()) -> Presentation:
    """Minimal presentation; extra_vertices add free summands mapping to zero (non-minimal)."""
    if extra_vertices:
        K = M.field
        gens = top_generators(M) + [(v, [K.zero] * M.dim(v)) for v in extra_vertices]
        cover = _cover_from_generators(M, gens)
    else:
        cover = projective_cover(M)
    syz, inc = kernel(cover.epi, name=f"Ω{M.label()}")
    return Presentation(M, cover, syz, inc, projective_cover(syz))


_minimal_presentation = lru_cache(maxsize=4096)(presentation)


def syzygy(M: FDModule) -> FDModule:
    return _minimal_presentation(M).syzygy


def is_projective(M: FDModule) -> bool:
    return syzygy(M).total_dim == 0


def is_injective(M: FDModule) -> bool:
    return is_projective(dual(M))


# -- Ext¹ ----------------------------------------------------------------------------------

class ExtSpace:
    """Ext¹(M, N) as Hom(K, N) modulo the maps restricted from P0."""

    def __init__(self, M: FDModule, N: FDModule, pres: Optional[Presentation] = None):
        if M.algebra is not N.algebra:
            raise AlgebraMismatchError(f"Ext¹({M.label()}, {N.label()}) across different algebras")
        self.source = M
        self.target = N
        self.presentation = pres or _minimal_presentation(M)
        self.cocycles = HomSpace(self.presentation.syzygy, N)
        boundaries = [self.cocycles.coordinates(g.compose(self.presentation.inclusion))
                      for g in HomSpace(self.presentation.cover.module, N).basis]
        self.reducer = linalg.Reducer(boundaries, self.cocycles.dim, M.field)

    @property
    def dim(self) -> int:
        return self.reducer.quotient_dim

    def coordinates(self, cocycle: ModuleMorphism) -> List:
        return self.reducer.coordinates(self.cocycles.coordinates(cocycle))

    def element(self, coords: Sequence) -> "ExtClass":
        K = self.source.field
        full = [K.zero] * self.cocycles.dim
        for j, c in zip(self.reducer.free, coords):
            full[j] = c
        return ExtClass(self, self.cocycles.element(full))

    @property
    def basis(self) -> List["ExtClass"]:
        K = self.source.field
        return [self.element([K.one if t == k else K.zero for t in range(self.dim)]) for k in range(self.dim)]

    def zero(self) -> "ExtClass":
        return self.element([self.source.field.zero] * self.dim)

    def random_element(self, rng) -> "ExtClass":
        K = self.source.field
        return self.element([linalg.random_scalar(rng, K) for _ in range(self.dim)])


@dataclass(frozen=True, eq=False)
class ExtClass:
    space: ExtSpace
    cocycle: ModuleMorphism

    @property
    def coordinates(self) -> List:
        return self.space.coordinates(self.cocycle)

    def is_zero(self) -> bool:
        K = self.space.source.field
        return all(K.is_zero(c) for c in self.coordinates)

    def __add__(self, other: "ExtClass") -> "ExtClass":
        return ExtClass(self.space, self.cocycle + other.cocycle)

    def scaled(self, c) -> "ExtClass":
        return ExtClass(self.space, self.cocycle.scaled(c))

    def equals(self, other: "ExtClass") -> bool:
        return self.coordinates == other.coordinates


def ext1(M: FDModule, N: FDModule) -> ExtSpace:
    return ExtSpace(M, N)


def ext_dim(M: FDModule, N: FDModule, degree: int = 1) -> int:
    """dim Ext^degree(M, N); degree 0 is Hom, higher degrees go through syzygies."""
    if degree < 0:
        return 0
    if degree == 0:
        return HomSpace(M, N).dim
    X = M
    for _ in range(degree - 1):
        X = syzygy(X)
        if X.total_dim == 0:
            return 0
    return ExtSpace(X, N).dim


def yoneda(e: ExtClass, f: ModuleMorphism) -> ExtClass:
    """Push-forward of e ∈ Ext¹(M, N) along f: N -> N'."""
    if f.source.dims != e.space.target.dims:
        raise InputError("push-forward: map does not start at the extension's end term")
    space = ExtSpace(e.space.source, f.target, e.space.presentation)
    return ExtClass(space, f.compose(e.cocycle))


def lift_to_covers(h: ModuleMorphism, source: Presentation, target: Presentation) -> ModuleMorphism:
    """y0: P0' -> P0 with epi∘y0 = h∘epi'."""
    eps = target.cover.epi
    images = []
    for v, g in zip(source.cover.vertices, source.cover.images):
        i = h.algebra.vertex_index(v)
        wanted = linalg.columns(linalg.matmul(h.blocks[i], linalg.from_columns([list(g)], h.source.dims[i],
                                                                             h.source.field)))[0]
        sol = linalg.solve_linear(eps.blocks[i], wanted)
        if sol is None:
            raise InternalInconsistencyError("projective cover is not surjective")
        images.append(sol.particular)
    return morphism_from_generators(source.cover.vertices, target.cover.module, images, source=source.cover.module)


def lift_to_syzygies(h: ModuleMorphism, source: Presentation, target: Presentation) -> ModuleMorphism:
    """y1: K' -> K induced by the lift of h to the covers."""
    y0 = lift_to_covers(h, source, target)
    return factor_through_mono(target.inclusion, y0.compose(source.inclusion))


def yoneda_pull(h: ModuleMorphism, e: ExtClass) -> ExtClass:
    """Pull-back of e ∈ Ext¹(M, N) along h: M' -> M."""
    if h.target.dims != e.space.source.dims:
        raise InputError("pull-back: map does not end at the extension's start term")
    space = ExtSpace(h.source, e.space.target)
    y1 = lift_to_syzygies(h, space.presentation, e.space.presentation)
    return ExtClass(space, e.cocycle.compose(y1))


def extension_module(e: ExtClass, name: str = "") -> Tuple[FDModule, ModuleMorphism, ModuleMorphism]:
    """Middle term of 0 -> N -> E -> M -> 0 representing e, with both maps."""
    pres = e.space.presentation
    N, M = e.space.target, e.space.source
    S, (inc_n, _), _ = direct_sum([N, pres.cover.module])
    glue = morphism_into_sum([e.cocycle, pres.inclusion.scaled(-M.field.one)], S)
    E, q = cokernel(glue, name)
    # E -> M is induced by 0 on N and the cover on P0
    to_m = morphism_from_sum([zero_morphism(N, M), pres.cover.epi], S)
    return E, q.compose(inc_n), factor_through_quotient(q, to_m)


def universal_extension(S: FDModule, M: FDModule, name: str = "") -> Tuple[FDModule, ModuleMorphism]:
    """0 -> M -> E -> S^e -> 0 whose connecting map Hom(S, S^e) -> Ext¹(S, M) is onto; returns E and M -> E."""
    space = ExtSpace(S, M)
    if space.dim == 0:
        return M, identity_morphism(M)
    pres = space.presentation
    e = space.dim
    syz_sum, _, _ = direct_sum([pres.syzygy] * e)
    cov_sum, cov_inc, _ = direct_sum([pres.cover.module] * e)
    cocycle = morphism_from_sum([c.cocycle for c in space.basis], syz_sum)
    iota = morphism_from_sum([inc.compose(pres.inclusion) for inc in cov_inc], syz_sum)
    E, m_to_e, _ = pushout(cocycle, iota, name)
    logger.debug("universal extension of %s by %d copies of %s: dim %d", M.label(), e, S.label(), E.total_dim)
    return E, m_to_e


# -- Nakayama functor and the AR translate ---------------------------------------------------

def _generator_element(d: ModuleMorphism, source: ProjectiveCover, target: ProjectiveCover, l: int, k: int):
    """The element r ∈ e_{v_k} A e_{w_l} with d restricted to P_{w_l} -> P_{v_k} equal to t ↦ r·t."""
    algebra = d.algebra
    w = source.vertices[l]
    v = target.vertices[k]
    iw = algebra.vertex_index(w)
    col = sum(len(algebra.basis(u, w)) for u in source.vertices[:l])
    # the trivial path is the first basis element at its own vertex
    column = linalg.columns(d.blocks[iw])[col]
    row = sum(len(algebra.basis(u, w)) for u in target.vertices[:k])
    coords = column[row:row + len(algebra.basis(v, w))]
    return algebra.element(v, w, coords)


def nakayama_block(algebra: BoundQuiverAlgebra, r, i: str, j: str) -> List[DomainMatrix]:
    """ν applied to left multiplication by r ∈ e_i A e_j, as per-vertex blocks I_j -> I_i."""
    K = algebra.field
    blocks = []
    for u in algebra.vertices:
        ps = algebra.basis(u, i)
        qs = algebra.basis(u, j)
        rows = []
        for p in ps:
            coords = algebra.coordinates(u, j, algebra.multiply({p: K.one}, r))
            rows.append(coords)
        blocks.append(DomainMatrix([list(x) for x in rows], (len(ps), len(qs)), K))
    return blocks


def nakayama(d: ModuleMorphism, source: ProjectiveCover, target: ProjectiveCover) -> ModuleMorphism:
    """ν(d): ν(P1) -> ν(P0) for a map between the given sums of indecomposable projectives."""
    algebra = d.algebra
    K = algebra.field
    n_src = [injective(algebra, w) for w in source.vertices]
    n_tgt = [injective(algebra, v) for v in target.vertices]
    I1 = direct_sum(n_src)[0] if n_src else zero_module(algebra)
    I0 = direct_sum(n_tgt)[0] if n_tgt else zero_module(algebra)
    pieces = {}
    for k, v in enumerate(target.vertices):
        for l, w in enumerate(source.vertices):
            pieces[k, l] = nakayama_block(algebra, _generator_element(d, source, target, l, k), v, w)
    blocks = []
    for iu, u in enumerate(algebra.vertices):
        grid = []
        for k, v in enumerate(target.vertices):
            row_blocks = [pieces[k, l][iu] for l in range(len(source.vertices))]
            grid.append(linalg.hstack(row_blocks, len(algebra.basis(u, v)), K) if row_blocks
                        else linalg.zeros(len(algebra.basis(u, v)), 0, K))
        blocks.append(linalg.vstack(grid, I1.dims[iu], K) if grid else linalg.zeros(0, I1.dims[iu], K))
    return ModuleMorphism(I1, I0, tuple(blocks))


@lru_cache(maxsize=4096)
def tau(M: FDModule) -> FDModule:
    """DTr M as the kernel of ν applied to the minimal presentation."""
    pres = _minimal_presentation(M)
    if pres.syzygy.total_dim == 0:
        return zero_module(M.algebra)
    nu = nakayama(pres.d, pres.syzygy_cover, pres.cover)
    T, _ = kernel(nu, name=f"τ{M.label()}" if M.name else "")
    return T


@lru_cache(maxsize=4096)
def tau_inv(M: FDModule) -> FDModule:
    """τ⁻¹ M = D τ_op D M."""
    T = dual(tau(dual(M)))
    return T.renamed(f"τ⁻¹{M.label()}" if M.name else "")


# -- dimensions ------------------------------------------------------------------------------

def projective_dimension(M: FDModule, cap: Optional[int] = None) -> int:
    """Length of the minimal projective resolution; 0 for projective (and zero) modules."""
    cap = cap if cap is not None else 2 * M.algebra.num_vertices
    X = M
    steps = 0
    while True:
        X = syzygy(X)
        if X.total_dim == 0:
            return steps
        steps += 1
        if steps > cap:
            raise ComputationLimitError(f"projective dimension of {M.label()} exceeds {cap}")


def injective_dimension(M: FDModule, cap: Optional[int] = None) -> int:
    return projective_dimension(dual(M), cap)


def global_dimension(algebra: BoundQuiverAlgebra) -> int:
    return max((projective_dimension(simple(algebra, v)) for v in algebra.vertices), default=0)


def euler_form(algebra: BoundQuiverAlgebra, d: Sequence[int], e: Sequence[int]) -> int:
    """⟨d, e⟩ = Σ d_i e_i − Σ_{a: i -> j} d_i e_j, for hereditary algebras."""
    if not algebra.is_hereditary:
        raise InputError("the Euler form is only implemented for hereditary algebras")
    n = algebra.num_vertices
    C = np.eye(n, dtype=int)
    for a in algebra.arrows.values():
        C[algebra.vertex_index(a.src), algebra.vertex_index(a.dst)] -= 1
    return int(np.asarray(d, dtype=int) @ C @ np.asarray(e, dtype=int))
