"""Perpendicular categories and universal localization of hereditary algebras.

The localization of A at an exceptional set Σ is computed on the module side:
A is reflected into the perpendicular category perp(Σ) by alternating trace
quotients and universal extensions, and B = End_A(L_A) with product φ·ψ = φ∘ψ.
A member P_v[1] of Σ stands for the map P_v -> 0; its perpendicular condition
is that the vertex-v space vanishes.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import networkx as nx

from services import linalg
from services.decomposition import basic, decompose, find_isomorphic, is_indecomposable
from services.errors import ComputationLimitError, InputError, InternalInconsistencyError, NotExceptionalError
from services.homology import ExtSpace, universal_extension
from services.modules import (FDModule, HomSpace, ModuleMorphism, cokernel, direct_sum, identity_morphism,
                              is_isomorphic, kernel, left_multiplication, projective, reject)
from services.end_algebra import GradedEndAlgebra, GradedSummand, present_as_bound_quiver
from services.path_algebra import BoundQuiverAlgebra, Path

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LocalizingMember:
    """An exceptional module, or a shifted projective P_v[1] when `vertex` is set."""

    module: FDModule
    vertex: Optional[str] = None

    @property
    def shifted(self) -> bool:
        return self.vertex is not None

    def label(self) -> str:
        return f"P{self.vertex}[1]" if self.shifted else self.module.label()


def shifted_projective(algebra: BoundQuiverAlgebra, v: str) -> LocalizingMember:
    return LocalizingMember(projective(algebra, v), vertex=v)


def member(M: FDModule) -> LocalizingMember:
    return LocalizingMember(M)


def check_exceptional(sigma: Sequence[LocalizingMember]):
    """Each module member indecomposable without self-extensions, members pairwise distinct."""
    seen_vertices = set()
    modules = []
    for s in sigma:
        if s.shifted:
            if s.vertex in seen_vertices:
                raise NotExceptionalError(f"{s.label()} listed twice", witness=s.label())
            seen_vertices.add(s.vertex)
            continue
        M = s.module
        if not M.algebra.is_hereditary:
            raise InputError("localization is only implemented for hereditary algebras")
        if not is_indecomposable(M):
            raise NotExceptionalError(f"{M.label()} is not indecomposable", witness=M.label())
        if ExtSpace(M, M).dim:
            raise NotExceptionalError(f"{M.label()} has self-extensions", witness=M.label())
        if find_isomorphic(M, modules) >= 0:
            raise NotExceptionalError(f"{M.label()} listed twice", witness=M.label())
        modules.append(M)


def in_perp(X: FDModule, sigma: Sequence[LocalizingMember]) -> bool:
    for s in sigma:
        if s.shifted:
            if X.dim(s.vertex):
                return False
        elif HomSpace(s.module, X).dim or ExtSpace(s.module, X).dim:
            return False
    return True


def perp_violations(X: FDModule, sigma: Sequence[LocalizingMember]) -> List[str]:
    out = []
    for s in sigma:
        if s.shifted:
            if X.dim(s.vertex):
                out.append(f"{X.label()} is nonzero at vertex {s.vertex}")
            continue
        h, e = HomSpace(s.module, X).dim, ExtSpace(s.module, X).dim
        if h:
            out.append(f"dim Hom({s.label()}, {X.label()}) = {h}")
        if e:
            out.append(f"dim Ext¹({s.label()}, {X.label()}) = {e}")
    return out


def _graded_hom(X: LocalizingMember, Y: LocalizingMember) -> bool:
    """Whether some Hom_D(X, Y[i]) is nonzero, treating P_v[1] as a complex."""
    if X.shifted and Y.shifted:
        return HomSpace(X.module, Y.module).dim > 0
    if X.shifted:
        return Y.module.dim(X.vertex) > 0
    if Y.shifted:
        return HomSpace(X.module, Y.module).dim > 0
    return HomSpace(X.module, Y.module).dim > 0 or ExtSpace(X.module, Y.module).dim > 0


def order_exceptional(sigma: Sequence[LocalizingMember]) -> List[LocalizingMember]:
    """Order Σ so that no member maps to an earlier one, when such an order exists."""
    g = nx.DiGraph()
    g.add_nodes_from(range(len(sigma)))
    for i, x in enumerate(sigma):
        for j, y in enumerate(sigma):
            if i != j and _graded_hom(x, y):
                g.add_edge(i, j)
    try:
        order = list(nx.lexicographical_topological_sort(g))
    except nx.NetworkXUnfeasible:
        logger.warning("localizing set admits no exceptional order; keeping the given order")
        order = list(range(len(sigma)))
    return [sigma[k] for k in order]


class PerpCategory:
    """perp(Σ): modules with no Hom and no Ext¹ from the members of Σ."""

    def __init__(self, algebra: BoundQuiverAlgebra, sigma: Sequence[LocalizingMember],
                 universe: Optional[Sequence[FDModule]] = None):
        check_exceptional(sigma)
        self.algebra = algebra
        self.sigma = tuple(sigma)
        self.universe = list(universe) if universe is not None else None

    def contains(self, X: FDModule) -> bool:
        return in_perp(X, self.sigma)

    @property
    def indecomposables(self) -> List[FDModule]:
        if self.universe is None:
            raise InputError("no list of indecomposables supplied")
        return [X for X in self.universe if self.contains(X)]

    @property
    def expected_rank(self) -> int:
        return self.algebra.num_vertices - len(self.sigma)


def perpendicular(algebra: BoundQuiverAlgebra, sigma: Sequence[LocalizingMember],
                  universe: Optional[Sequence[FDModule]] = None) -> PerpCategory:
    return PerpCategory(algebra, sigma, universe)


# -- reflection ------------------------------------------------------------------------------

@dataclass
class Reflection:
    module: FDModule
    unit: ModuleMorphism
    passes: int = 0


def _reflect_step(M: FDModule, s: LocalizingMember) -> Tuple[FDModule, ModuleMorphism]:
    if s.shifted:
        return reject(M, [s.module])
    Q, q = reject(M, [s.module])
    E, inc = universal_extension(s.module, Q)
    return E, inc.compose(q)


def reflect(algebra: BoundQuiverAlgebra, sigma: Sequence[LocalizingMember], M: FDModule,
            max_passes: Optional[int] = None) -> Reflection:
    """Left adjoint of perp(Σ) ⊂ mod A applied to M, with its unit M -> L_M."""
    ordered = order_exceptional(sigma)
    cap = max_passes if max_passes is not None else 4 * algebra.num_vertices
    current, unit = M, identity_morphism(M)
    passes = 0
    while not in_perp(current, ordered):
        passes += 1
        if passes > cap:
            raise ComputationLimitError(
                f"reflection of {M.label()} did not reach perp({', '.join(s.label() for s in sigma)}) "
                f"within {cap} passes")
        for s in reversed(ordered):
            current, step = _reflect_step(current, s)
            unit = step.compose(unit)
        logger.debug("reflection pass %d of %s: dimension vector %s", passes, M.label(), list(current.dims))
    return Reflection(current, unit, passes)


# -- ring epimorphisms ---------------------------------------------------------------------

@dataclass
class RingEpi:
    """λ: A -> B = End_A(L_A), B viewed through its underlying A-module L_A."""

    algebra: BoundQuiverAlgebra
    sigma: Tuple[LocalizingMember, ...]
    module: FDModule
    unit: ModuleMorphism
    regular: FDModule
    inclusions: List[ModuleMorphism]
    projections: List[ModuleMorphism]
    _end: Optional[HomSpace] = field(default=None, repr=False)

    @property
    def end(self) -> HomSpace:
        if self._end is None:
            self._end = HomSpace(self.module, self.module)
        return self._end

    @property
    def dimension(self) -> int:
        return self.module.total_dim

    def sigma_labels(self) -> List[str]:
        return [s.label() for s in self.sigma]

    def decomposition(self) -> List[Tuple[FDModule, int]]:
        return decompose(self.module)

    def kernel(self) -> FDModule:
        return kernel(self.unit)[0]

    def cokernel(self) -> FDModule:
        return cokernel(self.unit)[0]

    def minimal_silting_module(self) -> List[FDModule]:
        """basic(L_A ⊕ coker λ)."""
        return basic([self.module, self.cokernel()])

    def perp(self, universe: Optional[Sequence[FDModule]] = None) -> PerpCategory:
        return PerpCategory(self.algebra, self.sigma, universe)

    def multiply(self, phi: ModuleMorphism, psi: ModuleMorphism) -> ModuleMorphism:
        return phi.compose(psi)

    def _left_multiplication(self, r, i: str, j: str) -> ModuleMorphism:
        """ℓ_r on the regular module: supported on P_j -> P_i."""
        i_idx, j_idx = self.algebra.vertex_index(i), self.algebra.vertex_index(j)
        ell = left_multiplication(self.algebra, r, i, j)
        return self.inclusions[i_idx].compose(ell).compose(self.projections[j_idx])

    def unit_image(self, p: Path) -> ModuleMorphism:
        """λ(p): the endomorphism φ of L_A with φ∘λ = λ∘ℓ_p."""
        K = self.algebra.field
        target = self.unit.compose(self._left_multiplication({p: K.one}, p.source, p.target))
        return self.factor_through_unit(target)

    def factor_through_unit(self, g: ModuleMorphism) -> ModuleMorphism:
        """The unique φ ∈ End(L_A) with φ∘λ = g, for g: A -> L_A."""
        H = HomSpace(self.regular, self.module)
        columns = [H.coordinates(b.compose(self.unit)) for b in self.end.basis]
        rhs = H.coordinates(g)
        sol = linalg.solve_linear(linalg.from_columns(columns, H.dim, self.algebra.field), rhs)
        if sol is None:
            raise InternalInconsistencyError("no factorization through the unit")
        return self.end.element(sol.particular)

    def check_ring_structure(self) -> List[str]:
        """λ(1) = 1 and λ multiplicative on pairs of basis paths."""
        failures = []
        K = self.algebra.field
        one = None
        for v in self.algebra.vertices:
            e = self.unit_image(Path(v, v, ()))
            one = e if one is None else one + e
        if one is not None and not one.equals(identity_morphism(self.module)):
            failures.append("λ(1) is not the identity of L_A")
        basis = self.algebra.path_basis()
        images = {p: self.unit_image(p) for p in basis}
        for p in basis:
            for q in basis:
                if p.target != q.source:
                    continue
                prod = self.algebra.multiply_paths(p, q)
                expected = None
                for r, c in prod.items():
                    term = images[r].scaled(c)
                    expected = term if expected is None else expected + term
                got = self.multiply(images[p], images[q])
                if expected is None:
                    if not got.is_zero():
                        failures.append(f"λ({p.label()})·λ({q.label()}) ≠ 0 = λ({p.label()}·{q.label()})")
                elif not got.equals(expected):
                    failures.append(f"λ({p.label()})·λ({q.label()}) ≠ λ({p.label()}·{q.label()})")
        return failures

    def check_universal_property(self, universe: Sequence[FDModule]) -> List[str]:
        """Composition with λ is a bijection Hom(L_A, X) -> Hom(A, X) for X ∈ perp(Σ)."""
        failures = []
        for X in universe:
            if not in_perp(X, self.sigma):
                continue
            H = HomSpace(self.module, X)
            if H.dim != X.total_dim:
                failures.append(f"dim Hom(L_A, {X.label()}) = {H.dim} ≠ dim {X.label()} = {X.total_dim}")
                continue
            G = HomSpace(self.regular, X)
            vectors = [G.coordinates(f.compose(self.unit)) for f in H.basis]
            if vectors and linalg.rank(linalg.from_rows(vectors, self.algebra.field, G.dim, convert=False)) < H.dim:
                failures.append(f"composition with λ is not injective on Hom(L_A, {X.label()})")
        return failures

    def presentation(self):
        """Basic algebra of B as a bound quiver algebra."""
        summands = [GradedSummand(X, 0, X.label()) for X, _ in self.decomposition()]
        return present_as_bound_quiver(GradedEndAlgebra(summands), name=f"B({','.join(self.sigma_labels())})")


def localize(algebra: BoundQuiverAlgebra, sigma: Sequence[LocalizingMember]) -> RingEpi:
    """Universal localization A -> A_Σ realized on the reflection of the regular module."""
    check_exceptional(sigma)
    projectives = [projective(algebra, v) for v in algebra.vertices]
    A, inclusions, projections = direct_sum(projectives, name=algebra.name)
    refl = reflect(algebra, sigma, A)
    logger.info("localized %s at {%s}: dim B = %d after %d passes", algebra.name,
                ", ".join(s.label() for s in sigma), refl.module.total_dim, refl.passes)
    return RingEpi(algebra, tuple(sigma), refl.module.renamed("B"), refl.unit, A, inclusions, projections)


def identity_epi(algebra: BoundQuiverAlgebra) -> RingEpi:
    return localize(algebra, ())


def members_isomorphic(x: LocalizingMember, y: LocalizingMember) -> bool:
    if x.shifted or y.shifted:
        return x.vertex == y.vertex
    return is_isomorphic(x.module, y.module)[0]
