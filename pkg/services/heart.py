"""The heart of the t-structure of a chain: its strata in mod A and the equivalence F = Hom_D(T, -).

With X_i = perp(Σ_i) (X_{n-1} = mod A) the strata are

    V_i    = Gen B_i ∩ X_{i+1}
    W_0    = V_0^⊥0,   W_-j = V_j^⊥0 ∩ V_{j-1}^⊥1
    stratum 0 = V_0,   stratum j = V_j ∩ W_-(j-1),   stratum n-1 = W_-(n-2)

and an indecomposable X of stratum j gives the heart object X[j].
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

from models.reports import HeartMapReport, HeartReport, StratumEntry, TraceApproximationReport
from services import linalg
from services.chains import EpiChain
from services.decomposition import decompose, decomposition_entries, module_entry
from services.end_algebra import QuiverPresentation, present_as_bound_quiver
from services.errors import InputError
from services.homology import ExtClass, ExtSpace, ext_dim, yoneda
from services.indecomposables import enumerate_indecomposables, standard_name
from services.localization import in_perp
from services.modules import (FDModule, HomSpace, ModuleMorphism, cokernel, direct_sum, gen_membership,
                              is_isomorphic, kernel, make_module, morphism_from_sum, trace)
from services.silting import SiltingComplex

logger = logging.getLogger(__name__)


class HeartContext:
    """Stratum membership for a chain, against a finite list of indecomposable A-modules."""

    def __init__(self, chain: EpiChain, universe: Optional[Sequence[FDModule]] = None):
        self.chain = chain
        self.algebra = chain.algebra
        self.n = chain.n
        self.universe = list(universe) if universe is not None else enumerate_indecomposables(self.algebra)
        self._v: Dict[int, List[FDModule]] = {}
        self._strata: Dict[FDModule, List[int]] = {}

    def sigma(self, i: int):
        return self.chain.steps[i].sigma if i < len(self.chain.steps) else ()

    def in_V(self, X: FDModule, i: int) -> bool:
        return gen_membership(X, [self.chain.ring_module(i)]) and in_perp(X, self.sigma(i + 1))

    def V(self, i: int) -> List[FDModule]:
        if i not in self._v:
            self._v[i] = [X for X in self.universe if self.in_V(X, i)]
        return self._v[i]

    def in_W(self, X: FDModule, j: int) -> bool:
        """X ∈ W_-j: no maps from B_j, no extensions by V_{j-1}."""
        if HomSpace(self.chain.ring_module(j), X).dim:
            return False
        return j == 0 or all(ExtSpace(Y, X).dim == 0 for Y in self.V(j - 1))

    def in_stratum(self, X: FDModule, j: int) -> bool:
        if j == 0:
            return self.n == 1 or self.in_V(X, 0)
        if j == self.n - 1:
            return self.in_W(X, self.n - 2)
        return self.in_V(X, j) and self.in_W(X, j - 1)

    def candidate_strata(self, X: FDModule) -> List[int]:
        """Every stratum whose defining conditions X satisfies."""
        if X not in self._strata:
            self._strata[X] = [j for j in range(self.n) if self.in_stratum(X, j)]
        return self._strata[X]

    def stratum(self, X: FDModule) -> Optional[int]:
        hits = self.candidate_strata(X)
        return hits[0] if hits else None

    def members(self, j: int) -> List[FDModule]:
        return [X for X in self.universe if self.stratum(X) == j]

    def name(self, X: FDModule) -> str:
        return standard_name(X, self.algebra)


def classify_stratum(M: FDModule, chain: EpiChain, context: Optional[HeartContext] = None) -> Optional[int]:
    """Index of the stratum containing the indecomposable M, or None."""
    context = context or HeartContext(chain)
    return context.stratum(M)


def heart_decomposition(context: HeartContext) -> HeartReport:
    report = HeartReport()
    for j in range(context.n):
        members = context.members(j)
        report.strata.append(StratumEntry(
            index=j, members=[module_entry(X, shift=j).model_copy(update={"label": context.name(X)})
                              for X in members]))
        report.add_check(f"stratum {j} is non-empty", bool(members))
    overlaps = [f"{context.name(X)} in strata {context.candidate_strata(X)}" for X in context.universe
                if len(context.candidate_strata(X)) > 1]
    report.add_check("strata are pairwise disjoint", not overlaps, f"{len(overlaps)} modules in several strata",
                     witness="; ".join(overlaps) or None)
    report.unclassified = [context.name(X) for X in context.universe if context.stratum(X) is None]
    logger.info("heart strata sizes %s, %d unclassified",
                [len(s.members) for s in report.strata], len(report.unclassified))
    return report


# -- the equivalence F -------------------------------------------------------------------------

class HeartFunctor:
    """F(X[j]) = Hom_D(T, X[j]) as a right module over the presented End(T)."""

    def __init__(self, T: SiltingComplex, presentation: Optional[QuiverPresentation] = None):
        self.T = T
        self.E = T.end_algebra()
        self.presentation = presentation or present_as_bound_quiver(self.E)
        self.algebra = self.presentation.algebra
        self._arrows = {label: (a, b, self.E.space(a, b).element(vec))
                        for label, (a, b, vec) in self.presentation.arrow_elements.items()}
        self._images: Dict[Tuple[FDModule, int], Tuple[FDModule, list]] = {}

    def spaces(self, X: FDModule, j: int) -> list:
        """Hom_D(M_a[s_a], X[j]) per summand: a HomSpace, an ExtSpace or None."""
        out = []
        for s in self.T.summands:
            e = j - s.shift
            out.append(HomSpace(s.module, X) if e == 0 else ExtSpace(s.module, X) if e == 1 else None)
        return out

    @staticmethod
    def _coordinates(space, value) -> List:
        if isinstance(value, ExtClass):
            return space.coordinates(value.cocycle)
        return space.coordinates(value)

    def apply(self, X: FDModule, j: int) -> FDModule:
        key = (X, j)
        if key not in self._images:
            K = self.algebra.field
            spaces = self.spaces(X, j)
            dims = [s.dim if s is not None else 0 for s in spaces]
            maps = {}
            for label, (a, b, x) in self._arrows.items():
                if not dims[a] or not dims[b]:
                    continue
                columns = []
                for f in spaces[a].basis:
                    value = self.E.compose(f, x)
                    columns.append([K.zero] * dims[b] if value is None else self._coordinates(spaces[b], value))
                maps[label] = linalg.from_columns(columns, dims[b], K)
            name = f"F({X.label()}[{j}])" if j else f"F({X.label()})"
            FX = make_module(self.algebra, dims, maps, name=name, check=True)
            self._images[key] = (FX, spaces)
        return self._images[key][0]

    def apply_morphism(self, g: ModuleMorphism, j: int) -> ModuleMorphism:
        """F(g): f ↦ g∘f on every vertex space."""
        K = self.algebra.field
        FX, FY = self.apply(g.source, j), self.apply(g.target, j)
        source_spaces = self._images[(g.source, j)][1]
        target_spaces = self._images[(g.target, j)][1]
        blocks = []
        for a, (S, U) in enumerate(zip(source_spaces, target_spaces)):
            if S is None or not S.dim or not U.dim:
                blocks.append(linalg.zeros(FY.dims[a], FX.dims[a], K))
                continue
            columns = []
            for f in S.basis:
                value = yoneda(f, g) if isinstance(f, ExtClass) else g.compose(f)
                columns.append(self._coordinates(U, value))
            blocks.append(linalg.from_columns(columns, U.dim, K))
        return ModuleMorphism(FX, FY, tuple(blocks)).check()


def apply_F(M: FDModule, j: int, functor: Union[HeartFunctor, SiltingComplex],
            context: Optional[HeartContext] = None) -> FDModule:
    """F(M[j]); with a context, M must lie in stratum j."""
    if isinstance(functor, SiltingComplex):
        functor = HeartFunctor(functor)
    if context is not None:
        s = context.stratum(M)
        if s != j:
            raise InputError(f"{M.label()} lies in stratum {s}, not {j}", witness=M.label())
    return functor.apply(M, j)


def check_hom_exchange(functor: HeartFunctor, context: HeartContext) -> List[str]:
    """dim Hom_B(F X[i], F Y[j]) = dim Ext^{j-i}(X, Y) on all pairs of strata members."""
    failures = []
    members = [(X, j) for j in range(context.n) for X in context.members(j)]
    for X, i in members:
        FX = functor.apply(X, i)
        for Y, j in members:
            left = HomSpace(FX, functor.apply(Y, j)).dim
            right = ext_dim(X, Y, j - i)
            if left != right:
                failures.append(f"dim Hom(F{context.name(X)}[{i}], F{context.name(Y)}[{j}]) = {left}, "
                                f"dim Ext^{j - i}({context.name(X)}, {context.name(Y)}) = {right}")
    return failures


# -- kernels and cokernels in the heart ----------------------------------------------------------

def _same_module(modules: Sequence[FDModule], M: FDModule) -> bool:
    if not modules:
        return M.total_dim == 0
    S = direct_sum(modules)[0]
    return S.dims == M.dims and is_isomorphic(S, M)[0]


def heart_kernel_cokernel(f: ModuleMorphism, j: int, functor: HeartFunctor,
                          context: HeartContext) -> HeartMapReport:
    """Kernel and cokernel in the heart of f[j] from its cone ker f[j+1] ⊕ coker f[j], compared with F(f)."""
    report = HeartMapReport(shift=j)
    ker_h: List[Tuple[FDModule, int]] = []
    coker_h: List[Tuple[FDModule, int]] = []
    for piece, shift in ((kernel(f)[0], j + 1), (cokernel(f)[0], j)):
        for Z, mult in decompose(piece):
            s = context.stratum(Z)
            entry = module_entry(Z, mult, shift).model_copy(update={"label": context.name(Z)})
            if s == shift:
                coker_h.extend([(Z, shift)] * mult)
                report.cokernel.append(entry)
            elif s == shift - 1:
                ker_h.extend([(Z, shift - 1)] * mult)
                report.kernel.append(entry)
            else:
                report.outside.append(entry)
    report.add_check("cone lies in H[1] * H", not report.outside,
                     ", ".join(e.label for e in report.outside))
    Ff = functor.apply_morphism(f, j)
    report.add_check("ker F(f) ≅ F(heart kernel)",
                     _same_module([functor.apply(Z, s) for Z, s in ker_h], kernel(Ff)[0]))
    report.add_check("coker F(f) ≅ F(heart cokernel)",
                     _same_module([functor.apply(Z, s) for Z, s in coker_h], cokernel(Ff)[0]))
    return report


# -- three-term chains: right approximation by the middle stratum ---------------------------------

def trace_approximation(M: FDModule, context: HeartContext) -> TraceApproximationReport:
    """h = f∘ι with f the canonical right add(W_0)-approximation of M and ι the trace of V_1 in its source."""
    if context.n != 3:
        raise InputError("the trace construction applies to chains of length three")
    report = TraceApproximationReport(module=context.name(M))
    w0 = [X for X in context.universe if context.in_W(X, 0)]
    sources, maps = [], []
    for X in w0:
        for g in HomSpace(X, M).basis:
            sources.append(X)
            maps.append(g)
    if not sources:
        report.add_check("M has a nonzero add(W_0)-approximation", False, witness=report.module)
        return report
    W, _, _ = direct_sum(sources)
    f = morphism_from_sum(maps, W)
    Tr, iota = trace(context.V(1), W)
    h = f.compose(iota)
    report.approximation = decomposition_entries(W, context.name)
    report.trace = decomposition_entries(Tr, context.name)
    middle = context.members(1)
    for Z, _ in decompose(Tr):
        report.add_check(f"{context.name(Z)} lies in the middle stratum", context.stratum(Z) == 1,
                         witness=context.name(Z))
    K = context.algebra.field
    for Y in middle:
        target = HomSpace(Y, M)
        if not target.dim:
            continue
        through = [target.coordinates(h.compose(u)) for u in HomSpace(Y, Tr).basis]
        r = linalg.rank(linalg.from_rows(through, K, target.dim, convert=False)) if through else 0
        report.add_check(f"maps {context.name(Y)} -> M factor through h", r == target.dim,
                         f"rank {r} of {target.dim}", witness=None if r == target.dim else context.name(Y))
    return report
