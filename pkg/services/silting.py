"""The n-term silting complex of a chain and its endomorphism algebra.

Over a hereditary algebra every bounded complex is the sum of its shifted
cohomologies, so T is stored as graded modules M[s] with s ≥ 0:

    T = B_0 ⊕ ⊕_i (coker μ_i)[i] ⊕ (ker μ_i)[i+1]

with B_0 in degree 0. Hom_D(M[a], N[b][i]) = Ext^{b+i-a}(M, N).
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from models.reports import EndAlgebraReport, SiltingReport
from services.chains import EpiChain
from services.decomposition import decompose, find_isomorphic, module_entry
from services.emitters import algebra_to_dsl
from services.end_algebra import (GradedEndAlgebra, GradedSummand, QuiverPresentation, end_algebra,
                                  present_as_bound_quiver)
from services.errors import InputError, VerificationError
from services.homology import ExtSpace
from services.indecomposables import standard_name
from services.modules import FDModule, HomSpace, cokernel, kernel
from services.path_algebra import BoundQuiverAlgebra

logger = logging.getLogger(__name__)


@dataclass
class SiltingComplex:
    algebra: BoundQuiverAlgebra
    summands: List[GradedSummand]
    multiplicities: List[int]
    chain: Optional[EpiChain] = None

    @property
    def shifts(self) -> List[int]:
        return [s.shift for s in self.summands]

    @property
    def length(self) -> int:
        return max(self.shifts, default=0) + 1

    def labels(self) -> List[str]:
        return [s.display() for s in self.summands]

    def in_degree(self, shift: int) -> List[FDModule]:
        return [s.module for s in self.summands if s.shift == shift]

    def end_algebra(self) -> GradedEndAlgebra:
        return end_algebra(self.summands)


def silting_complex(algebra: BoundQuiverAlgebra, pieces: Sequence[Tuple[FDModule, int]],
                    chain: Optional[EpiChain] = None) -> SiltingComplex:
    """Basic graded sum of the indecomposable summands of the given shifted modules."""
    by_shift: dict = {}
    for M, shift in pieces:
        if shift < 0:
            raise InputError(f"negative shift {shift} for {M.label()}")
        if M.algebra is not algebra:
            raise InputError(f"{M.label()} is not a module over {algebra.name}")
        for X, mult in decompose(M):
            bucket = by_shift.setdefault(shift, [])
            k = find_isomorphic(X, [Y for Y, _ in bucket])
            if k < 0:
                bucket.append([X, mult])
            else:
                bucket[k][1] += mult
    summands, mults = [], []
    for shift in sorted(by_shift):
        for X, mult in by_shift[shift]:
            summands.append(GradedSummand(X, shift, standard_name(X, algebra)))
            mults.append(mult)
    return SiltingComplex(algebra, summands, mults, chain)


def build_silting(chain: EpiChain) -> SiltingComplex:
    """T from the cones of the connecting maps, reduced to basic form."""
    pieces: List[Tuple[FDModule, int]] = [(chain.ring_module(0), 0)]
    for i in range(len(chain.steps)):
        mu = chain.connecting_map(i)
        pieces.append((cokernel(mu)[0], i))
        pieces.append((kernel(mu)[0], i + 1))
    T = silting_complex(chain.algebra, pieces, chain)
    if len(T.summands) != chain.algebra.num_vertices:
        raise VerificationError(f"not silting: T has {len(T.summands)} indecomposable summands, "
                                f"{chain.algebra.name} has {chain.algebra.num_vertices} simples", verify_silting(T))
    logger.info("silting complex: %s", " ⊕ ".join(T.labels()))
    return T


def verify_silting(T: SiltingComplex) -> SiltingReport:
    """Hom_D(T, T[i]) = 0 for i > 0 pair by pair, and the summand count against the simples."""
    report = SiltingReport(
        summands=[module_entry(s.module, m, s.shift).model_copy(update={"label": s.label})
                  for s, m in zip(T.summands, T.multiplicities)],
        simples=T.algebra.num_vertices,
    )
    for x in T.summands:
        for y in T.summands:
            M, N, a, b = x.module, y.module, x.shift, y.shift
            # Ext^0 occurs for i = a - b, Ext^1 for i = a - b + 1
            if a > b:
                h = HomSpace(M, N).dim
                report.add_check(f"Hom({x.display()}, {y.display()}[{a - b}]) = 0", h == 0,
                                 f"dim Hom({x.label}, {y.label}) = {h}", witness=None if h == 0 else x.label)
            if a >= b:
                e = ExtSpace(M, N).dim
                report.add_check(f"Hom({x.display()}, {y.display()}[{a - b + 1}]) = 0", e == 0,
                                 f"dim Ext¹({x.label}, {y.label}) = {e}", witness=None if e == 0 else x.label)
    report.add_check("number of summands equals number of simples",
                     len(T.summands) == T.algebra.num_vertices,
                     f"{len(T.summands)} summands, {T.algebra.num_vertices} simples")
    return report


def present_end_algebra(T: SiltingComplex, name: str = "B") -> QuiverPresentation:
    return present_as_bound_quiver(T.end_algebra(), name=name)


def end_algebra_report(T: SiltingComplex, presentation: Optional[QuiverPresentation] = None) -> EndAlgebraReport:
    E = T.end_algebra()
    presentation = presentation or present_as_bound_quiver(E)
    B = presentation.algebra
    report = EndAlgebraReport(
        name=B.name,
        dimension=B.dimension,
        vertices=dict(presentation.vertex_summands),
        arrows=[(a.label, a.src, a.dst) for a in B.quiver.arrows],
        relations=B.relation_texts(),
        cartan=E.cartan_matrix().tolist(),
        nilpotency=presentation.nilpotency,
        dsl=algebra_to_dsl(B),
    )
    report.add_check("dimension of the presentation", B.dimension == E.dimension,
                     f"{B.dimension} vs {E.dimension}")
    report.add_check("Cartan matrix of the presentation",
                     (B.cartan_matrix() == E.cartan_matrix()).all())
    assoc = E.check_associativity()
    report.add_check("associativity on basis elements", not assoc, "; ".join(assoc[:5]))
    return report
