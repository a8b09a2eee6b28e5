"""Finite chains 0_A ≤ λ_0 ≤ λ_1 ≤ ... ≤ λ_{n-2} ≤ id_A of localizations and their connecting maps.

A chain is given by localizing sets Σ_0, ..., Σ_{n-2} with perp(Σ_i) ⊆ perp(Σ_{i+1}).
B_i is the ring module of λ_i and B_{n-1} = A, so the last connecting map is λ_{n-2}.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from models.reports import ChainReport, ConnectingMapReport, LocalizationReport
from services import linalg
from services.decomposition import decomposition_entries, module_entry
from services.errors import ChainOrderError, InternalInconsistencyError, WorkbenchError
from services.indecomposables import enumerate_indecomposables, standard_name
from services.localization import LocalizingMember, RingEpi, check_exceptional, in_perp, localize, perp_violations
from services.modules import (FDModule, HomSpace, ModuleMorphism, cokernel, direct_sum, gen_membership,
                              identity_morphism, kernel, projective)
from services.path_algebra import BoundQuiverAlgebra

logger = logging.getLogger(__name__)


@dataclass
class EpiChain:
    algebra: BoundQuiverAlgebra
    steps: List[RingEpi]
    _connecting: dict = field(default_factory=dict, repr=False)
    _regular: Optional[tuple] = field(default=None, repr=False)

    @property
    def n(self) -> int:
        """Number of terms of the silting complex the chain produces."""
        return len(self.steps) + 1

    @property
    def sigmas(self) -> List[List[LocalizingMember]]:
        return [list(step.sigma) for step in self.steps]

    def regular(self) -> FDModule:
        if self._regular is None:
            self._regular = direct_sum([projective(self.algebra, v) for v in self.algebra.vertices],
                                       name=self.algebra.name)
        return self._regular[0]

    def ring_module(self, i: int) -> FDModule:
        """B_i as an A-module; B_{n-1} = A."""
        return self.steps[i].module if i < len(self.steps) else self.regular()

    def unit(self, i: int) -> ModuleMorphism:
        return self.steps[i].unit if i < len(self.steps) else identity_morphism(self.regular())

    def connecting_map(self, i: int) -> ModuleMorphism:
        if i not in self._connecting:
            self._connecting[i] = connecting_map(self, i)
        return self._connecting[i]

    def name(self, X: FDModule) -> str:
        return standard_name(X, self.algebra)


def build_chain(algebra: BoundQuiverAlgebra, sigmas: Sequence[Sequence[LocalizingMember]]) -> EpiChain:
    """Localize at each Σ_i and check perp(Σ_i) ⊆ perp(Σ_{i+1}).

    Empty trailing sets are dropped: they localize to id_A, which the chain already ends with.
    """
    sigmas = [list(s) for s in sigmas]
    while sigmas and not sigmas[-1]:
        sigmas.pop()
    for s in sigmas:
        check_exceptional(s)
    steps = [localize(algebra, s) for s in sigmas]
    for i in range(len(steps) - 1):
        B = steps[i].module
        if not in_perp(B, steps[i + 1].sigma):
            violations = perp_violations(B, steps[i + 1].sigma)
            raise ChainOrderError(
                f"chain order violated at step {i}: B_{i} is not in perp({', '.join(steps[i + 1].sigma_labels())})",
                witness="; ".join(violations))
    logger.info("chain over %s with %d localizations", algebra.name, len(steps))
    return EpiChain(algebra, steps)


def connecting_map(chain: EpiChain, i: int) -> ModuleMorphism:
    """μ_i: B_{i+1} -> B_i with λ_i = μ_i∘λ_{i+1}."""
    if not 0 <= i < len(chain.steps):
        raise IndexError(f"no connecting map at position {i}")
    source, target = chain.ring_module(i + 1), chain.ring_module(i)
    lam_next, lam = chain.unit(i + 1), chain.unit(i)
    K = chain.algebra.field
    H = HomSpace(source, target)
    G = HomSpace(lam.source, target)
    columns = [G.coordinates(b.compose(lam_next)) for b in H.basis]
    sol = linalg.solve_linear(linalg.from_columns(columns, G.dim, K), G.coordinates(lam))
    if sol is None:
        raise InternalInconsistencyError(f"λ_{i} does not factor through λ_{i + 1}")
    if sol.kernel:
        logger.warning("connecting map at position %d is not unique (%d free parameters)", i, len(sol.kernel))
    return H.element(sol.particular)


def chain_partition(chain: EpiChain, universe: Optional[Sequence[FDModule]] = None) -> List[List[FDModule]]:
    """ind A cut along gen B_0 ⊆ gen B_1 ⊆ ... ⊆ mod A.

    Classes are listed with the largest torsion class last, so maps only go from
    earlier classes to later ones.
    """
    universe = list(universe) if universe is not None else enumerate_indecomposables(chain.algebra)
    layers: List[List[FDModule]] = []
    remaining = list(universe)
    for i in range(len(chain.steps)):
        B = chain.ring_module(i)
        inside = [X for X in remaining if gen_membership(X, [B])]
        layers.append(inside)
        remaining = [X for X in remaining if not any(X is Y for Y in inside)]
    layers.append(remaining)
    return list(reversed(layers))


def localization_report(epi: RingEpi, universe: Optional[Sequence[FDModule]] = None) -> LocalizationReport:
    name = lambda X: standard_name(X, epi.algebra)  # noqa: E731
    report = LocalizationReport(
        sigma=epi.sigma_labels(),
        dimension=epi.dimension,
        ring_module=decomposition_entries(epi.module, name),
        kernel=decomposition_entries(epi.kernel(), name),
        cokernel=decomposition_entries(epi.cokernel(), name),
        minimal_silting=[module_entry(X).model_copy(update={"label": name(X)}) for X in epi.minimal_silting_module()],
    )
    report.add_check("ring module in perp", in_perp(epi.module, epi.sigma),
                     "; ".join(perp_violations(epi.module, epi.sigma)))
    report.add_check("dim End(B) = dim B", epi.end.dim == epi.dimension,
                     f"{epi.end.dim} vs {epi.dimension}")
    ring = epi.check_ring_structure()
    report.add_check("λ is a unital ring homomorphism", not ring, "; ".join(ring))
    if universe is not None:
        universal = epi.check_universal_property(universe)
        report.add_check("Hom(B, X) ≅ Hom(A, X) on perp", not universal, "; ".join(universal))
    return report


def validate_chain(chain: EpiChain, universe: Optional[Sequence[FDModule]] = None) -> ChainReport:
    """Containments, factorizations λ_i = μ_i∘λ_{i+1} and exceptionality."""
    report = ChainReport(length=chain.n)
    for i, step in enumerate(chain.steps):
        try:
            check_exceptional(step.sigma)
            report.add_check(f"Σ_{i} exceptional", True)
        except WorkbenchError as exc:
            report.add_check(f"Σ_{i} exceptional", False, exc.message, witness=str(exc.witness))
        report.steps.append(localization_report(step, universe))
    for i in range(len(chain.steps) - 1):
        violations = perp_violations(chain.ring_module(i), chain.steps[i + 1].sigma)
        report.add_check(f"perp(Σ_{i}) ⊆ perp(Σ_{i + 1})", not violations, "; ".join(violations))
    for i in range(len(chain.steps)):
        try:
            mu = chain.connecting_map(i)
        except InternalInconsistencyError as exc:
            report.add_check(f"λ_{i} = μ_{i}∘λ_{i + 1}", False, exc.message)
            continue
        report.add_check(f"λ_{i} = μ_{i}∘λ_{i + 1}", mu.compose(chain.unit(i + 1)).equals(chain.unit(i)))
        report.connecting_maps.append(ConnectingMapReport(
            position=i,
            kernel=decomposition_entries(kernel(mu)[0], chain.name),
            cokernel=decomposition_entries(cokernel(mu)[0], chain.name),
        ))
    if universe is not None:
        report.partition = [[chain.name(X) for X in layer] for layer in chain_partition(chain, universe)]
    logger.info("chain validation: %d checks, %d failed", len(report.checks), len(report.failures()))
    return report
