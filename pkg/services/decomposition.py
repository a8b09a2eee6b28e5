"""Krull-Schmidt decomposition by splitting endomorphisms along their characteristic polynomial."""
import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

from sympy import Poly
from sympy.polys.matrices import DomainMatrix

from models.reports import ModuleEntry
from services import linalg
from services.errors import ComputationLimitError
from services.modules import (FDModule, HomSpace, ModuleMorphism, basis_isomorphism, identity_morphism,
                              is_isomorphic, submodule, zero_morphism)

logger = logging.getLogger(__name__)

SPLIT_ATTEMPTS = 12


class Summand(NamedTuple):
    module: FDModule
    inclusion: ModuleMorphism
    projection: ModuleMorphism


def _total_charpoly(f: ModuleMorphism) -> Poly:
    out = None
    for block in f.blocks:
        p = linalg.charpoly(block)
        out = p if out is None else out * p
    return out


def _split(M: FDModule, f: ModuleMorphism):
    """Primary decomposition of M under f, or None when f has a single irreducible factor."""
    factors = linalg.factor_polynomial(_total_charpoly(f))
    if len(factors) < 2:
        return None
    g, e = factors[0]
    rest = None
    for h, k in factors[1:]:
        rest = h ** k if rest is None else rest * h ** k
    first = [linalg.kernel(linalg.polynomial_at(g ** e, b)) for b in f.blocks]
    second = [linalg.kernel(linalg.polynomial_at(rest, b)) for b in f.blocks]
    return first, second


def _complement_maps(M: FDModule, first: Sequence[DomainMatrix], second: Sequence[DomainMatrix]):
    """Projections onto each factor of M_v = U_v + V_v (as coordinates in the factor's basis)."""
    K = M.field
    proj_u, proj_v = [], []
    for d, U, V in zip(M.dims, first, second):
        both = linalg.hstack([U, V], d, K)
        inverse = both.inv() if d else both
        rows = linalg.to_rows(inverse)
        k = U.shape[1]
        proj_u.append(DomainMatrix(rows[:k], (k, d), K))
        proj_v.append(DomainMatrix(rows[k:], (d - k, d), K))
    return proj_u, proj_v


def _candidates(M: FDModule, End: HomSpace):
    for f in End.basis:
        yield f
    if End.is_enumerable():
        yield from End.all_elements()
        return
    rng = linalg.rng_for("decompose", M.dims, End.dim)
    for _ in range(SPLIT_ATTEMPTS):
        yield End.random_element(rng)


def decompose_with_maps(M: FDModule) -> List[Summand]:
    """Indecomposable summands with split inclusions and projections into M."""
    if M.total_dim == 0:
        return []
    End = HomSpace(M, M)
    if End.dim > 1:
        for f in _candidates(M, End):
            pieces = _split(M, f)
            if pieces is None:
                continue
            first, second = pieces
            U, inc_u = submodule(M, first)
            V, inc_v = submodule(M, second)
            pu, pv = _complement_maps(M, first, second)
            proj_u = ModuleMorphism(M, U, tuple(pu))
            proj_v = ModuleMorphism(M, V, tuple(pv))
            out = []
            for inner, inc, proj in ((U, inc_u, proj_u), (V, inc_v, proj_v)):
                for s in decompose_with_maps(inner):
                    out.append(Summand(s.module, inc.compose(s.inclusion), s.projection.compose(proj)))
            return out
        logger.debug("no splitting endomorphism found for %s (dim End = %d)", M.label(), End.dim)
    return [Summand(M, identity_morphism(M), identity_morphism(M))]


def isomorphism_by_summands(M: FDModule, N: FDModule) -> Tuple[bool, Optional[ModuleMorphism]]:
    """Decide M ≅ N by pairing indecomposable summands; the witness is block diagonal."""
    left, right = decompose_with_maps(M), decompose_with_maps(N)
    if len(left) != len(right):
        return False, None
    unmatched = list(right)
    witness = zero_morphism(M, N)
    for s in left:
        for k, t in enumerate(unmatched):
            phi = basis_isomorphism(s.module, t.module)
            if phi is not None:
                witness = witness + t.inclusion.compose(phi).compose(s.projection)
                del unmatched[k]
                break
        else:
            return False, None
    return True, witness


def group_isoclasses(modules: Sequence[FDModule]) -> List[Tuple[FDModule, int]]:
    """Representatives with multiplicities, in order of first appearance; the modules are indecomposable."""
    classes: List[List] = []
    for X in modules:
        for entry in classes:
            if basis_isomorphism(entry[0], X) is not None:
                entry[1] += 1
                break
        else:
            classes.append([X, 1])
    return [(X, n) for X, n in classes]


def decompose(M: FDModule) -> List[Tuple[FDModule, int]]:
    """Indecomposable summands up to isomorphism with their multiplicities."""
    return group_isoclasses([s.module for s in decompose_with_maps(M)])


def is_indecomposable(M: FDModule) -> bool:
    return M.total_dim > 0 and len(decompose_with_maps(M)) == 1


def basic(modules: Sequence[FDModule]) -> List[FDModule]:
    """One indecomposable representative per isomorphism class of the summands of the given modules."""
    pieces = []
    for M in modules:
        pieces.extend(s.module for s in decompose_with_maps(M))
    return [X for X, _ in group_isoclasses(pieces)]


def find_isomorphic(X: FDModule, candidates: Sequence[FDModule]) -> int:
    """Index of the first candidate isomorphic to X, or -1."""
    for k, Y in enumerate(candidates):
        if Y.dims == X.dims and is_isomorphic(X, Y)[0]:
            return k
    return -1


def character(f: ModuleMorphism):
    """The scalar λ with f - λ nilpotent, for an endomorphism of an indecomposable module."""
    K = f.source.field
    for block in f.blocks:
        if block.shape[0] == 0:
            continue
        factors = linalg.factor_polynomial(linalg.charpoly(block))
        if len(factors) != 1 or factors[0][0].degree() != 1:
            raise ComputationLimitError(
                f"endomorphism ring of {f.source.label()} is not split local over {linalg.field_label(K)}")
        a, b = (K.from_sympy(c) for c in factors[0][0].all_coeffs())
        return K.quo(-b, a)
    return K.zero


def radical_endomorphisms(M: FDModule, End: HomSpace = None) -> List[ModuleMorphism]:
    """Basis of rad End(M) = ker of the character, for indecomposable M."""
    End = End or HomSpace(M, M)
    K = M.field
    values = [character(f) for f in End.basis]
    pivot = next((k for k, v in enumerate(values) if not K.is_zero(v)), None)
    if pivot is None:
        return list(End.basis)
    out = []
    for k, f in enumerate(End.basis):
        if k == pivot:
            continue
        c = K.quo(values[k], values[pivot])
        out.append(f + End.basis[pivot].scaled(-c))
    return out


def module_entry(X: FDModule, multiplicity: int = 1, shift: int = 0) -> ModuleEntry:
    return ModuleEntry(label=X.label(), dims=tuple(X.dims), multiplicity=multiplicity, shift=shift)


def decomposition_entries(M: FDModule, name=None) -> List[ModuleEntry]:
    """decompose(M) as report entries, labelled by `name(X)` when given."""
    out = []
    for X, n in decompose(M):
        entry = module_entry(X, n)
        if name is not None:
            entry.label = name(X)
        out.append(entry)
    return out
