"""n-sections of ind B: the images of the heart strata under F, and the way back.

Classes are ordered so that maps only run from earlier classes to later ones:
Hom_B(B_i, B_j) = 0 for j < i.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from models.reports import ApproximationEntry, FinitenessReport, NSectionReport, TorsionPairEntry, \
    TorsionPairReport
from services import linalg
from services.chains import EpiChain, build_chain
from services.classification import hom_digraph, left_part, predecessors, right_part, successors
from services.decomposition import find_isomorphic, radical_endomorphisms
from services.errors import InputError, VerificationError
from services.heart import HeartContext, HeartFunctor
from services.homology import ExtSpace, injective_dimension, projective_dimension
from services.indecomposables import enumerate_indecomposables, standard_name
from services.localization import LocalizingMember, member, shifted_projective
from services.modules import FDModule, HomSpace, cogen_membership, gen_membership
from services.path_algebra import BoundQuiverAlgebra
from services.silting import SiltingComplex, build_silting

logger = logging.getLogger(__name__)


@dataclass
class NSection:
    algebra: BoundQuiverAlgebra
    classes: List[List[FDModule]]
    origins: List[List[str]] = field(default_factory=list)
    _universe: Optional[List[FDModule]] = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.classes)

    def indecomposables(self) -> List[FDModule]:
        if self._universe is None:
            self._universe = enumerate_indecomposables(self.algebra)
        return self._universe

    def class_of(self, X: FDModule) -> Optional[int]:
        for i, members in enumerate(self.classes):
            if find_isomorphic(X, members) >= 0:
                return i
        return None

    def name(self, X: FDModule) -> str:
        return standard_name(X, self.algebra)

    def labels(self) -> List[List[str]]:
        return [[self.name(X) for X in members] for members in self.classes]


def build_nsection(chain: EpiChain, T: Optional[SiltingComplex] = None, context: Optional[HeartContext] = None,
                   functor: Optional[HeartFunctor] = None) -> NSection:
    """B_j = F(stratum j [j]) over the presented End(T)."""
    T = T or build_silting(chain)
    functor = functor or HeartFunctor(T)
    context = context or HeartContext(chain)
    classes, origins = [], []
    for j in range(context.n):
        members = context.members(j)
        classes.append([functor.apply(X, j) for X in members])
        origins.append([f"{context.name(X)}[{j}]" if j else context.name(X) for X in members])
    logger.info("%d-section of ind %s with class sizes %s", len(classes), functor.algebra.name,
                [len(c) for c in classes])
    return NSection(functor.algebra, classes, origins)


def nsection_report(section: NSection) -> NSectionReport:
    return NSectionReport(classes=section.labels(), origins=section.origins)


def _spans(vectors: Sequence[Sequence], dim: int, K) -> int:
    if not vectors or not dim:
        return 0
    return linalg.rank(linalg.from_rows(list(vectors), K, dim, convert=False))


def _factors_through(X: FDModule, Z: FDModule, middle: Sequence[FDModule]) -> int:
    """Dimension of the maps X -> Z that factor through add(middle)."""
    H = HomSpace(X, Z)
    vectors = []
    for Y in middle:
        first = HomSpace(X, Y).basis
        if not first:
            continue
        for g in HomSpace(Y, Z).basis:
            vectors.extend(H.coordinates(g.compose(f)) for f in first)
    return _spans(vectors, H.dim, X.field)


def verify_nsection(section: NSection, universe: Optional[Sequence[FDModule]] = None) -> NSectionReport:
    """Partition, Hom orientation, separation, closure and the pd/id bounds of the outer classes."""
    universe = list(universe) if universe is not None else section.indecomposables()
    report = nsection_report(section)
    n, name = section.n, section.name
    classes = section.classes

    # partition of ind B
    for i, members in enumerate(classes):
        report.add_check(f"class {i} is non-empty", bool(members))
        for k, X in enumerate(members):
            if find_isomorphic(X, members[:k]) >= 0:
                report.add_check(f"class {i} members pairwise non-isomorphic", False, witness=name(X))
    hits = [[i for i, members in enumerate(classes) if find_isomorphic(X, members) >= 0] for X in universe]
    missing = [name(X) for X, h in zip(universe, hits) if not h]
    shared = [name(X) for X, h in zip(universe, hits) if len(h) > 1]
    report.add_check("every indecomposable lies in some class", not missing, witness=", ".join(missing) or None)
    report.add_check("classes are disjoint", not shared, witness=", ".join(shared) or None)
    listed = sum(len(members) for members in classes)
    report.add_check("classes contain only indecomposables of B", listed == len(universe),
                     f"{listed} listed, {len(universe)} indecomposables")

    # Hom orientation
    for i in range(1, n):
        bad = [f"{name(X)} -> {name(Y)}" for j in range(i) for X in classes[i] for Y in classes[j]
               if HomSpace(X, Y).dim]
        report.add_check(f"Hom(class {i}, earlier classes) = 0", not bad, witness=", ".join(bad) or None)
    for k in range(n - 2):
        bad = [f"{name(X)} -> {name(Y)}" for X in classes[k] for Y in classes[k + 2] if HomSpace(X, Y).dim]
        report.add_check(f"no maps from class {k} to class {k + 2}", not bad, witness=", ".join(bad) or None)

    # separation
    for i in range(1, n - 1):
        bad = []
        for X in classes[i - 1]:
            for Z in classes[i + 1]:
                d = HomSpace(X, Z).dim
                if d and _factors_through(X, Z, classes[i]) < d:
                    bad.append(f"{name(X)} -> {name(Z)}")
        report.add_check(f"maps from class {i - 1} to class {i + 1} factor through class {i}", not bad,
                         witness=", ".join(bad) or None)

    # closure under predecessors and successors
    g = hom_digraph(universe)
    position = {k: section.class_of(X) for k, X in enumerate(universe)}
    first = [k for k, c in position.items() if c == 0]
    last = [k for k, c in position.items() if c == n - 1]
    outside = sorted({name(universe[p]) for k in first for p in predecessors(g, k) if position[p] != 0})
    report.add_check("class 0 is closed under predecessors", not outside, witness=", ".join(outside) or None)
    outside = sorted({name(universe[s]) for k in last for s in successors(g, k) if position[s] != n - 1})
    report.add_check(f"class {n - 1} is closed under successors", not outside, witness=", ".join(outside) or None)

    # dimension bounds
    pd = [projective_dimension(X) for X in universe]
    idim = [injective_dimension(X) for X in universe]
    bad = [f"pd {name(universe[k])} = {pd[k]}" for k in first if pd[k] > 1]
    report.add_check("pd ≤ 1 on class 0", not bad, "; ".join(bad))
    bad = [f"id {name(universe[k])} = {idim[k]}" for k in last if idim[k] > 1]
    report.add_check(f"id ≤ 1 on class {n - 1}", not bad, "; ".join(bad))

    # left and right parts
    left, right = set(left_part(g, pd)), set(right_part(g, idim))
    bad = [name(universe[k]) for k in first if k not in left]
    report.add_check("class 0 ⊆ L_B", not bad, witness=", ".join(bad) or None)
    bad = [name(universe[k]) for k in last if k not in right]
    report.add_check(f"class {n - 1} ⊆ R_B", not bad, witness=", ".join(bad) or None)
    logger.info("n-section verification: %d checks, %d failed", len(report.checks), len(report.failures()))
    return report


# -- approximations ---------------------------------------------------------------------------------

def _right_terms(M: FDModule, members: Sequence[FDModule]):
    """Canonical sources Z^{dim Hom(Z, M)} and the multiplicities of the minimal approximation."""
    K = M.field
    canonical, minimal, parts = {}, {}, []
    for Z in members:
        H = HomSpace(Z, M)
        if not H.dim:
            continue
        canonical[Z] = H.dim
        parts.extend((Z, g) for g in H.basis)
        radical = []
        for Y in members:
            maps = radical_endomorphisms(Z) if Y is Z else HomSpace(Z, Y).basis
            for r in maps:
                radical.extend(H.coordinates(g.compose(r)) for g in HomSpace(Y, M).basis)
        top = H.dim - _spans(radical, H.dim, K)
        if top:
            minimal[Z] = top
    return canonical, minimal, parts


def _left_terms(M: FDModule, members: Sequence[FDModule]):
    K = M.field
    canonical, minimal, parts = {}, {}, []
    for Z in members:
        H = HomSpace(M, Z)
        if not H.dim:
            continue
        canonical[Z] = H.dim
        parts.extend((Z, g) for g in H.basis)
        radical = []
        for Y in members:
            maps = radical_endomorphisms(Z) if Y is Z else HomSpace(Y, Z).basis
            for r in maps:
                radical.extend(H.coordinates(r.compose(g)) for g in HomSpace(M, Y).basis)
        top = H.dim - _spans(radical, H.dim, K)
        if top:
            minimal[Z] = top
    return canonical, minimal, parts


def _certify_right(M: FDModule, members: Sequence[FDModule], parts) -> List[str]:
    """Every map Y -> M from a class member factors through the canonical map."""
    bad = []
    for Y in members:
        H = HomSpace(Y, M)
        if not H.dim:
            continue
        vectors = [H.coordinates(g.compose(u)) for Z, g in parts for u in HomSpace(Y, Z).basis]
        if _spans(vectors, H.dim, M.field) < H.dim:
            bad.append(Y.label())
    return bad


def _certify_left(M: FDModule, members: Sequence[FDModule], parts) -> List[str]:
    bad = []
    for Y in members:
        H = HomSpace(M, Y)
        if not H.dim:
            continue
        vectors = [H.coordinates(u.compose(g)) for Z, g in parts for u in HomSpace(Z, Y).basis]
        if _spans(vectors, H.dim, M.field) < H.dim:
            bad.append(Y.label())
    return bad


def functorial_finiteness(section: NSection, i: int,
                          modules: Optional[Sequence[FDModule]] = None) -> FinitenessReport:
    """Left and right add(B_i)-approximations of every indecomposable, certified by factorization."""
    if not 0 <= i < section.n:
        raise InputError(f"no class {i} in a {section.n}-section")
    members = section.classes[i]
    modules = list(modules) if modules is not None else section.indecomposables()
    name = section.name
    report = FinitenessReport()
    for M in modules:
        for side, terms, certify in (("right", _right_terms, _certify_right), ("left", _left_terms, _certify_left)):
            canonical, minimal, parts = terms(M, members)
            report.approximations.append(ApproximationEntry(
                module=name(M), target_class=i, side=side,
                canonical_terms={name(Z): m for Z, m in canonical.items()},
                minimal_terms={name(Z): m for Z, m in minimal.items()}))
            bad = certify(M, members, parts)
            report.add_check(f"{side} add(class {i})-approximation of {name(M)}", not bad,
                             witness=", ".join(bad) or None)
    return report


# -- split torsion pairs --------------------------------------------------------------------------------

def torsion_pairs(section: NSection, universe: Optional[Sequence[FDModule]] = None,
                  context: Optional[HeartContext] = None) -> TorsionPairReport:
    """(add(B_k ∪ ... ∪ B_{n-1}), add(B_0 ∪ ... ∪ B_{k-1})) for every cut k."""
    universe = list(universe) if universe is not None else section.indecomposables()
    name = section.name
    report = TorsionPairReport()
    for k in range(section.n + 1):
        torsion = [X for members in section.classes[k:] for X in members]
        free = [X for members in section.classes[:k] for X in members]
        report.pairs.append(TorsionPairEntry(cut=k, torsion=[name(X) for X in torsion],
                                             torsion_free=[name(X) for X in free]))
        bad = [f"{name(X)} -> {name(Y)}" for X in torsion for Y in free if HomSpace(X, Y).dim]
        report.add_check(f"Hom(T_{k}, F_{k}) = 0", not bad, witness=", ".join(bad) or None)
        sides = [(find_isomorphic(X, torsion) >= 0) + (find_isomorphic(X, free) >= 0) for X in universe]
        bad = [name(X) for X, s in zip(universe, sides) if s != 1]
        report.add_check(f"cut {k} splits ind B", not bad, witness=", ".join(bad) or None)
        quotients = [name(Y) for Y in free if torsion and gen_membership(Y, torsion)]
        report.add_check(f"T_{k} closed under quotients", not quotients, witness=", ".join(quotients) or None)
        subs = [name(Y) for Y in torsion if free and cogen_membership(Y, free)]
        report.add_check(f"F_{k} closed under submodules", not subs, witness=", ".join(subs) or None)
    if context is not None:
        for j in range(context.n - 1):
            w = [X for X in context.universe if context.in_W(X, j)]
            bad = [f"{context.name(X)} -> {context.name(Y)}" for X in context.V(j) for Y in w
                   if HomSpace(X, Y).dim]
            report.add_check(f"Hom(V_{j}, W_-{j}) = 0 on mod A", not bad, witness=", ".join(bad) or None)
    return report


# -- from an n-section of ind A back to a chain ------------------------------------------------------------

def _ext_projectives(torsion: Sequence[FDModule]) -> List[FDModule]:
    return [X for X in torsion if all(ExtSpace(X, Y).dim == 0 for Y in torsion)]


def _check_section(algebra: BoundQuiverAlgebra, classes: Sequence[Sequence[FDModule]],
                   universe: Sequence[FDModule]):
    """The hypotheses of the converse construction; violations raise InputError with a witness."""
    name = lambda X: standard_name(X, algebra)  # noqa: E731
    for X in universe:
        hits = sum(find_isomorphic(X, members) >= 0 for members in classes)
        if hits != 1:
            raise InputError(f"{name(X)} lies in {hits} classes; the classes must partition ind {algebra.name}",
                             witness=name(X))
    if sum(len(c) for c in classes) != len(universe):
        raise InputError("classes repeat a module or contain decomposable modules")
    for i, later in enumerate(classes):
        for j in range(i):
            for X in later:
                for Y in classes[j]:
                    if HomSpace(X, Y).dim:
                        raise InputError(f"Hom({name(X)}, {name(Y)}) ≠ 0 from class {i} to class {j}",
                                         witness=f"{name(X)} -> {name(Y)}")
    for i, ci in enumerate(classes):
        for j in range(i - 1):
            for X in ci:
                for Y in classes[j]:
                    if ExtSpace(X, Y).dim:
                        raise InputError(f"Ext¹({name(X)}, {name(Y)}) ≠ 0 from class {i} to class {j}",
                                         witness=f"{name(X)}, {name(Y)}")


def nsection_to_chain(algebra: BoundQuiverAlgebra, classes: Sequence[Sequence[FDModule]],
                      universe: Optional[Sequence[FDModule]] = None) -> EpiChain:
    """The chain whose ring modules B_i generate the torsion classes add(A_{n-1-i} ∪ ... ∪ A_{n-1})."""
    if not algebra.is_hereditary:
        raise InputError("the converse construction needs a hereditary algebra")
    universe = list(universe) if universe is not None else enumerate_indecomposables(algebra)
    classes = [list(c) for c in classes]
    _check_section(algebra, classes, universe)
    name = lambda X: standard_name(X, algebra)  # noqa: E731
    n = len(classes)
    sigmas: List[List[LocalizingMember]] = []
    torsions: List[List[FDModule]] = []
    for i in range(n - 1):
        torsion = [X for members in classes[n - 1 - i:] for X in members]
        torsions.append(torsion)
        projectives = _ext_projectives(torsion)
        unsupported = [v for v in algebra.vertices if all(X.dim(v) == 0 for X in torsion)]
        if len(projectives) + len(unsupported) != algebra.num_vertices:
            raise InputError(
                f"torsion class {i} has {len(projectives)} Ext-projectives and {len(unsupported)} unsupported "
                f"vertices, {algebra.num_vertices} needed; it is not functorially finite or not a torsion class",
                witness=", ".join(name(X) for X in projectives))
        split = [P for P in projectives if not gen_membership(P, [X for X in torsion if X is not P])]
        sigma = [member(P) for P in projectives if not any(P is S for S in split)]
        sigma += [shifted_projective(algebra, v) for v in unsupported]
        logger.info("torsion class %d: split projectives %s, Σ = %s", i, [name(P) for P in split],
                    [s.label() for s in sigma])
        sigmas.append(sigma)
    chain = build_chain(algebra, sigmas)
    report = NSectionReport(classes=[[name(X) for X in c] for c in classes])
    for i, torsion in enumerate(torsions):
        B = chain.ring_module(i)
        bad = [name(X) for X in universe
               if gen_membership(X, [B]) != (find_isomorphic(X, torsion) >= 0)]
        report.add_check(f"gen B_{i} equals the stated torsion class", not bad, witness=", ".join(bad) or None)
    if not report.ok:
        raise VerificationError("the recovered chain does not generate the stated classes", report)
    return chain


def same_perpendiculars(first: EpiChain, second: EpiChain, universe: Sequence[FDModule]) -> bool:
    """Whether two chains over one algebra have the same perpendicular categories on the given modules."""
    if len(first.steps) != len(second.steps):
        return False
    for a, b in zip(first.steps, second.steps):
        if any(a.perp(universe).contains(X) != b.perp(universe).contains(X) for X in universe):
            return False
    return True
