"""A parsed document bound to a field: the algebra, its named modules and reference resolution.

References are `P<v>`, `I<v>`, `S<v>`, names of declared modules, shifted
projectives `P<v>[1]` (localizing sets only) and dimension vectors `(1,0,1)`.
"""
import logging
import re
from typing import Dict, List, Optional, Sequence

from models.config import WorkbenchConfig
from models.documents import WorkbenchDocument
from services import linalg
from services.dsl_parser import algebra_from_document, load_document, parse_references
from services.errors import InputError, UnknownReferenceError
from services.indecomposables import enumerate_indecomposables
from services.localization import LocalizingMember, member, shifted_projective
from services.modules import FDModule, generic_module, injective, make_module, projective, simple

logger = logging.getLogger(__name__)

BUILTIN_RE = re.compile(r"^([PIS])(.+)$")
SHIFTED_RE = re.compile(r"^P(.+)\[(\d+)\]$")
VECTOR_RE = re.compile(r"^\(\s*\d+(?:\s*,\s*\d+)*\s*\)$")


class Workspace:
    def __init__(self, document: WorkbenchDocument, config: Optional[WorkbenchConfig] = None):
        self.document = document
        self.config = config or WorkbenchConfig()
        linalg.set_seed(self.config.seed)
        self.field = self.config.make_field()
        self.algebra = algebra_from_document(document.algebra, self.field, name=document.name or "A")
        self.modules: Dict[str, FDModule] = {}
        self._universe: Optional[List[FDModule]] = None
        for k, doc in enumerate(document.modules, start=1):
            name = doc.name or f"M{k}"
            if name in self.modules:
                raise InputError(f"module {name} declared twice", witness=name)
            maps = {label: linalg.from_rows(rows, self.field, cols=self._source_dim(label, doc.dims))
                    for label, rows in doc.maps.items()}
            self.modules[name] = make_module(self.algebra, doc.dims, maps, name=name)
        logger.info("workspace %s over %s: %d vertices, %d declared modules", self.algebra.name,
                    linalg.field_label(self.field), self.algebra.num_vertices, len(self.modules))

    @classmethod
    def from_file(cls, path: str, config: Optional[WorkbenchConfig] = None) -> "Workspace":
        return cls(load_document(path), config)

    def _source_dim(self, label: str, dims: Sequence[int]) -> int:
        arrow = self.algebra.arrows.get(label)
        if arrow is None:
            raise UnknownReferenceError(f"unknown arrow {label!r}")
        return dims[self.algebra.vertex_index(arrow.src)]

    def universe(self) -> List[FDModule]:
        """ind A under the configured dimension cap."""
        if self._universe is None:
            self._universe = enumerate_indecomposables(self.algebra, self.config.cap_dim)
        return self._universe

    def module(self, ref: str) -> FDModule:
        ref = ref.strip()
        if ref in self.modules:
            return self.modules[ref]
        if VECTOR_RE.match(ref):
            dims = [int(d) for d in ref.strip("()").split(",")]
            if len(dims) != self.algebra.num_vertices:
                raise UnknownReferenceError(f"{ref} has {len(dims)} entries for {self.algebra.num_vertices} vertices")
            return generic_module(self.algebra, dims, name=ref)
        match = BUILTIN_RE.match(ref)
        if match and match.group(2) in self.algebra.vertices:
            build = {"P": projective, "I": injective, "S": simple}[match.group(1)]
            return build(self.algebra, match.group(2))
        raise UnknownReferenceError(f"unknown module {ref!r}", witness=ref)

    def member(self, ref: str) -> LocalizingMember:
        match = SHIFTED_RE.match(ref.strip())
        if match:
            v, shift = match.group(1), int(match.group(2))
            if shift != 1 or v not in self.algebra.vertices:
                raise UnknownReferenceError(f"unknown shifted projective {ref!r}", witness=ref)
            return shifted_projective(self.algebra, v)
        return member(self.module(ref))

    def sigma(self, refs) -> List[LocalizingMember]:
        """A localizing set from a reference list or a string such as `I3+I2+I1`."""
        if isinstance(refs, str):
            refs = parse_references(refs)
        return [self.member(r) for r in refs]

    def chain_sigmas(self) -> List[List[LocalizingMember]]:
        return [self.sigma(step) for step in self.document.chain]

    def section_classes(self) -> List[List[FDModule]]:
        return [[self.module(r) for r in group] for group in self.document.sections]
