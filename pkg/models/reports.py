from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, computed_field


class CheckItem(BaseModel):
    name: str
    passed: bool
    detail: str = ""
    witness: Optional[str] = None


class Report(BaseModel):
    """Itemized checks; a report is ok when every check passed."""

    checks: List[CheckItem] = Field(default_factory=list)

    @computed_field
    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add_check(self, name: str, passed: bool, detail: str = "", witness: Optional[str] = None) -> bool:
        self.checks.append(CheckItem(name=name, passed=bool(passed), detail=detail, witness=witness))
        return bool(passed)

    def failures(self) -> List[CheckItem]:
        return [c for c in self.checks if not c.passed]


class ModuleEntry(BaseModel):
    label: str
    dims: Tuple[int, ...]
    multiplicity: int = 1
    shift: int = 0


class LocalizationReport(Report):
    sigma: List[str] = Field(default_factory=list)
    dimension: int = 0
    ring_module: List[ModuleEntry] = Field(default_factory=list)
    kernel: List[ModuleEntry] = Field(default_factory=list)
    cokernel: List[ModuleEntry] = Field(default_factory=list)
    minimal_silting: List[ModuleEntry] = Field(default_factory=list)
    presentation: Optional[str] = None


class PerpReport(Report):
    sigma: List[str] = Field(default_factory=list)
    expected_rank: int = 0
    members: List[ModuleEntry] = Field(default_factory=list)


class ConnectingMapReport(BaseModel):
    position: int
    kernel: List[ModuleEntry] = Field(default_factory=list)
    cokernel: List[ModuleEntry] = Field(default_factory=list)


class ChainReport(Report):
    length: int = 0
    steps: List[LocalizationReport] = Field(default_factory=list)
    connecting_maps: List[ConnectingMapReport] = Field(default_factory=list)
    partition: List[List[str]] = Field(default_factory=list)


class SiltingReport(Report):
    summands: List[ModuleEntry] = Field(default_factory=list)
    simples: int = 0


class EndAlgebraReport(Report):
    name: str = "B"
    dimension: int = 0
    vertices: Dict[str, str] = Field(default_factory=dict)
    arrows: List[Tuple[str, str, str]] = Field(default_factory=list)
    relations: List[str] = Field(default_factory=list)
    cartan: List[List[int]] = Field(default_factory=list)
    nilpotency: int = 0
    dsl: str = ""


class StratumEntry(BaseModel):
    index: int
    members: List[ModuleEntry] = Field(default_factory=list)


class HeartReport(Report):
    strata: List[StratumEntry] = Field(default_factory=list)
    unclassified: List[str] = Field(default_factory=list)


class NSectionReport(Report):
    classes: List[List[str]] = Field(default_factory=list)
    origins: List[List[str]] = Field(default_factory=list)


class TorsionPairEntry(BaseModel):
    cut: int
    torsion: List[str] = Field(default_factory=list)
    torsion_free: List[str] = Field(default_factory=list)


class TorsionPairReport(Report):
    pairs: List[TorsionPairEntry] = Field(default_factory=list)


class ApproximationEntry(BaseModel):
    module: str
    target_class: int
    side: str
    canonical_terms: Dict[str, int] = Field(default_factory=dict)
    minimal_terms: Dict[str, int] = Field(default_factory=dict)


class FinitenessReport(Report):
    approximations: List[ApproximationEntry] = Field(default_factory=list)


class DimensionRow(BaseModel):
    label: str
    dims: Tuple[int, ...]
    projective_dimension: int
    injective_dimension: int
    left_part: bool = False
    right_part: bool = False


class ClassificationReport(Report):
    global_dimension: int = 0
    rows: List[DimensionRow] = Field(default_factory=list)
    flags: Dict[str, Optional[bool]] = Field(default_factory=dict)
    outside_left_right: List[ModuleEntry] = Field(default_factory=list)
    notes: Dict[str, str] = Field(default_factory=dict)


class ARQuiverReport(Report):
    vertices: List[ModuleEntry] = Field(default_factory=list)
    arrows: List[Tuple[str, str, int]] = Field(default_factory=list)
    translate: List[Tuple[str, str]] = Field(default_factory=list)


class SpaceReport(Report):
    """Hom, Ext and translate queries."""

    kind: str
    source: str
    target: Optional[str] = None
    dimension: Optional[int] = None
    result: Optional[ModuleEntry] = None


class HeartMapReport(Report):
    shift: int
    kernel: List[ModuleEntry] = Field(default_factory=list)
    cokernel: List[ModuleEntry] = Field(default_factory=list)
    outside: List[ModuleEntry] = Field(default_factory=list)


class TraceApproximationReport(Report):
    module: str
    approximation: List[ModuleEntry] = Field(default_factory=list)
    trace: List[ModuleEntry] = Field(default_factory=list)


class ModuleListReport(Report):
    modules: List[ModuleEntry] = Field(default_factory=list)
