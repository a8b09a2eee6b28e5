from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from models.config import WorkbenchConfig
from models.reports import (ChainReport, ClassificationReport, EndAlgebraReport, FinitenessReport, HeartReport,
                            NSectionReport, SiltingReport, TorsionPairReport)


class PipelineStage(str, Enum):
    LOAD = "LOAD"
    CHAIN = "CHAIN"
    SILTING = "SILTING"
    END_ALGEBRA = "END_ALGEBRA"
    NSECTION = "NSECTION"
    CLASSIFY = "CLASSIFY"
    DONE = "DONE"
    FAILED = "FAILED"


class PipelineState(BaseModel):
    """Everything the verify pipeline carries between stages.

    Computational objects (workspace, chain, silting complex, n-section) ride along
    as arbitrary types; reports are the serializable outcome.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    source: str
    config: WorkbenchConfig = Field(default_factory=WorkbenchConfig)
    stage: PipelineStage = PipelineStage.LOAD
    error: Optional[str] = None
    exit_code: int = 0

    workspace: Any = None
    chain: Any = None
    silting: Any = None
    context: Any = None
    functor: Any = None
    section: Any = None

    chain_report: Optional[ChainReport] = None
    heart_report: Optional[HeartReport] = None
    silting_report: Optional[SiltingReport] = None
    end_algebra_report: Optional[EndAlgebraReport] = None
    nsection_report: Optional[NSectionReport] = None
    torsion_report: Optional[TorsionPairReport] = None
    finiteness_reports: List[FinitenessReport] = Field(default_factory=list)
    hom_exchange_failures: List[str] = Field(default_factory=list)
    classification_report: Optional[ClassificationReport] = None
    notes: List[str] = Field(default_factory=list)

    messages: List[Dict[str, Any]] = Field(default_factory=list)
    started_at: datetime = Field(default_factory=datetime.now)

    def add_message(self, stage: str, content: str, metadata: Optional[Dict] = None):
        message = {
            "stage": stage,
            "content": content,
            "timestamp": datetime.now().isoformat(),
            "metadata": metadata or {}
        }
        self.messages.append(message)

    def fail(self, message: str, exit_code: int):
        self.add_message(self.stage.value, message, {"exit_code": exit_code})
        self.error = message
        self.exit_code = exit_code
        self.stage = PipelineStage.FAILED

    @property
    def failed(self) -> bool:
        return self.stage == PipelineStage.FAILED


class VerifySummary(BaseModel):
    """JSON document printed by `verify`."""

    source: str
    ok: bool
    exit_code: int
    error: Optional[str] = None
    chain: Optional[ChainReport] = None
    heart: Optional[HeartReport] = None
    silting: Optional[SiltingReport] = None
    end_algebra: Optional[EndAlgebraReport] = None
    nsection: Optional[NSectionReport] = None
    torsion_pairs: Optional[TorsionPairReport] = None
    finiteness: List[FinitenessReport] = Field(default_factory=list)
    hom_exchange_failures: List[str] = Field(default_factory=list)
    classification: Optional[ClassificationReport] = None
    notes: List[str] = Field(default_factory=list)
