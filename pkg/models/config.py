import os
from enum import Enum
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from services import linalg
from services.errors import InputError

load_dotenv()

DEFAULT_SEED = 20240917


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
    DOT = "dot"


class WorkbenchConfig(BaseModel):
    field: str = "Q"
    seed: int = DEFAULT_SEED
    cap_dim: Optional[int] = Field(default=None, gt=0)
    output_format: OutputFormat = OutputFormat.TEXT
    log_level: str = "WARNING"

    @field_validator("field")
    @classmethod
    def _known_field(cls, value: str) -> str:
        return linalg.field_label(linalg.make_field(value))

    @field_validator("log_level")
    @classmethod
    def _upper(cls, value: str) -> str:
        return value.upper()

    def make_field(self):
        return linalg.make_field(self.field)


def _env(name: str) -> Optional[str]:
    value = os.getenv(name, "").strip()
    return value or None


def load_config(**overrides) -> WorkbenchConfig:
    """Environment (WORKBENCH_*) first, then explicit overrides that are not None."""
    values = {
        "field": _env("WORKBENCH_FIELD"),
        "seed": _env("WORKBENCH_SEED"),
        "cap_dim": _env("WORKBENCH_CAP_DIM"),
        "output_format": _env("WORKBENCH_FORMAT"),
        "log_level": _env("WORKBENCH_LOG_LEVEL"),
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return WorkbenchConfig(**{k: v for k, v in values.items() if v is not None})
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise InputError(f"invalid configuration {where}: {first['msg']}") from exc
