from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from models.quiver import Arrow


class AlgebraDocument(BaseModel):
    """JSON form of a bound quiver algebra; relations are DSL strings such as "a*c - b*c"."""

    model_config = ConfigDict(extra="forbid")

    vertices: List[str]
    arrows: List[Arrow] = Field(default_factory=list)
    relations: List[str] = Field(default_factory=list)


class ModuleDocument(BaseModel):
    """A representation: `maps[label]` has one row per target dimension.

    Entries are integers or exact scalar strings such as "-1/3". Unnamed modules are
    numbered M1, M2, ... in declaration order.
    """

    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    dims: List[int]
    maps: Dict[str, List[List[Union[int, str]]]] = Field(default_factory=dict)


class WorkbenchDocument(BaseModel):
    """Everything one input file can declare."""

    algebra: AlgebraDocument
    modules: List[ModuleDocument] = Field(default_factory=list)
    chain: List[List[str]] = Field(default_factory=list)
    sections: List[List[str]] = Field(default_factory=list)
    name: Optional[str] = None
