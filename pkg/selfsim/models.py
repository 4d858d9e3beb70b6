from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

# --- Numeric results ---

class Spectrum(BaseModel):
    values: list[float]
    multiplicities: Optional[list[int]] = None
    tolerance: float
    dimension: int
    seed: Optional[int] = None


class RecursionSample(BaseModel):
    point: list[float]
    direct: float
    recursive: float
    relative_error: float
    base_error: Optional[float] = None


class RecursionCheck(BaseModel):
    name: str
    level: int
    seed: int
    tolerance: float
    passed: bool
    samples: list[RecursionSample]

    def __bool__(self):
        return self.passed


# --- Inputs ---

class DigitSystemConfig(BaseModel):
    """JSON form of a digit system: matrix rows of rationals like "1/2" and integer digit vectors."""

    matrix: list[list[str]]
    digits: list[list[int]]

    @field_validator("matrix", mode="before")
    @classmethod
    def stringify(cls, rows):
        return [[str(x) for x in row] for row in rows]


class Invocation(BaseModel):
    model_config = ConfigDict(extra="forbid")

    subcommand: str
    source: Optional[str] = None
    params: dict[str, Any] = Field(default_factory=dict)
    output_format: Literal["json", "text", "dot", "csv", "pgm"] = "json"
    output_path: Optional[str] = None
    seed: int = 0
    tolerance: float = 1e-10


# --- Reports ---

class NucleusReport(BaseModel):
    group: str
    contracting: bool
    size: Optional[int] = None
    elements: list[str] = []
    cap: int
    open_set_condition: Optional[bool] = None


class GrowthReport(BaseModel):
    basepoint: str
    radius: int
    sizes: list[int]


class HausdorffReport(BaseModel):
    group: str
    level: int
    quotient_order: int
    exact: Optional[str] = None
    value: float
