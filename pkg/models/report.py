"""Pydantic models for CLI configuration and emitted reports."""

from enum import Enum
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from config.settings import settings


class ReportStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    WARN = "WARN"


class CliConfig(BaseModel):
    """Per-invocation numeric and output options."""

    model_config = ConfigDict(frozen=True)

    digits: int = Field(default_factory=lambda: settings.digits, ge=10)
    max_terms: int = Field(default_factory=lambda: settings.max_terms, ge=1)
    tol: float = Field(default_factory=lambda: settings.tol, gt=0)
    output_format: Literal["json", "csv", "plain"] = Field(
        default_factory=lambda: settings.output_format
    )


class Report(BaseModel):
    """One evaluated quantity or identity instance."""

    model_config = ConfigDict(frozen=True)

    command: str
    params: Dict[str, str]
    value: str
    error_estimate: str
    terms_used: int
    stop_reason: str
    oracle: Optional[str] = None
    deviation: Optional[str] = None
    status: ReportStatus
    warning: Optional[str] = None
    reference: Optional[str] = None
    reference_terms: Optional[int] = None

    @model_validator(mode="after")
    def _deviation_iff_oracle(self) -> "Report":
        if (self.oracle is None) != (self.deviation is None):
            raise ValueError("deviation must be present exactly when an oracle is")
        return self


class TableRow(BaseModel):
    """One row of a number or polynomial table."""

    model_config = ConfigDict(frozen=True)

    index: int
    entries: List[str]
