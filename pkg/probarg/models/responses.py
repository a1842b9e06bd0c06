# probarg/models/responses.py
from pydantic import BaseModel, Field
from typing import Dict, List, Optional

from probarg.models.constraints import CompletionResult
from probarg.models.labelling import LabelValue, Labelling
from probarg.models.properties import PropertyId, PropertyReport, PropositionResult


class LabellingOut(BaseModel):
    in_: List[str] = Field(serialization_alias="in")
    out: List[str]
    undec: List[str]

    @classmethod
    def from_labelling(cls, labelling: Labelling) -> "LabellingOut":
        return cls(
            in_=list(labelling.names_with(LabelValue.IN)),
            out=list(labelling.names_with(LabelValue.OUT)),
            undec=list(labelling.names_with(LabelValue.UNDEC)),
        )


class PropertyOut(BaseModel):
    property: PropertyId
    holds: bool
    violations: List[str] = []

    @classmethod
    def from_report(cls, report: PropertyReport) -> "PropertyOut":
        return cls(
            property=report.property,
            holds=report.holds,
            violations=[v.describe() for v in report.violations],
        )


class CompletionOut(BaseModel):
    status: str
    assignment: Optional[Dict[str, float]] = None
    entropy: Optional[float] = None
    kkt_residual: Optional[float] = None
    iterations: int = 0
    certificate: List[str] = []

    @classmethod
    def from_result(cls, result: CompletionResult) -> "CompletionOut":
        return cls(
            status=result.status.value,
            assignment=result.assignment.as_dict() if result.assignment is not None else None,
            entropy=result.entropy,
            kkt_residual=result.kkt_residual,
            iterations=result.iterations,
            certificate=result.certificate,
        )


class CommandResult(BaseModel):
    """What a command produced: text lines for stdout plus the JSON view of the same content"""

    command: str
    exit_code: int = 0
    lines: List[str] = Field(default=[], exclude=True)
    labellings: Optional[List[LabellingOut]] = None
    extension: Optional[List[str]] = None
    properties: Optional[List[PropertyOut]] = None
    completion: Optional[CompletionOut] = None
    verify: Optional[List[PropositionResult]] = None

    def to_text(self) -> str:
        return "".join(f"{line}\n" for line in self.lines)

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2) + "\n"
