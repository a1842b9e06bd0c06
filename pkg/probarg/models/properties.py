# probarg/models/properties.py
from pydantic import BaseModel, ConfigDict, model_validator
from enum import Enum
from typing import List, Tuple


class PropertyId(str, Enum):
    COH = "COH"
    SFOU = "SFOU"
    FOU = "FOU"
    SOPT = "SOPT"
    OPT = "OPT"
    JUS = "JUS"
    TER = "TER"
    RAT = "RAT"
    NEU = "NEU"
    INV = "INV"
    MAX = "MAX"
    MIN = "MIN"


# Canonical order for reports and CLI output
PROPERTY_ORDER: Tuple[PropertyId, ...] = tuple(PropertyId)

# Properties whose classes are described by linear (in)equalities on marginals
LINEAR_PROPERTIES = frozenset(PropertyId) - {PropertyId.TER, PropertyId.RAT}


class Restriction(str, Enum):
    """Cardinality restrictions on complete probability functions"""

    NONE = "none"
    NO_HALF = "no_half"
    MAX_ONES = "max_ones"
    MAX_ZEROS = "max_zeros"
    MAX_HALVES = "max_halves"
    MIN_ONES = "min_ones"
    MIN_ZEROS = "min_zeros"
    MIN_HALVES = "min_halves"


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    constraint: str
    arguments: Tuple[str, ...]
    lhs: float
    rhs: float

    def describe(self) -> str:
        return f"{self.constraint} [{' '.join(self.arguments)}]: lhs={self.lhs:.9g} rhs={self.rhs:.9g}"


class PropertyReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    property: PropertyId
    holds: bool
    violations: List[Violation] = []

    @model_validator(mode="after")
    def _consistent(self) -> "PropertyReport":
        if self.holds != (not self.violations):
            raise ValueError("holds must be true exactly when there are no violations")
        return self


class PropositionResult(BaseModel):
    """Outcome of one checked proposition; ``note`` marks outcomes that hold by expectation"""

    model_config = ConfigDict(frozen=True)

    name: str
    ok: bool
    note: str = ""
    detail: str = ""
    checked: int = 0

    def line(self) -> str:
        status = "OK" if self.ok else "COUNTEREXAMPLE"
        return " ".join(part for part in (f"{self.name}: {status}", self.note, self.detail) if part)


class VerificationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    results: List[PropositionResult] = []

    @property
    def all_ok(self) -> bool:
        return all(result.ok for result in self.results)

    def lines(self) -> List[str]:
        return [result.line() for result in self.results]
