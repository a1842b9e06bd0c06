# probarg/models/probability.py
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from typing import Dict, Iterable, Mapping, Tuple
import numpy as np

from probarg.core.errors import InvalidUsage, UnknownArgument
from probarg.models.framework import ArgumentationFramework

# Weights of a joint distribution must sum to one within this tolerance
SUM_TOLERANCE = 1e-9


def _check_unit_interval(values: Iterable[float]) -> None:
    for value in values:
        if not (0.0 <= value <= 1.0):
            raise ValueError(f"probability {value!r} outside [0, 1]")


class MarginalAssignment(BaseModel):
    """Per-argument probabilities P(A), aligned with the framework's argument order"""

    model_config = ConfigDict(frozen=True)

    framework: ArgumentationFramework
    values: Tuple[float, ...]

    @model_validator(mode="after")
    def _aligned(self) -> "MarginalAssignment":
        if len(self.values) != self.framework.size:
            raise ValueError(
                f"{len(self.values)} values for {self.framework.size} arguments"
            )
        _check_unit_interval(self.values)
        return self

    @classmethod
    def from_mapping(cls, af: ArgumentationFramework, values: Mapping[str, float]) -> "MarginalAssignment":
        for name in values:
            af.index_of(name)
        missing = [name for name in af.arguments if name not in values]
        if missing:
            raise InvalidUsage(f"assignment is missing {', '.join(missing)}")
        return cls(framework=af, values=tuple(float(values[name]) for name in af.arguments))

    @classmethod
    def from_vector(cls, af: ArgumentationFramework, vector) -> "MarginalAssignment":
        """Wrap solver output, clipping float noise just outside [0, 1]"""
        clipped = np.clip(np.asarray(vector, dtype=float), 0.0, 1.0)
        return cls(framework=af, values=tuple(float(v) for v in clipped))

    @classmethod
    def constant(cls, af: ArgumentationFramework, value: float) -> "MarginalAssignment":
        return cls(framework=af, values=(float(value),) * af.size)

    def get(self, name: str) -> float:
        return self.values[self.framework.index_of(name)]

    def as_dict(self) -> Dict[str, float]:
        return dict(zip(self.framework.arguments, self.values))

    @property
    def vector(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


class PartialAssignment(BaseModel):
    """Partial map argument -> probability (the beliefs a user actually stated)"""

    model_config = ConfigDict(frozen=True)

    framework: ArgumentationFramework
    values: Dict[str, float] = {}

    @model_validator(mode="after")
    def _bound(self) -> "PartialAssignment":
        for name in self.values:
            if name not in self.framework:
                raise UnknownArgument(name)
        _check_unit_interval(self.values.values())
        return self

    @classmethod
    def empty(cls, af: ArgumentationFramework) -> "PartialAssignment":
        return cls(framework=af, values={})

    @property
    def domain(self) -> Tuple[str, ...]:
        """dom(pi) in framework order"""
        return tuple(name for name in self.framework.arguments if name in self.values)

    def is_total(self) -> bool:
        return len(self.values) == self.framework.size

    def to_marginal(self) -> MarginalAssignment:
        return MarginalAssignment.from_mapping(self.framework, self.values)


class JointDistribution(BaseModel):
    """Probability function over all subsets of arguments.

    ``weights[mask]`` is P(E) where bit i of ``mask`` says whether the i-th
    argument belongs to E.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    framework: ArgumentationFramework
    weights: np.ndarray

    @field_validator("weights", mode="before")
    @classmethod
    def _as_array(cls, weights) -> np.ndarray:
        array = np.array(weights, dtype=float)
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def _normalized(self) -> "JointDistribution":
        expected = 1 << self.framework.size
        if self.weights.shape != (expected,):
            raise ValueError(f"expected {expected} weights, got shape {self.weights.shape}")
        if np.any(self.weights < 0.0) or np.any(self.weights > 1.0):
            raise ValueError("joint weights must lie in [0, 1]")
        total = float(self.weights.sum())
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"joint weights sum to {total}, not 1")
        return self

    def weight_of(self, members: Iterable[str]) -> float:
        mask = 0
        for name in members:
            mask |= 1 << self.framework.index_of(name)
        return float(self.weights[mask])
