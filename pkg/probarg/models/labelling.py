# probarg/models/labelling.py
from pydantic import BaseModel, ConfigDict, model_validator
from enum import Enum
from typing import Dict, Iterable, Optional, Tuple

from probarg.models.framework import ArgumentationFramework


class LabelValue(str, Enum):
    IN = "in"
    OUT = "out"
    UNDEC = "undec"


# Lexicographic order used for sorting labellings: in < out < undec
LABEL_RANK = {LabelValue.IN: 0, LabelValue.OUT: 1, LabelValue.UNDEC: 2}
LABEL_BY_RANK = (LabelValue.IN, LabelValue.OUT, LabelValue.UNDEC)


class Semantics(str, Enum):
    GROUNDED = "grounded"
    COMPLETE = "complete"
    PREFERRED = "preferred"
    STABLE = "stable"
    SEMI_STABLE = "semi-stable"


class Labelling(BaseModel):
    """Total map from the arguments of one framework to in/out/undec"""

    model_config = ConfigDict(frozen=True)

    framework: ArgumentationFramework
    labels: Tuple[LabelValue, ...]

    @model_validator(mode="after")
    def _total(self) -> "Labelling":
        if len(self.labels) != self.framework.size:
            raise ValueError(
                f"labelling has {len(self.labels)} labels for {self.framework.size} arguments"
            )
        return self

    @classmethod
    def from_ranks(cls, af: ArgumentationFramework, ranks: Iterable[int]) -> "Labelling":
        return cls(framework=af, labels=tuple(LABEL_BY_RANK[r] for r in ranks))

    @classmethod
    def from_sets(
        cls,
        af: ArgumentationFramework,
        in_: Iterable[str] = (),
        out: Iterable[str] = (),
    ) -> "Labelling":
        """Build a labelling from its in and out sets; everything else is undec"""
        labels = [LabelValue.UNDEC] * af.size
        for name in in_:
            labels[af.index_of(name)] = LabelValue.IN
        for name in out:
            labels[af.index_of(name)] = LabelValue.OUT
        return cls(framework=af, labels=tuple(labels))

    @classmethod
    def uniform(cls, af: ArgumentationFramework, value: LabelValue) -> "Labelling":
        return cls(framework=af, labels=(value,) * af.size)

    @property
    def ranks(self) -> Tuple[int, ...]:
        return tuple(LABEL_RANK[label] for label in self.labels)

    def names_with(self, value: LabelValue) -> Tuple[str, ...]:
        """Arguments carrying ``value``, in framework order"""
        return tuple(
            name for name, label in zip(self.framework.arguments, self.labels) if label == value
        )

    def as_dict(self) -> Dict[str, LabelValue]:
        return dict(zip(self.framework.arguments, self.labels))

    def sort_key(self) -> Tuple[int, ...]:
        return self.ranks

    def describe(self, value: Optional[LabelValue] = None) -> str:
        parts = []
        for label in LABEL_BY_RANK if value is None else (value,):
            parts.append(f"{label.value.upper()}: {' '.join(self.names_with(label))}".rstrip())
        return " / ".join(parts)
