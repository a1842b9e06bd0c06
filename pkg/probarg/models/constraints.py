# probarg/models/constraints.py
from pydantic import BaseModel, ConfigDict, model_validator
from enum import Enum
from typing import Dict, List, Optional, Tuple
import numpy as np

from probarg.models.framework import ArgumentationFramework
from probarg.models.probability import MarginalAssignment
from probarg.models.properties import PropertyId


class Comparator(str, Enum):
    LE = "<="
    GE = ">="
    EQ = "=="


class LinearConstraint(BaseModel):
    """sum(coefficients[A] * p_A) <comparator> constant"""

    model_config = ConfigDict(frozen=True)

    coefficients: Dict[str, float]
    comparator: Comparator
    constant: float
    provenance: str

    def evaluate(self, values: Dict[str, float]) -> float:
        return sum(coefficient * values[name] for name, coefficient in self.coefficients.items())

    def is_satisfied(self, values: Dict[str, float], tol: float) -> bool:
        lhs = self.evaluate(values)
        if self.comparator == Comparator.LE:
            return lhs <= self.constant + tol
        if self.comparator == Comparator.GE:
            return lhs >= self.constant - tol
        return abs(lhs - self.constant) <= tol

    def signature(self) -> Tuple:
        return (tuple(sorted(self.coefficients.items())), self.comparator.value, self.constant)

    def describe(self) -> str:
        terms = " + ".join(
            f"{name}" if coefficient == 1.0 else f"{coefficient:g}*{name}"
            for name, coefficient in self.coefficients.items()
        )
        return f"{terms} {self.comparator.value} {self.constant:g}  ({self.provenance})"


class LinearConstraintSystem(BaseModel):
    """Linear constraints on the marginals p_A, one variable per argument, boxes [0, 1]"""

    model_config = ConfigDict(frozen=True)

    framework: ArgumentationFramework
    constraints: Tuple[LinearConstraint, ...] = ()

    @model_validator(mode="after")
    def _known_variables(self) -> "LinearConstraintSystem":
        for constraint in self.constraints:
            for name in constraint.coefficients:
                if name not in self.framework:
                    raise ValueError(f"constraint {constraint.provenance} references unknown {name!r}")
        return self

    @property
    def equalities(self) -> Tuple[LinearConstraint, ...]:
        return tuple(c for c in self.constraints if c.comparator == Comparator.EQ)

    def violations(self, m: MarginalAssignment, tol: float) -> List[LinearConstraint]:
        values = m.as_dict()
        return [c for c in self.constraints if not c.is_satisfied(values, tol)]

    def is_satisfied_by(self, m: MarginalAssignment, tol: float) -> bool:
        return not self.violations(m, tol)

    def matrices(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Dense (A_ub, b_ub, A_eq, b_eq) with every row in ``<=`` / ``==`` form"""
        n = self.framework.size
        upper_rows, upper_rhs, eq_rows, eq_rhs = [], [], [], []
        for constraint in self.constraints:
            row = np.zeros(n)
            for name, coefficient in constraint.coefficients.items():
                row[self.framework.index_of(name)] += coefficient
            if constraint.comparator == Comparator.EQ:
                eq_rows.append(row)
                eq_rhs.append(constraint.constant)
            elif constraint.comparator == Comparator.LE:
                upper_rows.append(row)
                upper_rhs.append(constraint.constant)
            else:
                upper_rows.append(-row)
                upper_rhs.append(-constraint.constant)
        return (
            np.array(upper_rows, dtype=float).reshape(len(upper_rows), n),
            np.array(upper_rhs, dtype=float),
            np.array(eq_rows, dtype=float).reshape(len(eq_rows), n),
            np.array(eq_rhs, dtype=float),
        )

    def subsystem(self, keep: List[int]) -> "LinearConstraintSystem":
        return LinearConstraintSystem(
            framework=self.framework,
            constraints=tuple(self.constraints[i] for i in keep),
        )


class CompletionStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"


class CompletionResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    status: CompletionStatus
    assignment: Optional[MarginalAssignment] = None
    entropy: Optional[float] = None
    kkt_residual: Optional[float] = None
    iterations: int = 0
    certificate: List[str] = []

    @model_validator(mode="after")
    def _assignment_when_optimal(self) -> "CompletionResult":
        if self.status == CompletionStatus.OPTIMAL and self.assignment is None:
            raise ValueError("optimal completion needs an assignment")
        return self


class ConvexityViolation(BaseModel):
    model_config = ConfigDict(frozen=True)

    first: Tuple[float, ...]
    second: Tuple[float, ...]
    delta: float
    combined: Tuple[float, ...]


class ConvexityProbeReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    prop: Optional[PropertyId] = None
    label: str
    members: int
    pairs_tested: int
    expected_convex: bool
    violation_count: int = 0
    violations: List[ConvexityViolation] = []

    @property
    def found_violation(self) -> bool:
        return self.violation_count > 0
