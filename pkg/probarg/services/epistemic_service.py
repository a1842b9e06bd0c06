# probarg/services/epistemic_service.py
import logging
from typing import FrozenSet, Iterable, Optional

import numpy as np

from probarg.core.config import get_settings
from probarg.core.errors import InvalidUsage, TooLarge
from probarg.models.framework import ArgumentationFramework
from probarg.models.labelling import LabelValue, Labelling
from probarg.models.probability import JointDistribution, MarginalAssignment, PartialAssignment

logger = logging.getLogger(__name__)

CONGRUENT_VALUE = {LabelValue.IN: 1.0, LabelValue.OUT: 0.0, LabelValue.UNDEC: 0.5}


def _check_power_set(af: ArgumentationFramework, what: str) -> None:
    cap = get_settings().power_set_cap
    if af.size > cap:
        raise TooLarge(af.size, cap, what)


def membership_matrix(n: int) -> np.ndarray:
    """(n, 2^n) 0/1 matrix; entry [i, mask] says whether bit i is set in mask"""
    masks = np.arange(1 << n)
    return ((masks[None, :] >> np.arange(n)[:, None]) & 1).astype(float)


def marginals(p: JointDistribution) -> MarginalAssignment:
    af = p.framework
    values = membership_matrix(af.size) @ p.weights if af.size else np.zeros(0)
    return MarginalAssignment.from_vector(af, values)


def product_joint(m: MarginalAssignment) -> JointDistribution:
    """Independent-coins joint whose marginals are ``m``"""
    af = m.framework
    _check_power_set(af, "product joint")
    weights = np.ones(1)
    for value in m.values:
        weights = np.concatenate([weights * (1.0 - value), weights * value])
    return JointDistribution(framework=af, weights=weights)


def point_mass(af: ArgumentationFramework, extension: Iterable[str]) -> JointDistribution:
    _check_power_set(af, "point mass")
    mask = 0
    for name in extension:
        mask |= 1 << af.index_of(name)
    weights = np.zeros(1 << af.size)
    weights[mask] = 1.0
    return JointDistribution(framework=af, weights=weights)


def uniform_joint(af: ArgumentationFramework) -> JointDistribution:
    _check_power_set(af, "uniform joint")
    size = 1 << af.size
    return JointDistribution(framework=af, weights=np.full(size, 1.0 / size))


def entropy(p: JointDistribution) -> float:
    """Shannon entropy in nats, 0 log 0 = 0"""
    weights = p.weights[p.weights > 0.0]
    return float(-(weights * np.log(weights)).sum()) + 0.0


def binary_entropy(values) -> np.ndarray:
    x = np.asarray(values, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        first = np.where(x > 0.0, -x * np.log(np.where(x > 0.0, x, 1.0)), 0.0)
        second = np.where(x < 1.0, -(1.0 - x) * np.log(np.where(x < 1.0, 1.0 - x, 1.0)), 0.0)
    return first + second


def marginal_entropy(m: MarginalAssignment) -> float:
    """Entropy of ``product_joint(m)`` without materializing the 2^n weights"""
    return float(binary_entropy(m.values).sum()) + 0.0


def epistemic_labelling(m: MarginalAssignment, threshold_tol: Optional[float] = None) -> Labelling:
    band = get_settings().label_band if threshold_tol is None else threshold_tol
    labels = []
    for value in m.values:
        if value > 0.5 + band:
            labels.append(LabelValue.IN)
        elif value < 0.5 - band:
            labels.append(LabelValue.OUT)
        else:
            labels.append(LabelValue.UNDEC)
    return Labelling(framework=m.framework, labels=tuple(labels))


def epistemic_extension(m: MarginalAssignment, threshold_tol: Optional[float] = None) -> FrozenSet[str]:
    return frozenset(epistemic_labelling(m, threshold_tol).names_with(LabelValue.IN))


def _same_framework(*frameworks: ArgumentationFramework) -> None:
    first = frameworks[0]
    for other in frameworks[1:]:
        if other != first:
            raise InvalidUsage("values are bound to different frameworks")


def is_congruent(labelling: Labelling, m: MarginalAssignment, tol: Optional[float] = None) -> bool:
    _same_framework(labelling.framework, m.framework)
    tol = get_settings().congruence_tol if tol is None else tol
    return all(
        abs(value - CONGRUENT_VALUE[label]) <= tol for label, value in zip(labelling.labels, m.values)
    )


def congruent_assignment(labelling: Labelling) -> MarginalAssignment:
    return MarginalAssignment(
        framework=labelling.framework,
        values=tuple(CONGRUENT_VALUE[label] for label in labelling.labels),
    )


def is_compliant(p: MarginalAssignment, pi: PartialAssignment, tol: Optional[float] = None) -> bool:
    _same_framework(p.framework, pi.framework)
    tol = get_settings().property_tol if tol is None else tol
    return all(abs(p.get(name) - value) <= tol for name, value in pi.values.items())


def convex_combine(p1: MarginalAssignment, p2: MarginalAssignment, delta: float) -> MarginalAssignment:
    """Pointwise delta * p1 + (1 - delta) * p2"""
    _same_framework(p1.framework, p2.framework)
    if not 0.0 <= delta <= 1.0:
        raise InvalidUsage(f"mixing weight {delta} outside [0, 1]")
    return MarginalAssignment.from_vector(p1.framework, delta * p1.vector + (1.0 - delta) * p2.vector)


__all__ = [
    "membership_matrix",
    "marginals",
    "product_joint",
    "point_mass",
    "uniform_joint",
    "entropy",
    "binary_entropy",
    "marginal_entropy",
    "epistemic_labelling",
    "epistemic_extension",
    "is_congruent",
    "congruent_assignment",
    "is_compliant",
    "convex_combine",
]
