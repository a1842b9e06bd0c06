# probarg/services/property_service.py
import logging
from typing import Callable, Dict, FrozenSet, List, Optional, Union

from probarg.core.config import get_settings
from probarg.core.errors import ConsistencyError
from probarg.models.framework import ArgumentationFramework
from probarg.models.probability import MarginalAssignment
from probarg.models.properties import PROPERTY_ORDER, PropertyId, PropertyReport, Restriction, Violation
from probarg.models.labelling import Semantics
from probarg.services.epistemic_service import congruent_assignment
from probarg.services.labelling_service import enumerate_complete

logger = logging.getLogger(__name__)

TERNARY_VALUES = (0.0, 0.5, 1.0)

# Semantics each restriction on complete probability functions corresponds to
RESTRICTION_SEMANTICS = {
    Restriction.NONE: Semantics.COMPLETE,
    Restriction.NO_HALF: Semantics.STABLE,
    Restriction.MAX_ONES: Semantics.PREFERRED,
    Restriction.MAX_ZEROS: Semantics.PREFERRED,
    Restriction.MAX_HALVES: Semantics.GROUNDED,
    Restriction.MIN_ONES: Semantics.GROUNDED,
    Restriction.MIN_ZEROS: Semantics.GROUNDED,
    Restriction.MIN_HALVES: Semantics.SEMI_STABLE,
}


def _attack_pairs(af: ArgumentationFramework):
    return [(af.arguments[a], af.arguments[b], a, b) for a, b in af.attack_indices()]


def _coherence(af, values, tol) -> List[Violation]:
    violations = []
    for a, b, i, j in _attack_pairs(af):
        if values[i] > 1.0 - values[j] + tol:
            violations.append(
                Violation(constraint=f"{a}->{b}: P({a}) <= 1 - P({b})", arguments=(a, b), lhs=values[i], rhs=1.0 - values[j])
            )
    return violations


def _semi_founded(af, values, tol) -> List[Violation]:
    violations = []
    for i in af.unattacked_indices():
        if values[i] < 0.5 - tol:
            name = af.arguments[i]
            violations.append(Violation(constraint=f"{name} unattacked: P({name}) >= 0.5", arguments=(name,), lhs=values[i], rhs=0.5))
    return violations


def _founded(af, values, tol) -> List[Violation]:
    violations = []
    for i in af.unattacked_indices():
        if abs(values[i] - 1.0) > tol:
            name = af.arguments[i]
            violations.append(Violation(constraint=f"{name} unattacked: P({name}) = 1", arguments=(name,), lhs=values[i], rhs=1.0))
    return violations


def _optimism(af, values, tol, attacked_only: bool) -> List[Violation]:
    violations = []
    for i, name in enumerate(af.arguments):
        attacker_indices = af.attacker_indices(i)
        if attacked_only and not attacker_indices:
            continue
        bound = 1.0 - sum(values[j] for j in attacker_indices)
        if values[i] < bound - tol:
            involved = (name,) + tuple(af.arguments[j] for j in attacker_indices if j != i)
            violations.append(
                Violation(constraint=f"{name}: P({name}) >= 1 - sum of attackers", arguments=involved, lhs=values[i], rhs=bound)
            )
    return violations


def _semi_optimistic(af, values, tol):
    return _optimism(af, values, tol, attacked_only=True)


def _optimistic(af, values, tol):
    return _optimism(af, values, tol, attacked_only=False)


def _justifiable(af, values, tol):
    return _coherence(af, values, tol) + _optimistic(af, values, tol)


def _ternary(af, values, tol) -> List[Violation]:
    violations = []
    for name, value in zip(af.arguments, values):
        nearest = min(TERNARY_VALUES, key=lambda t: abs(value - t))
        if abs(value - nearest) > tol:
            violations.append(Violation(constraint=f"{name}: P({name}) in {{0, 0.5, 1}}", arguments=(name,), lhs=value, rhs=nearest))
    return violations


def _rational(af, values, tol) -> List[Violation]:
    violations = []
    for a, b, i, j in _attack_pairs(af):
        if values[i] > 0.5 + tol and values[j] > 0.5 + tol:
            violations.append(
                Violation(constraint=f"{a}->{b}: P({a}) > 0.5 implies P({b}) <= 0.5", arguments=(a, b), lhs=values[j], rhs=0.5)
            )
    return violations


def _fixed(target: float):
    def checker(af, values, tol) -> List[Violation]:
        return [
            Violation(constraint=f"{name}: P({name}) = {target:g}", arguments=(name,), lhs=value, rhs=target)
            for name, value in zip(af.arguments, values)
            if abs(value - target) > tol
        ]

    return checker


def _involutary(af, values, tol) -> List[Violation]:
    violations = []
    for a, b, i, j in _attack_pairs(af):
        if abs(values[i] - (1.0 - values[j])) > tol:
            violations.append(
                Violation(constraint=f"{a}->{b}: P({a}) = 1 - P({b})", arguments=(a, b), lhs=values[i], rhs=1.0 - values[j])
            )
    return violations


CHECKERS: Dict[PropertyId, Callable] = {
    PropertyId.COH: _coherence,
    PropertyId.SFOU: _semi_founded,
    PropertyId.FOU: _founded,
    PropertyId.SOPT: _semi_optimistic,
    PropertyId.OPT: _optimistic,
    PropertyId.JUS: _justifiable,
    PropertyId.TER: _ternary,
    PropertyId.RAT: _rational,
    PropertyId.NEU: _fixed(0.5),
    PropertyId.INV: _involutary,
    PropertyId.MAX: _fixed(1.0),
    PropertyId.MIN: _fixed(0.0),
}


def _tolerance(tol: Optional[float]) -> float:
    return get_settings().property_tol if tol is None else tol


def check(
    af: ArgumentationFramework,
    m: MarginalAssignment,
    prop: Union[PropertyId, str],
    tol: Optional[float] = None,
) -> PropertyReport:
    """Check one property; the report lists every violated constraint"""
    prop = PropertyId(prop)
    if m.framework != af:
        m = MarginalAssignment.from_mapping(af, m.as_dict())
    violations = CHECKERS[prop](af, m.values, _tolerance(tol))
    return PropertyReport(property=prop, holds=not violations, violations=violations)


def holds(af: ArgumentationFramework, values, prop: PropertyId, tol: Optional[float] = None) -> bool:
    """Membership test on a raw value vector aligned with ``af.arguments``"""
    return not CHECKERS[PropertyId(prop)](af, tuple(float(v) for v in values), _tolerance(tol))


def classify(af: ArgumentationFramework, m: MarginalAssignment, tol: Optional[float] = None) -> FrozenSet[PropertyId]:
    """Every property ``m`` satisfies"""
    return frozenset(prop for prop in PROPERTY_ORDER if check(af, m, prop, tol).holds)


def _snap(value: float, tol: float) -> Optional[float]:
    for target in TERNARY_VALUES:
        if abs(value - target) <= tol:
            return target
    return None


def is_complete_prob_function_by_definition(
    af: ArgumentationFramework, m: MarginalAssignment, tol: Optional[float] = None
) -> bool:
    """Conditions of the definition, read on the ternary-snapped values"""
    tol = _tolerance(tol)
    snapped = [_snap(value, tol) for value in m.values]
    if any(value is None for value in snapped):
        return False

    for i, value in enumerate(snapped):
        attacker_values = [snapped[j] for j in af.attacker_indices(i)]
        if value == 1.0 and any(v != 0.0 for v in attacker_values):
            return False
        if all(v == 0.0 for v in attacker_values) and value != 1.0:
            return False
        if value == 0.0 and 1.0 not in attacker_values:
            return False
        if 1.0 in attacker_values and value != 0.0:
            return False
    return True


def is_complete_prob_function_by_properties(
    af: ArgumentationFramework, m: MarginalAssignment, tol: Optional[float] = None
) -> bool:
    """TER, COH and FOU together; necessary for a complete probability function"""
    return all(check(af, m, prop, tol).holds for prop in (PropertyId.TER, PropertyId.COH, PropertyId.FOU))


def is_complete_prob_function(
    af: ArgumentationFramework, m: MarginalAssignment, tol: Optional[float] = None
) -> bool:
    """Complete probability function test.

    TER, COH and FOU together are necessary but not sufficient (a mutual
    attack valued 0.5 / 0 passes them), so the definition decides and the
    property route is asserted as a consequence.
    """
    by_definition = is_complete_prob_function_by_definition(af, m, tol)
    if by_definition and not is_complete_prob_function_by_properties(af, m, tol):
        raise ConsistencyError("complete probability function fails TER, COH or FOU")
    return by_definition


def _count_set(m: MarginalAssignment, target: float) -> FrozenSet[str]:
    return frozenset(name for name, value in zip(m.framework.arguments, m.values) if value == target)


def select_by_restriction(af: ArgumentationFramework, restriction: Union[Restriction, str]) -> List[MarginalAssignment]:
    """Complete probability functions under a cardinality restriction.

    Maximal and minimal are taken by set inclusion on the arguments carrying
    the restricted value. Output follows the labelling enumeration order.
    """
    restriction = Restriction(restriction)
    candidates = [congruent_assignment(l) for l in enumerate_complete(af)]

    if restriction == Restriction.NONE:
        return candidates
    if restriction == Restriction.NO_HALF:
        return [m for m in candidates if 0.5 not in m.values]

    target = {
        Restriction.MAX_ONES: 1.0,
        Restriction.MIN_ONES: 1.0,
        Restriction.MAX_ZEROS: 0.0,
        Restriction.MIN_ZEROS: 0.0,
        Restriction.MAX_HALVES: 0.5,
        Restriction.MIN_HALVES: 0.5,
    }[restriction]
    maximize = restriction.value.startswith("max")

    sets = [_count_set(m, target) for m in candidates]
    selected = []
    for m, own in zip(candidates, sets):
        if maximize:
            dominated = any(own < other for other in sets)
        else:
            dominated = any(other < own for other in sets)
        if not dominated:
            selected.append(m)
    return selected


__all__ = [
    "RESTRICTION_SEMANTICS",
    "check",
    "classify",
    "holds",
    "is_complete_prob_function",
    "is_complete_prob_function_by_definition",
    "is_complete_prob_function_by_properties",
    "select_by_restriction",
]
