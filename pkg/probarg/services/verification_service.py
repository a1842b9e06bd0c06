# probarg/services/verification_service.py
"""Randomized and exhaustive checks of the structural results that relate
property classes, labellings and entropy, run against one framework.

Each check yields one ``PropositionResult``; the report keeps a fixed order
so the CLI output is stable for a given seed.
"""
import itertools
import logging
from typing import FrozenSet, Iterable, List, NamedTuple, Optional, Sequence

import numpy as np

from probarg.core.config import get_settings
from probarg.core.errors import ConsistencyError, Infeasible, TooLarge
from probarg.models.framework import ArgumentationFramework
from probarg.models.probability import MarginalAssignment, PartialAssignment
from probarg.models.properties import (
    PROPERTY_ORDER,
    PropertyId,
    PropositionResult,
    Restriction,
    VerificationReport,
)
from probarg.services import maxent_service, property_service
from probarg.services.epistemic_service import congruent_assignment, entropy, epistemic_labelling, marginals
from probarg.services.framework_service import odd_cycle_components
from probarg.services.labelling_service import (
    enumerate_admissible,
    enumerate_complete,
    grounded_fixpoint,
    is_admissible,
    is_complete,
    is_conflict_free,
    select,
    undec_set,
)
from probarg.utils.sampling import candidate_values, ternary_values

logger = logging.getLogger(__name__)

# Ternary assignments are scanned exhaustively up to this many arguments
EXHAUSTIVE_TERNARY_MAX = 4
ORACLE_TOL = 1e-5
ORACLE_PROPERTIES = ((PropertyId.COH,), (PropertyId.JUS,))

COH, SFOU, FOU, SOPT, OPT, JUS, TER, RAT, NEU, INV, MAX, MIN = PROPERTY_ORDER

INCLUSIONS = (
    ("JUS => COH", {JUS}, {COH}),
    ("COH => RAT", {COH}, {RAT}),
    ("NEU => INV", {NEU}, {INV}),
    ("INV => COH", {INV}, {COH}),
    ("INV => SOPT", {INV}, {SOPT}),
    ("MIN => COH", {MIN}, {COH}),
    ("MAX => OPT", {MAX}, {OPT}),
    ("FOU => SFOU", {FOU}, {SFOU}),
    ("OPT => SOPT+FOU", {OPT}, {SOPT, FOU}),
    ("SOPT+FOU => OPT", {SOPT, FOU}, {OPT}),
)


class _Sample(NamedTuple):
    values: np.ndarray
    classes: FrozenSet[PropertyId]


def format_values(values: Iterable[float]) -> str:
    return "(" + ", ".join(f"{float(v):.9g}" for v in values) + ")"


def _ternary_vectors(af: ArgumentationFramework, rng: np.random.Generator, count: int) -> List[np.ndarray]:
    if af.size <= EXHAUSTIVE_TERNARY_MAX:
        return [np.array(v, dtype=float) for v in itertools.product((0.0, 0.5, 1.0), repeat=af.size)]
    vectors = [congruent_assignment(l).vector for l in enumerate_complete(af)]
    vectors.extend(ternary_values(af, rng) for _ in range(count))
    return vectors


def _samples(af: ArgumentationFramework, rng: np.random.Generator, count: int, ternary: Sequence[np.ndarray]) -> List[_Sample]:
    vectors = list(candidate_values(af, rng, count))
    for prop in PROPERTY_ORDER:
        vectors.extend(candidate_values(af, rng, 0, prop))
    vectors.extend(ternary)
    return [
        _Sample(v, frozenset(p for p in PROPERTY_ORDER if property_service.holds(af, v, p)))
        for v in vectors
    ]


def _inclusion(name: str, premise: set, conclusion: set, samples: List[_Sample]) -> PropositionResult:
    checked = 0
    for sample in samples:
        if not premise <= sample.classes:
            continue
        checked += 1
        if not conclusion <= sample.classes:
            return PropositionResult(name=name, ok=False, detail=format_values(sample.values), checked=checked)
    return PropositionResult(name=name, ok=True, checked=checked)


def _admissible_semi_founded(af: ArgumentationFramework, samples: List[_Sample]) -> PropositionResult:
    name = "admissible epistemic labelling => SFOU"
    for sample in samples:
        labelling = epistemic_labelling(MarginalAssignment.from_vector(af, sample.values))
        if is_admissible(af, labelling) and SFOU not in sample.classes:
            return PropositionResult(name=name, ok=False, detail=format_values(sample.values))
    return PropositionResult(name=name, ok=True, checked=len(samples))


def _labelling_bridge(af: ArgumentationFramework, name: str, labellings, prop: PropertyId) -> PropositionResult:
    for labelling in labellings:
        if not property_service.check(af, congruent_assignment(labelling), prop).holds:
            return PropositionResult(name=name, ok=False, detail=labelling.describe())
    return PropositionResult(name=name, ok=True, checked=len(labellings))


def _rational_conflict_free(af: ArgumentationFramework, samples: List[_Sample]) -> PropositionResult:
    name = "RAT => conflict-free epistemic extension"
    settings = get_settings()
    band = max(settings.label_band, settings.property_tol)
    members = [s for s in samples if RAT in s.classes]
    for sample in members:
        labelling = epistemic_labelling(MarginalAssignment.from_vector(af, sample.values), band)
        if not is_conflict_free(af, labelling):
            return PropositionResult(name=name, ok=False, detail=format_values(sample.values))
    return PropositionResult(name=name, ok=True, checked=len(members))


def _odd_cycle_collapse(af: ArgumentationFramework, samples: List[_Sample]) -> PropositionResult:
    name = "odd cycle + INV => 0.5 on its component"
    components = odd_cycle_components(af)
    if not components:
        return PropositionResult(name=name, ok=True, note="vacuous")
    indices = [af.index_of(a) for component in components for a in component]
    # Per-edge slack accumulates along the paths that propagate the value
    tol = (af.size + 1) * get_settings().property_tol
    members = [s for s in samples if INV in s.classes]
    for sample in members:
        if np.any(np.abs(sample.values[indices] - 0.5) > tol):
            return PropositionResult(name=name, ok=False, detail=format_values(sample.values))
    return PropositionResult(name=name, ok=True, checked=len(members))


def _equal_siblings(af: ArgumentationFramework, samples: List[_Sample]) -> PropositionResult:
    name = "INV => attackers of one argument agree"
    tol = 2 * get_settings().property_tol
    members = [s for s in samples if INV in s.classes]
    for sample in members:
        for i in range(af.size):
            attacker_values = sample.values[list(af.attacker_indices(i))]
            if attacker_values.size and np.ptp(attacker_values) > tol:
                return PropositionResult(name=name, ok=False, detail=format_values(sample.values))
    return PropositionResult(name=name, ok=True, checked=len(members))


def _rational_maximal_disjoint(af: ArgumentationFramework, samples: List[_Sample]) -> PropositionResult:
    name = "RAT and MAX disjoint"
    if not af.attacks:
        return PropositionResult(name=name, ok=True, note="vacuous")
    for sample in samples:
        if {RAT, MAX} <= sample.classes:
            return PropositionResult(name=name, ok=False, detail=format_values(sample.values))
    return PropositionResult(name=name, ok=True, checked=len(samples))


def _complete_functions(af: ArgumentationFramework, ternary: Sequence[np.ndarray]) -> List[PropositionResult]:
    congruent = {tuple(congruent_assignment(l).values) for l in enumerate_complete(af)}
    definition_mismatch: Optional[np.ndarray] = None
    not_implied: Optional[np.ndarray] = None
    converse: Optional[np.ndarray] = None

    for values in ternary:
        m = MarginalAssignment.from_vector(af, values)
        by_definition = property_service.is_complete_prob_function_by_definition(af, m)
        by_properties = property_service.is_complete_prob_function_by_properties(af, m)
        if by_definition != (tuple(m.values) in congruent) and definition_mismatch is None:
            definition_mismatch = values
        if by_definition and not by_properties and not_implied is None:
            not_implied = values
        if by_properties and not by_definition and converse is None:
            converse = values

    def outcome(name: str, found: Optional[np.ndarray]) -> PropositionResult:
        detail = format_values(found) if found is not None else ""
        return PropositionResult(name=name, ok=found is None, detail=detail, checked=len(ternary))

    converse_detail = f"counterexample {format_values(converse)}" if converse is not None else "none sampled"
    return [
        outcome("complete function <=> congruent with complete labelling", definition_mismatch),
        outcome("complete function => TER+COH+FOU", not_implied),
        PropositionResult(
            name="TER+COH+FOU => complete function",
            ok=True,
            note="expected-counterexample",
            detail=converse_detail,
            checked=len(ternary),
        ),
    ]


def _restriction_rows(af: ArgumentationFramework) -> List[PropositionResult]:
    results = []
    for restriction in Restriction:
        semantics = property_service.RESTRICTION_SEMANTICS[restriction]
        name = f"{restriction.value} ~ {semantics.value}"
        got = {tuple(m.values) for m in property_service.select_by_restriction(af, restriction)}
        want = {tuple(congruent_assignment(l).values) for l in select(af, semantics)}
        if got == want:
            results.append(PropositionResult(name=name, ok=True, checked=len(want)))
        else:
            differing = sorted(got ^ want)[0]
            results.append(PropositionResult(name=name, ok=False, detail=format_values(differing)))
    return results


def _grounded_routes(af: ArgumentationFramework) -> List[PropositionResult]:
    results = []
    selected = select(af, "grounded")
    fixpoint = grounded_fixpoint(af)
    name = "grounded = characteristic fixpoint"
    if selected == [fixpoint]:
        results.append(PropositionResult(name=name, ok=True))
    else:
        results.append(PropositionResult(name=name, ok=False, detail=fixpoint.describe()))

    name = "grounded = max-entropy JUS"
    try:
        maxent_service.grounded_via_maxent(af)
        results.append(PropositionResult(name=name, ok=True))
    except ConsistencyError as e:
        results.append(PropositionResult(name=name, ok=False, detail=e.detail))
    return results


def _stable_route(af: ArgumentationFramework) -> PropositionResult:
    name = "stable = zero-entropy JUS"
    try:
        stable = maxent_service.stable_via_min_entropy(af)
    except ConsistencyError as e:
        return PropositionResult(name=name, ok=False, detail=e.detail)
    for labelling in stable:
        if undec_set(labelling) or not is_complete(af, labelling):
            return PropositionResult(name=name, ok=False, detail=labelling.describe())
    return PropositionResult(name=name, ok=True, checked=len(stable))


def _probe_result(name: str, report) -> PropositionResult:
    counterexample = ""
    if report.violations:
        v = report.violations[0]
        counterexample = (
            f"counterexample {format_values(v.combined)} from {format_values(v.first)} "
            f"and {format_values(v.second)} at delta {v.delta:.9g}"
        )
    if not report.expected_convex:
        return PropositionResult(
            name=name,
            ok=True,
            note="expected-non-convex",
            detail=counterexample or "none sampled",
            checked=report.pairs_tested,
        )
    return PropositionResult(name=name, ok=not report.found_violation, detail=counterexample, checked=report.pairs_tested)


def _convexity(af: ArgumentationFramework, samples: int, seed: int) -> List[PropositionResult]:
    results = []
    for offset, prop in enumerate(PROPERTY_ORDER):
        report = maxent_service.convexity_probe(af, prop, samples, seed + offset)
        results.append(_probe_result(f"convex {prop.value}", report))

    name = "convex pi-compliant"
    if not af.size:
        results.append(PropositionResult(name=name, ok=True, note="vacuous"))
        return results
    rng = np.random.default_rng(seed)
    pi = PartialAssignment(framework=af, values={af.arguments[0]: round(float(rng.random()), 3)})
    report = maxent_service.convexity_probe(af, None, samples, seed + len(PROPERTY_ORDER), pi)
    results.append(_probe_result(name, report))
    return results


def _oracle(af: ArgumentationFramework) -> List[PropositionResult]:
    results = []
    for props in ORACLE_PROPERTIES:
        name = f"max-entropy oracle {'+'.join(p.value for p in props)}"
        try:
            completion = maxent_service.max_entropy_completion(af, props)
            joint = maxent_service.brute_force_joint_maxent(af, props)
        except Infeasible as e:
            results.append(PropositionResult(name=name, ok=False, detail=e.detail))
            continue
        joint_marginals = marginals(joint).vector
        gap = float(np.abs(joint_marginals - completion.assignment.vector).max(initial=0.0))
        entropy_gap = abs(entropy(joint) - completion.entropy)
        if gap <= ORACLE_TOL and entropy_gap <= ORACLE_TOL:
            results.append(PropositionResult(name=name, ok=True))
        else:
            detail = f"marginals {format_values(joint_marginals)} vs {format_values(completion.assignment.values)}"
            results.append(PropositionResult(name=name, ok=False, detail=detail))
    return results


def verify(af: ArgumentationFramework, samples: int = 10_000, seed: int = 0) -> VerificationReport:
    """Run every proposition check on ``af``; deterministic for a given seed"""
    cap = get_settings().exhaustive_cap
    if af.size > cap:
        raise TooLarge(af.size, cap, "proposition suite")

    rng = np.random.default_rng(seed)
    ternary = _ternary_vectors(af, rng, samples)
    drawn = _samples(af, rng, samples, ternary)
    logger.info(f"Verifying propositions on {af.size} arguments with {len(drawn)} sampled assignments")

    results: List[PropositionResult] = [_inclusion(name, premise, conclusion, drawn) for name, premise, conclusion in INCLUSIONS]
    results.append(_admissible_semi_founded(af, drawn))
    admissible = enumerate_admissible(af)
    results.append(_labelling_bridge(af, "admissible labelling => congruent RAT", admissible, RAT))
    results.append(_labelling_bridge(af, "complete labelling => congruent JUS", enumerate_complete(af), JUS))
    results.append(_rational_conflict_free(af, drawn))
    results.append(_odd_cycle_collapse(af, drawn))
    results.append(_equal_siblings(af, drawn))
    results.append(_rational_maximal_disjoint(af, drawn))
    results.extend(_complete_functions(af, ternary))
    results.extend(_restriction_rows(af))
    results.extend(_grounded_routes(af))
    results.append(_stable_route(af))
    results.extend(_convexity(af, samples, seed))
    results.extend(_oracle(af))

    report = VerificationReport(results=results)
    failures = [r.name for r in results if not r.ok]
    if failures:
        logger.warning(f"Counterexamples found for: {', '.join(failures)}")
    logger.info(f"Verified {len(results)} propositions, {len(failures)} with counterexamples")
    return report


__all__ = ["format_values", "verify"]
