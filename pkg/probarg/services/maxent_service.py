# probarg/services/maxent_service.py
"""Linear constraint systems for the convex property classes and their
maximum-entropy completion.

Every class except TER and RAT is a polytope in the marginal cube, so
"properties + stated beliefs" compiles to a linear system on p_A.
The completion maximizes sum H(p_A), which is the entropy of the
independent joint with those marginals and therefore the maximum joint
entropy reachable from them.
"""
import logging
from typing import Dict, Iterable, List, NamedTuple, Optional, Union

import numpy as np

from probarg.core.config import get_settings
from probarg.core.errors import ConsistencyError, Infeasible, InvalidUsage, TooLarge, UnsupportedProperty
from probarg.models.constraints import (
    Comparator,
    CompletionResult,
    CompletionStatus,
    ConvexityProbeReport,
    ConvexityViolation,
    LinearConstraint,
    LinearConstraintSystem,
)
from probarg.models.framework import ArgumentationFramework
from probarg.models.labelling import Labelling, Semantics
from probarg.models.probability import JointDistribution, MarginalAssignment, PartialAssignment
from probarg.models.properties import LINEAR_PROPERTIES, PROPERTY_ORDER, PropertyId
from probarg.services import property_service
from probarg.services.barrier_solver import BINARY_ENTROPY, SHANNON_ENTROPY, BarrierProblem, maximize
from probarg.services.epistemic_service import (
    congruent_assignment,
    entropy,
    epistemic_labelling,
    is_congruent,
    marginal_entropy,
    marginals,
    membership_matrix,
    point_mass,
)
from probarg.services.labelling_service import grounded_fixpoint, in_set, select
from probarg.services.lp_solver import independent_rows, is_feasible_polyhedron, relative_interior
from probarg.utils.sampling import candidate_values, rational_seed_pairs

logger = logging.getLogger(__name__)

# Rows whose reduced coefficients vanish carry no information
ZERO_ROW_TOL = 1e-12
MAX_RECORDED_VIOLATIONS = 5

PropertyLike = Union[PropertyId, str]


def _coefficients(*names: str) -> Dict[str, float]:
    coefficients: Dict[str, float] = {}
    for name in names:
        coefficients[name] = coefficients.get(name, 0.0) + 1.0
    return coefficients


def _property_rows(af: ArgumentationFramework, prop: PropertyId) -> List[LinearConstraint]:
    names = af.arguments
    attacks = [(names[a], names[b]) for a, b in af.attack_indices()]
    unattacked = [names[i] for i in af.unattacked_indices()]

    if prop == PropertyId.COH:
        return [
            LinearConstraint(coefficients=_coefficients(a, b), comparator=Comparator.LE, constant=1.0, provenance=f"COH {a}->{b}")
            for a, b in attacks
        ]
    if prop == PropertyId.SFOU:
        return [
            LinearConstraint(coefficients={a: 1.0}, comparator=Comparator.GE, constant=0.5, provenance=f"SFOU {a}")
            for a in unattacked
        ]
    if prop == PropertyId.FOU:
        return [
            LinearConstraint(coefficients={a: 1.0}, comparator=Comparator.EQ, constant=1.0, provenance=f"FOU {a}")
            for a in unattacked
        ]
    if prop in (PropertyId.SOPT, PropertyId.OPT):
        rows = []
        for i, name in enumerate(names):
            attacker_names = [names[j] for j in af.attacker_indices(i)]
            if prop == PropertyId.SOPT and not attacker_names:
                continue
            rows.append(
                LinearConstraint(
                    coefficients=_coefficients(name, *attacker_names),
                    comparator=Comparator.GE,
                    constant=1.0,
                    provenance=f"{prop.value} {name}",
                )
            )
        return rows
    if prop == PropertyId.JUS:
        return _property_rows(af, PropertyId.COH) + _property_rows(af, PropertyId.OPT)
    if prop == PropertyId.INV:
        return [
            LinearConstraint(coefficients=_coefficients(a, b), comparator=Comparator.EQ, constant=1.0, provenance=f"INV {a}->{b}")
            for a, b in attacks
        ]

    fixed = {PropertyId.NEU: 0.5, PropertyId.MAX: 1.0, PropertyId.MIN: 0.0}
    if prop in fixed:
        return [
            LinearConstraint(coefficients={a: 1.0}, comparator=Comparator.EQ, constant=fixed[prop], provenance=f"{prop.value} {a}")
            for a in names
        ]
    raise UnsupportedProperty(prop.value, "not a convex class, no linear encoding")


def _property_ids(props: Iterable[PropertyLike]) -> List[PropertyId]:
    requested = set()
    for prop in props:
        try:
            requested.add(PropertyId(prop))
        except ValueError:
            raise UnsupportedProperty(str(prop), "unknown property") from None
    for prop in requested:
        if prop not in LINEAR_PROPERTIES:
            raise UnsupportedProperty(prop.value, "not a convex class, no linear encoding")
    return [prop for prop in PROPERTY_ORDER if prop in requested]


def build_constraints(
    af: ArgumentationFramework,
    props: Iterable[PropertyLike],
    pi: Optional[PartialAssignment] = None,
) -> LinearConstraintSystem:
    """Linear system whose solutions are exactly the pi-compliant members of every class in ``props``"""
    if pi is not None and pi.framework != af:
        raise InvalidUsage("beliefs are bound to a different framework")

    rows: List[LinearConstraint] = []
    for prop in _property_ids(props):
        rows.extend(_property_rows(af, prop))
    if pi is not None:
        for name in pi.domain:
            value = pi.values[name]
            rows.append(
                LinearConstraint(coefficients={name: 1.0}, comparator=Comparator.EQ, constant=value, provenance=f"pi {name}={value:g}")
            )

    seen = set()
    unique = []
    for row in rows:
        if row.signature() in seen:
            continue
        seen.add(row.signature())
        unique.append(row)
    logger.debug(f"Built {len(unique)} linear constraints ({len(rows) - len(unique)} duplicates dropped)")
    return LinearConstraintSystem(framework=af, constraints=tuple(unique))


def _completion_tol(tol: Optional[float]) -> float:
    return get_settings().completion_tol if tol is None else tol


def is_feasible(system: LinearConstraintSystem, tol: Optional[float] = None) -> bool:
    tol = _completion_tol(tol)
    n = system.framework.size
    if n == 0:
        return all(c.is_satisfied({}, tol) for c in system.constraints)
    A_ub, b_ub, A_eq, b_eq = system.matrices()
    A_box = np.vstack([A_ub, np.eye(n)])
    b_box = np.concatenate([b_ub, np.ones(n)])
    return is_feasible_polyhedron(n, A_box, b_box, A_eq, b_eq, tol=tol, max_iterations=get_settings().max_iterations)


def find_infeasibility_certificate(system: LinearConstraintSystem, tol: Optional[float] = None) -> List[str]:
    """Deletion filter: an irreducible infeasible subset, as provenance notes"""
    if is_feasible(system, tol):
        return []
    keep = list(range(len(system.constraints)))
    i = 0
    while i < len(keep):
        trial = keep[:i] + keep[i + 1 :]
        if not is_feasible(system.subsystem(trial), tol):
            keep = trial
        else:
            i += 1
    certificate = [system.constraints[k].provenance for k in keep]
    logger.info(f"Infeasibility certificate: {certificate}")
    return certificate


class _Reduction(NamedTuple):
    """The system restricted to the variables not pinned at 0 or 1.

    ``point`` is a relative-interior point of the full system; its free
    coordinates are strictly feasible for ``G`` and the open box.
    """

    point: np.ndarray
    free: np.ndarray
    pinned: np.ndarray
    A_eq: np.ndarray
    b_eq: np.ndarray
    G: np.ndarray
    h: np.ndarray
    # Full-width rows, before restriction to the free variables
    full_eq: np.ndarray
    full_eq_rhs: np.ndarray
    full_ub: np.ndarray
    full_ub_rhs: np.ndarray


def _reduce(system: LinearConstraintSystem, tol: float) -> Optional[_Reduction]:
    n = system.framework.size
    A_ub, b_ub, A_eq, b_eq = system.matrices()
    interior = relative_interior(
        A_ub, b_ub, A_eq, b_eq, np.ones(n), max_iterations=get_settings().max_iterations, feasibility_tol=tol
    )
    if not interior.feasible:
        return None

    point = interior.x.copy()
    point[interior.fixed_lower] = 0.0
    point[interior.fixed_upper] = 1.0
    pinned = interior.fixed_lower | interior.fixed_upper
    free = np.flatnonzero(~pinned)

    implicit = interior.implicit_rows
    full_eq = np.vstack([A_eq, A_ub[implicit]])
    full_eq_rhs = np.concatenate([b_eq, b_ub[implicit]])
    full_ub = A_ub[~implicit]
    full_ub_rhs = b_ub[~implicit]

    offset_eq = full_eq[:, pinned] @ point[pinned]
    E, e = independent_rows(full_eq[:, free], full_eq_rhs - offset_eq)
    G = full_ub[:, free]
    h = full_ub_rhs - full_ub[:, pinned] @ point[pinned]
    informative = np.abs(G).max(axis=1, initial=0.0) > ZERO_ROW_TOL
    logger.debug(
        f"Reduced system: {free.size} free of {n}, {len(e)} equalities, {int(informative.sum())} inequalities"
    )
    return _Reduction(
        point=point,
        free=free,
        pinned=np.flatnonzero(pinned),
        A_eq=E,
        b_eq=e,
        G=G[informative],
        h=h[informative],
        full_eq=full_eq,
        full_eq_rhs=full_eq_rhs,
        full_ub=full_ub,
        full_ub_rhs=full_ub_rhs,
    )


def _reduce_or_raise(system: LinearConstraintSystem, tol: float) -> _Reduction:
    reduction = _reduce(system, tol)
    if reduction is None:
        raise Infeasible(find_infeasibility_certificate(system, tol))
    return reduction


def max_entropy_completion(
    af: ArgumentationFramework,
    props: Iterable[PropertyLike],
    pi: Optional[PartialAssignment] = None,
    tol: Optional[float] = None,
) -> CompletionResult:
    """Maximum-entropy member of the pi-compliant intersection of ``props``.

    Raises ``Infeasible`` (carrying a certificate) when the intersection is empty.
    """
    settings = get_settings()
    tol = _completion_tol(tol)
    system = build_constraints(af, props, pi)

    if af.size == 0:
        if not is_feasible(system, tol):
            raise Infeasible(find_infeasibility_certificate(system, tol))
        empty = MarginalAssignment(framework=af, values=())
        return CompletionResult(status=CompletionStatus.OPTIMAL, assignment=empty, entropy=0.0, kkt_residual=0.0)

    reduction = _reduce_or_raise(system, tol)
    values = reduction.point.copy()
    residual = 0.0
    iterations = 0
    if reduction.free.size:
        k = reduction.free.size
        problem = BarrierProblem(
            objective=BINARY_ENTROPY,
            A_eq=reduction.A_eq,
            b_eq=reduction.b_eq,
            G=reduction.G,
            h=reduction.h,
            lower=np.zeros(k),
            upper=np.ones(k),
        )
        result = maximize(
            problem,
            values[reduction.free],
            tol=tol,
            max_iterations=settings.max_iterations,
            mu=settings.barrier_mu,
            active_set_tol=settings.active_set_tol,
        )
        values[reduction.free] = result.x
        residual = result.kkt_residual
        iterations = result.iterations
        if residual > tol:
            logger.warning(f"Completion KKT residual {residual:.3e} above tolerance {tol:.1e}")

    assignment = MarginalAssignment.from_vector(af, values)
    if not system.is_satisfied_by(assignment, tol):
        failed = [c.provenance for c in system.violations(assignment, tol)]
        raise ConsistencyError(f"completion violates {', '.join(failed)}")

    value = marginal_entropy(assignment)
    logger.info(f"Max-entropy completion: entropy={value:.9g}, kkt={residual:.3e}, newton steps={iterations}")
    return CompletionResult(
        status=CompletionStatus.OPTIMAL,
        assignment=assignment,
        entropy=value,
        kkt_residual=residual,
        iterations=iterations,
    )


def maximum_entropy_value(
    af: ArgumentationFramework,
    props: Iterable[PropertyLike],
    pi: Optional[PartialAssignment] = None,
    tol: Optional[float] = None,
) -> float:
    return max_entropy_completion(af, props, pi, tol).entropy


def brute_force_joint_maxent(
    af: ArgumentationFramework,
    props: Iterable[PropertyLike],
    pi: Optional[PartialAssignment] = None,
    tol: Optional[float] = None,
) -> JointDistribution:
    """Reference optimizer over the full 2^n weight vector.

    Maximizes the Shannon entropy of the joint subject to its marginals
    lying in the constraint system. Subsets that contradict a pinned
    marginal get weight zero; the independent joint of the marginal
    relative-interior point is a strictly positive start on the rest.
    """
    settings = get_settings()
    tol = _completion_tol(tol)
    n = af.size
    if n > settings.oracle_cap:
        raise TooLarge(n, settings.oracle_cap, "joint max-entropy oracle")
    system = build_constraints(af, props, pi)
    if n == 0:
        if not is_feasible(system, tol):
            raise Infeasible(find_infeasibility_certificate(system, tol))
        return JointDistribution(framework=af, weights=np.ones(1))

    reduction = _reduce_or_raise(system, tol)
    point = reduction.point
    masks = np.arange(1 << n)
    support = np.ones(masks.size, dtype=bool)
    for i in reduction.pinned:
        bit = (masks >> i) & 1
        support &= bit == int(round(point[i]))
    M = membership_matrix(n)[:, support]

    start = np.ones(int(support.sum()))
    for i in reduction.free:
        start *= np.where(M[i] > 0.5, point[i], 1.0 - point[i])

    A_w, b_w = independent_rows(
        np.vstack([np.ones((1, M.shape[1])), reduction.full_eq @ M]),
        np.concatenate([[1.0], reduction.full_eq_rhs]),
    )
    G_w = reduction.full_ub @ M
    informative = np.abs(G_w).max(axis=1, initial=0.0) > ZERO_ROW_TOL
    problem = BarrierProblem(
        objective=SHANNON_ENTROPY,
        A_eq=A_w,
        b_eq=b_w,
        G=G_w[informative],
        h=reduction.full_ub_rhs[informative],
        lower=np.zeros(M.shape[1]),
        upper=np.full(M.shape[1], np.inf),
    )
    result = maximize(
        problem,
        start,
        tol=tol,
        max_iterations=settings.max_iterations,
        mu=settings.barrier_mu,
        active_set_tol=settings.active_set_tol,
    )

    weights = np.zeros(masks.size)
    weights[support] = np.maximum(result.x, 0.0)
    weights /= weights.sum()
    logger.info(f"Joint max-entropy oracle over {int(support.sum())} subsets: entropy={result.value:.9g}")
    return JointDistribution(framework=af, weights=weights)


def grounded_via_maxent(af: ArgumentationFramework) -> Labelling:
    """Grounded labelling read off the maximum-entropy JUS function"""
    settings = get_settings()
    completion = max_entropy_completion(af, [PropertyId.JUS])
    labelling = epistemic_labelling(completion.assignment, settings.maxent_label_band)

    if af.size <= settings.enumeration_cap:
        expected = select(af, Semantics.GROUNDED)[0]
    else:
        expected = grounded_fixpoint(af)
    if labelling != expected:
        raise ConsistencyError(f"max-entropy labelling {labelling.describe()} differs from grounded {expected.describe()}")
    return labelling


def stable_via_min_entropy(af: ArgumentationFramework) -> List[Labelling]:
    """Stable labellings, each checked to be a zero-entropy JUS function"""
    settings = get_settings()
    stable = select(af, Semantics.STABLE)
    for labelling in stable:
        assignment = congruent_assignment(labelling)
        if af.size <= settings.power_set_cap:
            joint = point_mass(af, in_set(labelling))
            value = entropy(joint)
            congruent = is_congruent(labelling, marginals(joint))
        else:
            value = marginal_entropy(assignment)
            congruent = True
        if value != 0.0 or not congruent or not property_service.check(af, assignment, PropertyId.JUS).holds:
            raise ConsistencyError(f"stable labelling {labelling.describe()} is not a zero-entropy JUS function")
    return stable


def convexity_probe(
    af: ArgumentationFramework,
    prop: Optional[PropertyLike],
    samples: int,
    seed: int,
    pi: Optional[PartialAssignment] = None,
) -> ConvexityProbeReport:
    """Search for two members of a class whose mixture leaves it.

    The class is ``prop`` intersected with pi-compliance (either may be
    absent). Deterministic for a given seed.
    """
    if prop is None and pi is None:
        raise InvalidUsage("convexity probe needs a property or beliefs")
    if pi is not None and pi.framework != af:
        raise InvalidUsage("beliefs are bound to a different framework")
    prop = PropertyId(prop) if prop is not None else None
    rng = np.random.default_rng(seed)
    tol = get_settings().property_tol

    pinned_names = pi.domain if pi is not None else ()
    pinned_index = [af.index_of(name) for name in pinned_names]
    pinned_values = np.array([pi.values[name] for name in pinned_names]) if pi is not None else np.zeros(0)

    def member(values: np.ndarray) -> bool:
        if prop is not None and not property_service.holds(af, values, prop, tol):
            return False
        return bool(np.all(np.abs(values[pinned_index] - pinned_values) <= tol))

    def pinned(values: np.ndarray) -> np.ndarray:
        values = np.array(values, dtype=float)
        values[pinned_index] = pinned_values
        return values

    members = [v for v in map(pinned, candidate_values(af, rng, samples, prop)) if member(v)]

    pairs = []
    if prop == PropertyId.RAT and pi is None:
        seeds = rational_seed_pairs(af)
        pairs.extend((seeds[k], seeds[k + 1], 0.5) for k in range(0, len(seeds), 2))
    if len(members) >= 2:
        for _ in range(samples):
            i, j = rng.integers(0, len(members), size=2)
            pairs.append((members[i], members[j], float(rng.random())))

    violations: List[ConvexityViolation] = []
    count = 0
    for first, second, delta in pairs:
        combined = np.clip(delta * first + (1.0 - delta) * second, 0.0, 1.0)
        if member(combined):
            continue
        count += 1
        if len(violations) < MAX_RECORDED_VIOLATIONS:
            violations.append(
                ConvexityViolation(
                    first=tuple(float(v) for v in first),
                    second=tuple(float(v) for v in second),
                    delta=delta,
                    combined=tuple(float(v) for v in combined),
                )
            )

    label = prop.value if prop is not None else "pi"
    if prop is not None and pi is not None:
        label = f"{prop.value}+pi"
    expected_convex = prop not in (PropertyId.TER, PropertyId.RAT)
    logger.info(f"Convexity probe {label}: {len(members)} members, {len(pairs)} pairs, {count} violations")
    return ConvexityProbeReport(
        prop=prop,
        label=label,
        members=len(members),
        pairs_tested=len(pairs),
        expected_convex=expected_convex,
        violation_count=count,
        violations=violations,
    )


__all__ = [
    "build_constraints",
    "is_feasible",
    "find_infeasibility_certificate",
    "max_entropy_completion",
    "maximum_entropy_value",
    "brute_force_joint_maxent",
    "grounded_via_maxent",
    "stable_via_min_entropy",
    "convexity_probe",
]
