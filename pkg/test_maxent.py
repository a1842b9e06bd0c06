"""Linear encodings, feasibility, max-entropy completion and the convexity probe"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from probarg.core.config import get_settings
from probarg.core.errors import Infeasible, InvalidUsage, TooLarge, UnsupportedProperty
from probarg.models.constraints import Comparator
from probarg.models.framework import ArgumentationFramework
from probarg.models.labelling import Semantics
from probarg.models.probability import MarginalAssignment, PartialAssignment
from probarg.models.properties import PropertyId
from probarg.services import property_service
from probarg.services.epistemic_service import congruent_assignment, entropy, marginal_entropy, marginals
from probarg.services.framework_service import serialize_apx
from probarg.services.labelling_service import grounded_fixpoint, select
from probarg.services.maxent_service import (
    brute_force_joint_maxent,
    build_constraints,
    convexity_probe,
    find_infeasibility_certificate,
    grounded_via_maxent,
    is_feasible,
    max_entropy_completion,
    maximum_entropy_value,
    stable_via_min_entropy,
)
from strategies import feasible_beliefs, frameworks, seeded_frameworks

ORACLE_TOL = 1e-5


def _pi(af, **values):
    return PartialAssignment(framework=af, values=values)


def test_coherence_row_per_attack(single_attack):
    system = build_constraints(single_attack, ["COH"])
    assert len(system.constraints) == 1
    row = system.constraints[0]
    assert row.coefficients == {"a": 1.0, "b": 1.0}
    assert row.comparator == Comparator.LE
    assert row.constant == 1.0
    assert row.provenance == "COH a->b"


def test_self_attack_doubles_the_coefficient():
    af = ArgumentationFramework(arguments=("a",), attacks=(("a", "a"),))
    (row,) = build_constraints(af, [PropertyId.COH]).constraints
    assert row.coefficients == {"a": 2.0}


def test_justifiable_is_coherent_plus_optimistic(chain_attack):
    justifiable = build_constraints(chain_attack, ["JUS"])
    assert len(justifiable.constraints) == 6
    assert [c.provenance for c in justifiable.constraints][:3] == ["COH a->b", "COH a->c", "COH b->c"]
    # COH rows are already part of JUS
    assert build_constraints(chain_attack, ["COH", "JUS"]).constraints == justifiable.constraints


def test_fixed_value_classes_are_equalities(six_args):
    system = build_constraints(six_args, ["NEU"])
    assert len(system.equalities) == six_args.size
    assert {c.constant for c in system.constraints} == {0.5}


def test_beliefs_become_equalities(chain_attack):
    system = build_constraints(chain_attack, [], _pi(chain_attack, b=0.7))
    (row,) = system.constraints
    assert row.comparator == Comparator.EQ
    assert row.provenance == "pi b=0.7"


@pytest.mark.parametrize("prop", ["TER", "RAT", "XYZ"])
def test_non_linear_or_unknown_property_rejected(single_attack, prop):
    with pytest.raises(UnsupportedProperty):
        build_constraints(single_attack, [prop])


def test_beliefs_for_another_framework_rejected(single_attack, chain_attack):
    with pytest.raises(InvalidUsage):
        build_constraints(single_attack, ["COH"], _pi(chain_attack, a=0.5))


def test_feasibility(chain_attack):
    assert is_feasible(build_constraints(chain_attack, ["COH"], _pi(chain_attack, b=0.5, c=0.5)))
    assert not is_feasible(build_constraints(chain_attack, ["COH"], _pi(chain_attack, b=0.7, c=0.6)))


def test_certificate_is_irreducible(chain_attack):
    system = build_constraints(chain_attack, ["COH"], _pi(chain_attack, b=0.7, c=0.6))
    assert find_infeasibility_certificate(system) == ["COH b->c", "pi b=0.7", "pi c=0.6"]
    assert find_infeasibility_certificate(build_constraints(chain_attack, ["COH"])) == []


def test_completion_reports_infeasibility(chain_attack):
    with pytest.raises(Infeasible) as excinfo:
        max_entropy_completion(chain_attack, ["COH"], _pi(chain_attack, b=0.7, c=0.6))
    assert excinfo.value.certificate == ["COH b->c", "pi b=0.7", "pi c=0.6"]
    assert excinfo.value.exit_code == 1


def test_three_cycle_completion(three_cycle):
    result = max_entropy_completion(three_cycle, ["COH"], _pi(three_cycle, a=0.4))
    assert result.assignment.values == pytest.approx((0.4, 0.5, 0.5), abs=1e-6)
    assert result.kkt_residual <= get_settings().completion_tol


def test_involution_completion(single_attack):
    result = max_entropy_completion(single_attack, ["INV"], _pi(single_attack, b=0.3))
    assert result.assignment.values == pytest.approx((0.7, 0.3), abs=1e-6)


def test_justifiable_completion(six_args):
    result = max_entropy_completion(six_args, ["JUS"])
    assert result.assignment.values == pytest.approx((0.5, 0.5, 0.5, 0.5, 0.0, 1.0), abs=1e-6)
    assert result.entropy == pytest.approx(4 * math.log(2), abs=1e-6)
    assert property_service.check(six_args, result.assignment, "JUS").holds


def test_founded_single_argument_has_no_entropy():
    af = ArgumentationFramework(arguments=("a",), attacks=())
    result = max_entropy_completion(af, ["FOU"])
    assert result.assignment.values == (1.0,)
    assert result.entropy == 0.0


def test_unconstrained_completion_is_uniform(six_args):
    result = max_entropy_completion(six_args, [])
    assert result.assignment.values == pytest.approx((0.5,) * 6, abs=1e-7)
    assert maximum_entropy_value(six_args, []) == pytest.approx(6 * math.log(2))


def test_empty_framework_completion():
    af = ArgumentationFramework(arguments=(), attacks=())
    result = max_entropy_completion(af, ["COH", "JUS"])
    assert result.assignment.values == ()
    assert result.entropy == 0.0


def test_completion_is_a_fixed_point(six_args):
    first = max_entropy_completion(six_args, ["JUS"]).assignment
    beliefs = PartialAssignment(framework=six_args, values={"a5": 0.0, "a6": 1.0})
    second = max_entropy_completion(six_args, ["JUS"], beliefs).assignment
    assert second.values == pytest.approx(first.values, abs=1e-6)


@settings(max_examples=30, deadline=None)
@given(frameworks(max_size=5))
def test_more_properties_never_raise_entropy(af):
    coherent = maximum_entropy_value(af, ["COH"])
    justifiable = maximum_entropy_value(af, ["JUS"])
    assert justifiable <= coherent + 1e-6
    assert coherent <= af.size * math.log(2) + 1e-9


@pytest.mark.parametrize(
    "props,beliefs",
    [(["COH"], {"a": 0.4}), (["COH"], {}), (["JUS"], {})],
)
def test_oracle_agrees_on_three_cycle(three_cycle, props, beliefs):
    pi = _pi(three_cycle, **beliefs)
    completion = max_entropy_completion(three_cycle, props, pi)
    joint = brute_force_joint_maxent(three_cycle, props, pi)
    assert marginals(joint).values == pytest.approx(completion.assignment.values, abs=ORACLE_TOL)
    assert entropy(joint) == pytest.approx(completion.entropy, abs=ORACLE_TOL)


def test_oracle_agrees_on_six_args(six_args):
    joint = brute_force_joint_maxent(six_args, ["JUS"])
    assert marginals(joint).values == pytest.approx((0.5, 0.5, 0.5, 0.5, 0.0, 1.0), abs=ORACLE_TOL)


@settings(max_examples=20, deadline=None)
@given(
    frameworks(max_size=5),
    st.sets(st.sampled_from(["COH", "FOU", "OPT", "JUS"])),
    st.data(),
)
def test_oracle_agrees_on_random_frameworks(af, props, data):
    grounded = congruent_assignment(grounded_fixpoint(af))
    chosen = data.draw(st.sets(st.sampled_from(af.arguments))) if af.size else set()
    pi = PartialAssignment(framework=af, values={name: grounded.get(name) for name in chosen})

    completion = max_entropy_completion(af, sorted(props), pi)
    joint = brute_force_joint_maxent(af, sorted(props), pi)
    assert marginals(joint).values == pytest.approx(completion.assignment.values, abs=ORACLE_TOL)


def test_oracle_size_cap():
    af = ArgumentationFramework(arguments=tuple(f"a{i}" for i in range(11)), attacks=())
    with pytest.raises(TooLarge):
        brute_force_joint_maxent(af, ["COH"])


def test_grounded_from_max_entropy(six_args, three_cycle):
    assert grounded_via_maxent(six_args) == select(six_args, Semantics.GROUNDED)[0]
    assert grounded_via_maxent(three_cycle) == select(three_cycle, Semantics.GROUNDED)[0]


@settings(max_examples=30, deadline=None)
@given(frameworks(max_size=6))
def test_grounded_from_max_entropy_on_random_frameworks(af):
    assert grounded_via_maxent(af) == grounded_fixpoint(af)


def test_stable_labellings_have_zero_entropy(six_args, three_cycle):
    assert stable_via_min_entropy(six_args) == select(six_args, Semantics.STABLE)
    assert len(stable_via_min_entropy(six_args)) == 2
    assert stable_via_min_entropy(three_cycle) == []


def test_rational_class_is_not_convex(single_attack):
    report = convexity_probe(single_attack, "RAT", samples=200, seed=0)
    assert report.prop == PropertyId.RAT
    assert not report.expected_convex
    assert report.found_violation
    violation = report.violations[0]
    assert violation.first == pytest.approx((1.0, 0.4))
    assert violation.second == pytest.approx((0.4, 0.8))
    assert violation.combined == pytest.approx((0.7, 0.6))


def test_ternary_class_is_not_convex(six_args):
    report = convexity_probe(six_args, PropertyId.TER, samples=500, seed=1)
    assert report.found_violation
    assert len(report.violations) <= 5


@pytest.mark.parametrize("prop", ["COH", "NEU", "JUS", "INV"])
def test_linear_classes_stay_convex(six_args, prop):
    report = convexity_probe(six_args, prop, samples=500, seed=7)
    assert report.expected_convex
    assert report.members >= 1
    assert not report.found_violation


def test_compliant_set_stays_convex(chain_attack):
    report = convexity_probe(chain_attack, None, samples=300, seed=3, pi=_pi(chain_attack, a=0.25))
    assert report.label == "pi"
    assert report.prop is None
    assert not report.found_violation

    combined = convexity_probe(chain_attack, "COH", samples=300, seed=3, pi=_pi(chain_attack, a=0.25))
    assert combined.label == "COH+pi"
    assert not combined.found_violation


def test_probe_is_deterministic(six_args):
    first = convexity_probe(six_args, "RAT", samples=300, seed=11)
    second = convexity_probe(six_args, "RAT", samples=300, seed=11)
    assert first == second


def test_probe_needs_something_to_test(six_args):
    with pytest.raises(InvalidUsage):
        convexity_probe(six_args, None, samples=10, seed=0)


def test_grounded_from_max_entropy_on_seeded_frameworks():
    for af in seeded_frameworks(seed=3, count=100, max_size=7):
        assert grounded_via_maxent(af) == select(af, Semantics.GROUNDED)[0], serialize_apx(af)


def test_oracle_agrees_on_seeded_instances():
    rng = np.random.default_rng(17)
    for af in seeded_frameworks(seed=17, count=50, max_size=8):
        props = [p for p in ("COH", "FOU", "OPT", "JUS") if rng.random() < 0.5]
        pi = feasible_beliefs(af, rng)
        completion = max_entropy_completion(af, props, pi)
        joint = brute_force_joint_maxent(af, props, pi)
        context = (serialize_apx(af), props, pi.values)
        assert marginals(joint).values == pytest.approx(completion.assignment.values, abs=ORACLE_TOL), context
        assert entropy(joint) == pytest.approx(completion.entropy, abs=ORACLE_TOL), context


def _feasible_directions(system, point, rng, count, step=1e-3):
    """Random moves of length ``step`` that stay inside the box and the system"""
    _, _, A_eq, _ = system.matrices()
    n = point.size
    if len(A_eq):
        _, singular, vt = np.linalg.svd(A_eq)
        rank = int((singular > 1e-10).sum())
        basis = vt[rank:].T
    else:
        basis = np.eye(n)
    if basis.shape[1] == 0:
        return []
    moves = []
    for _ in range(count):
        direction = basis @ rng.standard_normal(basis.shape[1])
        candidate = point + step * direction / np.linalg.norm(direction)
        if np.any(candidate < 0.0) or np.any(candidate > 1.0):
            continue
        if system.is_satisfied_by(MarginalAssignment.from_vector(system.framework, candidate), 0.0):
            moves.append(candidate)
    return moves


def test_no_feasible_move_raises_entropy():
    rng = np.random.default_rng(23)
    tried = 0
    for af in seeded_frameworks(seed=23, count=100, max_size=6):
        props = [p for p in ("COH", "FOU", "OPT", "JUS", "SOPT", "SFOU") if rng.random() < 0.4]
        pi = feasible_beliefs(af, rng)
        completion = max_entropy_completion(af, props, pi)
        assert completion.kkt_residual <= get_settings().completion_tol, serialize_apx(af)

        system = build_constraints(af, props, pi)
        for candidate in _feasible_directions(system, completion.assignment.vector, rng, count=20):
            tried += 1
            moved = marginal_entropy(MarginalAssignment.from_vector(af, candidate))
            assert moved <= completion.entropy + 1e-9, (serialize_apx(af), props, pi.values)
    assert tried > 0
