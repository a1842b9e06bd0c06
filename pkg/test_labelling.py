"""Classical labelling semantics"""
import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from probarg.core.config import configure
from probarg.core.errors import TooLarge
from probarg.models.framework import ArgumentationFramework
from probarg.models.labelling import LabelValue, Labelling, Semantics
from probarg.services.framework_service import parse_apx, serialize_apx
from probarg.services.labelling_service import (
    enumerate_admissible,
    enumerate_complete,
    grounded_fixpoint,
    in_set,
    is_admissible,
    is_complete,
    is_conflict_free,
    out_set,
    select,
    undec_set,
)
from strategies import frameworks, seeded_frameworks


def _extensions(labellings):
    return [in_set(l) for l in labellings]


def test_grounded_six_arguments(six_args):
    (grounded,) = select(six_args, Semantics.GROUNDED)
    assert in_set(grounded) == {"a6"}
    assert out_set(grounded) == {"a5"}
    assert undec_set(grounded) == {"a1", "a2", "a3", "a4"}


def test_complete_six_arguments_in_lexicographic_order(six_args):
    complete = enumerate_complete(six_args)
    assert _extensions(complete) == [{"a1", "a3", "a6"}, {"a2", "a4", "a6"}, {"a6"}]


def test_stable_preferred_and_semi_stable_six_arguments(six_args):
    expected = [{"a1", "a3", "a6"}, {"a2", "a4", "a6"}]
    assert _extensions(select(six_args, "stable")) == expected
    assert _extensions(select(six_args, "preferred")) == expected
    assert _extensions(select(six_args, "semi-stable")) == expected


def test_three_cycle(three_cycle):
    everything_undec = Labelling.uniform(three_cycle, LabelValue.UNDEC)
    assert enumerate_complete(three_cycle) == [everything_undec]
    assert select(three_cycle, Semantics.STABLE) == []
    assert select(three_cycle, Semantics.GROUNDED) == [everything_undec]
    assert select(three_cycle, Semantics.SEMI_STABLE) == [everything_undec]


def test_labelling_predicates(single_attack):
    good = Labelling.from_sets(single_attack, in_=["a"], out=["b"])
    assert is_conflict_free(single_attack, good)
    assert is_admissible(single_attack, good)
    assert is_complete(single_attack, good)

    everything_in = Labelling.uniform(single_attack, LabelValue.IN)
    assert not is_conflict_free(single_attack, everything_in)

    undecided = Labelling.uniform(single_attack, LabelValue.UNDEC)
    assert is_admissible(single_attack, undecided)
    assert not is_complete(single_attack, undecided)


def test_self_attacker_is_undecided():
    af = parse_apx("arg(x). att(x,x).")
    assert enumerate_complete(af) == [Labelling.uniform(af, LabelValue.UNDEC)]


def test_empty_framework_has_one_labelling():
    af = ArgumentationFramework()
    assert enumerate_complete(af) == [Labelling(framework=af, labels=())]


def test_enumeration_cap():
    configure(enumeration_cap=2)
    af = parse_apx("arg(a). arg(b). arg(c).")
    with pytest.raises(TooLarge):
        enumerate_complete(af)


def test_admissible_scan_cap():
    configure(exhaustive_cap=2)
    with pytest.raises(TooLarge):
        enumerate_admissible(parse_apx("arg(a). arg(b). arg(c)."))


def _naive_complete(af):
    found = []
    for labels in itertools.product(list(LabelValue), repeat=af.size):
        labelling = Labelling(framework=af, labels=labels)
        if is_complete(af, labelling):
            found.append(labelling)
    return sorted(found, key=Labelling.sort_key)


@settings(max_examples=150, deadline=None)
@given(frameworks(max_size=6))
def test_backtracking_matches_naive_scan(af):
    assert enumerate_complete(af) == _naive_complete(af)


def _scan_complete_ranks(af):
    """Every label vector in lexicographic rank order, kept if it is a complete labelling"""
    ranks = np.array(list(itertools.product(range(3), repeat=af.size)), dtype=int)
    attacks = np.zeros((af.size, af.size), dtype=int)
    for a, b in af.attack_indices():
        attacks[a, b] = 1
    is_in, is_out = ranks == 0, ranks == 1
    some_attacker_in = (is_in.astype(int) @ attacks) > 0
    all_attackers_out = ((~is_out).astype(int) @ attacks) == 0
    complete = np.all((is_in == all_attackers_out) & (is_out == some_attacker_in), axis=1)
    return [tuple(int(r) for r in row) for row in ranks[complete]]


def test_backtracking_matches_naive_scan_on_seeded_frameworks():
    for af in seeded_frameworks(seed=2024, count=500, max_size=8):
        assert [l.ranks for l in enumerate_complete(af)] == _scan_complete_ranks(af), serialize_apx(af)


@settings(max_examples=100, deadline=None)
@given(frameworks(max_size=7))
def test_grounded_is_the_characteristic_fixpoint(af):
    assert select(af, Semantics.GROUNDED) == [grounded_fixpoint(af)]


@settings(max_examples=100, deadline=None)
@given(frameworks(max_size=7))
def test_semantics_are_complete_selections(af):
    complete = enumerate_complete(af)
    for semantics in Semantics:
        selected = select(af, semantics)
        assert all(l in complete for l in selected)
    for labelling in select(af, Semantics.STABLE):
        assert not undec_set(labelling)
    # Preferred labellings always exist
    assert select(af, Semantics.PREFERRED)


@settings(max_examples=50, deadline=None)
@given(frameworks(max_size=5))
def test_complete_labellings_are_admissible(af):
    admissible = enumerate_admissible(af)
    assert all(l in admissible for l in enumerate_complete(af))
