"""Hypothesis strategies and seeded generators shared by the test modules"""
from typing import Iterator

import numpy as np
from hypothesis import strategies as st

from probarg.models.framework import ArgumentationFramework
from probarg.models.probability import MarginalAssignment, PartialAssignment
from probarg.services.epistemic_service import congruent_assignment
from probarg.services.labelling_service import enumerate_complete
from probarg.utils.sampling import random_framework


@st.composite
def frameworks(draw, min_size: int = 0, max_size: int = 7, self_attacks: bool = True):
    n = draw(st.integers(min_value=min_size, max_value=max_size))
    names = tuple(f"a{i + 1}" for i in range(n))
    pairs = [(a, b) for a in names for b in names if self_attacks or a != b]
    attacks = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=2 * n)) if pairs else []
    return ArgumentationFramework(arguments=names, attacks=tuple(attacks))


def assignments(af: ArgumentationFramework, values=None):
    values = values if values is not None else st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
    return st.lists(values, min_size=af.size, max_size=af.size).map(
        lambda v: MarginalAssignment(framework=af, values=tuple(v))
    )


def ternary_assignments(af: ArgumentationFramework):
    return assignments(af, st.sampled_from((0.0, 0.5, 1.0)))


def seeded_frameworks(seed: int, count: int, max_size: int) -> Iterator[ArgumentationFramework]:
    """``count`` reproducible random frameworks with 0..max_size arguments and varying density"""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        size = int(rng.integers(0, max_size + 1))
        yield random_framework(rng, size, attack_probability=float(rng.uniform(0.1, 0.5)))


def feasible_beliefs(af: ArgumentationFramework, rng: np.random.Generator) -> PartialAssignment:
    """Beliefs on a random subset, read off a mixture of complete labellings.

    Such a mixture lies in COH, FOU, OPT and JUS at once, so any combination
    of those classes stays feasible with these beliefs.
    """
    vectors = np.array([congruent_assignment(l).vector for l in enumerate_complete(af)])
    mixture = rng.dirichlet(np.ones(len(vectors))) @ vectors
    chosen = rng.random(af.size) < 0.5
    return PartialAssignment(
        framework=af,
        values={name: float(np.clip(v, 0.0, 1.0)) for name, v, keep in zip(af.arguments, mixture, chosen) if keep},
    )
