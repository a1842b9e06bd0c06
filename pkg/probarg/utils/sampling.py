# probarg/utils/sampling.py
from typing import Iterator, List, Optional
import logging

import networkx as nx
import numpy as np

from probarg.models.framework import ArgumentationFramework
from probarg.models.probability import MarginalAssignment
from probarg.models.properties import PropertyId
from probarg.services.epistemic_service import congruent_assignment
from probarg.services.framework_service import weak_components
from probarg.services.labelling_service import enumerate_complete

logger = logging.getLogger(__name__)

# Grid used for "nice" random values
GRID_STEP = 0.1


def random_framework(
    rng: np.random.Generator,
    size: int,
    attack_probability: float = 0.3,
    self_attacks: bool = True,
) -> ArgumentationFramework:
    """Erdos-Renyi style framework over a1..a<size>"""
    names = tuple(f"a{i + 1}" for i in range(size))
    attacks = []
    for i in range(size):
        for j in range(size):
            if i == j and not self_attacks:
                continue
            # Self-attacks are kept rare
            probability = attack_probability / 4.0 if i == j else attack_probability
            if rng.random() < probability:
                attacks.append((names[i], names[j]))
    return ArgumentationFramework(arguments=names, attacks=tuple(attacks))


def uniform_values(af: ArgumentationFramework, rng: np.random.Generator) -> np.ndarray:
    return rng.random(af.size)


def ternary_values(af: ArgumentationFramework, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, 3, size=af.size) / 2.0


def grid_values(af: ArgumentationFramework, rng: np.random.Generator, step: float = GRID_STEP) -> np.ndarray:
    steps = int(round(1.0 / step))
    return rng.integers(0, steps + 1, size=af.size) / steps


def coherent_values(af: ArgumentationFramework, rng: np.random.Generator) -> np.ndarray:
    """Random vector scaled down until every attack has P(A) + P(B) <= 1"""
    values = rng.random(af.size)
    scale = 1.0
    for a, b in af.attack_indices():
        total = values[a] + values[b]
        if total > 1.0:
            scale = min(scale, 1.0 / total)
    return values * scale


def optimistic_values(af: ArgumentationFramework, rng: np.random.Generator, attacked_only: bool = False) -> np.ndarray:
    """Random vector raised until P(A) >= 1 - sum of its attackers.

    Raising one argument only loosens the bounds of the arguments it attacks,
    so a single pass in any order suffices.
    """
    values = rng.random(af.size)
    for i in range(af.size):
        attacker_indices = af.attacker_indices(i)
        if attacked_only and not attacker_indices:
            continue
        others = sum(values[j] for j in attacker_indices if j != i)
        bound = 1.0 - others
        if i in attacker_indices:
            bound /= 2.0
        values[i] = min(1.0, max(values[i], bound))
    return values


def founded_values(af: ArgumentationFramework, rng: np.random.Generator) -> np.ndarray:
    values = rng.random(af.size)
    values[list(af.unattacked_indices())] = 1.0
    return values


def semi_founded_values(af: ArgumentationFramework, rng: np.random.Generator) -> np.ndarray:
    values = rng.random(af.size)
    unattacked = list(af.unattacked_indices())
    values[unattacked] = 0.5 + rng.random(len(unattacked)) / 2.0
    return values


def involutary_values(af: ArgumentationFramework, rng: np.random.Generator) -> np.ndarray:
    """One free value per bipartite component, 0.5 on components that are not bipartite"""
    values = np.full(af.size, 0.5)
    for component in weak_components(af):
        graph = nx.Graph()
        graph.add_nodes_from(af.index_of(name) for name in component)
        graph.add_edges_from((a, b) for a, b in af.attack_indices() if af.arguments[a] in component)
        if nx.number_of_selfloops(graph) or not nx.is_bipartite(graph):
            continue
        colours = nx.bipartite.color(graph)
        x = rng.random()
        for node, colour in colours.items():
            values[node] = x if colour == 0 else 1.0 - x
    return values


def complete_congruents(af: ArgumentationFramework) -> List[MarginalAssignment]:
    return [congruent_assignment(l) for l in enumerate_complete(af)]


def rational_seed_pairs(af: ArgumentationFramework) -> List[np.ndarray]:
    """RAT members whose midpoint leaves RAT: both ends of each attack above 0.5"""
    seeds = []
    for a, b in af.attack_indices():
        if a == b:
            continue
        first = np.zeros(af.size)
        second = np.zeros(af.size)
        first[a], first[b] = 1.0, 0.4
        second[a], second[b] = 0.4, 0.8
        seeds.extend([first, second])
    return seeds


def _constructed(af: ArgumentationFramework, prop: Optional[PropertyId], rng: np.random.Generator) -> Iterator[np.ndarray]:
    yield np.zeros(af.size)
    yield np.ones(af.size)
    yield np.full(af.size, 0.5)
    for m in complete_congruents(af):
        yield m.vector
    if prop == PropertyId.RAT:
        yield from rational_seed_pairs(af)

    generators = {
        PropertyId.COH: coherent_values,
        PropertyId.SFOU: semi_founded_values,
        PropertyId.FOU: founded_values,
        PropertyId.SOPT: lambda f, r: optimistic_values(f, r, attacked_only=True),
        PropertyId.OPT: optimistic_values,
        PropertyId.TER: ternary_values,
        PropertyId.INV: involutary_values,
    }
    generator = generators.get(prop)
    if generator is not None:
        for _ in range(8):
            yield generator(af, rng)


def candidate_values(
    af: ArgumentationFramework,
    rng: np.random.Generator,
    count: int,
    prop: Optional[PropertyId] = None,
) -> Iterator[np.ndarray]:
    """Constructed members of ``prop`` first, then ``count`` mixed random vectors"""
    yield from _constructed(af, prop, rng)
    draws = (uniform_values, ternary_values, grid_values)
    for k in range(count):
        yield draws[k % len(draws)](af, rng)


__all__ = [
    "random_framework",
    "uniform_values",
    "ternary_values",
    "grid_values",
    "coherent_values",
    "optimistic_values",
    "founded_values",
    "semi_founded_values",
    "involutary_values",
    "complete_congruents",
    "rational_seed_pairs",
    "candidate_values",
]
