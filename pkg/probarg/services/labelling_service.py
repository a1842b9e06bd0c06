# probarg/services/labelling_service.py
import itertools
import logging
from typing import FrozenSet, List, Optional, Tuple, Union

from probarg.core.cache import cached_per_framework
from probarg.core.config import get_settings
from probarg.core.errors import TooLarge
from probarg.models.framework import ArgumentationFramework
from probarg.models.labelling import LABEL_BY_RANK, LabelValue, Labelling, Semantics

logger = logging.getLogger(__name__)

IN, OUT, UNDEC = 0, 1, 2


def in_set(labelling: Labelling) -> FrozenSet[str]:
    """Arguments labelled in"""
    return frozenset(labelling.names_with(LabelValue.IN))


def out_set(labelling: Labelling) -> FrozenSet[str]:
    """Arguments labelled out"""
    return frozenset(labelling.names_with(LabelValue.OUT))


def undec_set(labelling: Labelling) -> FrozenSet[str]:
    """Arguments labelled undec"""
    return frozenset(labelling.names_with(LabelValue.UNDEC))


def is_conflict_free(af: ArgumentationFramework, labelling: Labelling) -> bool:
    """No attack between two in arguments"""
    ranks = labelling.ranks
    return not any(ranks[a] == IN and ranks[b] == IN for a, b in af.attack_indices())


def is_admissible(af: ArgumentationFramework, labelling: Labelling) -> bool:
    """In needs every attacker out; out needs some attacker in"""
    ranks = labelling.ranks
    for i, rank in enumerate(ranks):
        attacker_ranks = [ranks[j] for j in af.attacker_indices(i)]
        if rank == IN and any(r != OUT for r in attacker_ranks):
            return False
        if rank == OUT and IN not in attacker_ranks:
            return False
    return True


def is_complete(af: ArgumentationFramework, labelling: Labelling) -> bool:
    """Admissible, and undec only where neither in nor out is justified"""
    if not is_admissible(af, labelling):
        return False
    ranks = labelling.ranks
    for i, rank in enumerate(ranks):
        if rank != UNDEC:
            continue
        attacker_ranks = [ranks[j] for j in af.attacker_indices(i)]
        if IN in attacker_ranks or all(r == OUT for r in attacker_ranks):
            return False
    return True


def _propagate(af: ArgumentationFramework, ranks: List[Optional[int]]) -> bool:
    """Extend a partial complete-labelling in place; False on contradiction.

    In a complete labelling every label is fixed by the attackers' labels:
    in iff all attackers are out, out iff some attacker is in.
    """
    changed = True
    while changed:
        changed = False
        for i in range(af.size):
            attacker_ranks = [ranks[j] for j in af.attacker_indices(i)]
            assigned = all(r is not None for r in attacker_ranks)
            some_in = IN in attacker_ranks
            all_out = all(r == OUT for r in attacker_ranks)
            rank = ranks[i]

            if rank is None:
                if some_in:
                    ranks[i] = OUT
                elif all_out:
                    ranks[i] = IN
                elif assigned:
                    ranks[i] = UNDEC
                else:
                    continue
                changed = True
                continue

            if rank == IN:
                if any(r is not None and r != OUT for r in attacker_ranks):
                    return False
                for j in af.attacker_indices(i):
                    if ranks[j] is None:
                        ranks[j] = OUT
                        changed = True
            elif rank == OUT:
                if some_in:
                    continue
                open_attackers = [j for j in af.attacker_indices(i) if ranks[j] is None]
                if not open_attackers:
                    return False
                if len(open_attackers) == 1:
                    ranks[open_attackers[0]] = IN
                    changed = True
            else:
                if some_in or (assigned and all_out):
                    return False
    return True


@cached_per_framework("complete_labellings")
def _complete_labellings(af: ArgumentationFramework) -> Tuple[Labelling, ...]:
    found: List[Labelling] = []
    nodes = 0

    def search(ranks: List[Optional[int]]) -> None:
        nonlocal nodes
        nodes += 1
        if not _propagate(af, ranks):
            return
        try:
            branch = ranks.index(None)
        except ValueError:
            labelling = Labelling.from_ranks(af, ranks)
            if is_complete(af, labelling):
                found.append(labelling)
            return
        for rank in (IN, OUT, UNDEC):
            child = list(ranks)
            child[branch] = rank
            search(child)

    search([None] * af.size)
    found.sort(key=Labelling.sort_key)
    logger.info(f"Found {len(found)} complete labellings ({nodes} search nodes)")
    return tuple(found)


def enumerate_complete(af: ArgumentationFramework) -> List[Labelling]:
    """All complete labellings in lexicographic order (in < out < undec)"""
    cap = get_settings().enumeration_cap
    if af.size > cap:
        raise TooLarge(af.size, cap, "complete labelling enumeration")
    return list(_complete_labellings(af))


def select(af: ArgumentationFramework, semantics: Union[Semantics, str]) -> List[Labelling]:
    """Complete labellings kept by ``semantics``, in enumeration order"""
    semantics = Semantics(semantics)
    complete = enumerate_complete(af)

    if semantics == Semantics.COMPLETE:
        return complete
    if semantics == Semantics.STABLE:
        return [l for l in complete if not undec_set(l)]

    if semantics == Semantics.GROUNDED:
        key, want_minimal = in_set, True
    elif semantics == Semantics.PREFERRED:
        key, want_minimal = in_set, False
    else:
        key, want_minimal = undec_set, True

    sets = [key(l) for l in complete]
    selected = []
    for labelling, own in zip(complete, sets):
        if want_minimal:
            dominated = any(other < own for other in sets)
        else:
            dominated = any(own < other for other in sets)
        if not dominated:
            selected.append(labelling)
    return selected


def grounded_fixpoint(af: ArgumentationFramework) -> Labelling:
    """Grounded labelling by iterating the characteristic function from all-undec"""
    ranks = [UNDEC] * af.size
    while True:
        accepted = {i for i in range(af.size) if all(ranks[j] == OUT for j in af.attacker_indices(i))}
        rejected = {
            i for i in range(af.size) if any(j in accepted for j in af.attacker_indices(i))
        }
        updated = [IN if i in accepted else OUT if i in rejected else UNDEC for i in range(af.size)]
        if updated == ranks:
            return Labelling.from_ranks(af, ranks)
        ranks = updated


def enumerate_admissible(af: ArgumentationFramework) -> List[Labelling]:
    """Exhaustive scan over all 3^n labellings, lexicographic order"""
    cap = get_settings().exhaustive_cap
    if af.size > cap:
        raise TooLarge(af.size, cap, "admissible labelling scan")
    result = []
    for ranks in itertools.product((IN, OUT, UNDEC), repeat=af.size):
        labelling = Labelling(framework=af, labels=tuple(LABEL_BY_RANK[r] for r in ranks))
        if is_admissible(af, labelling):
            result.append(labelling)
    return result


__all__ = [
    "in_set",
    "out_set",
    "undec_set",
    "is_conflict_free",
    "is_admissible",
    "is_complete",
    "enumerate_complete",
    "select",
    "grounded_fixpoint",
    "enumerate_admissible",
]
