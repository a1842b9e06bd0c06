# probarg/services/framework_service.py
import logging
import re
from collections import deque
from typing import Dict, FrozenSet, List, Tuple, Union

import networkx as nx

from probarg.core.errors import (
    DuplicateArgument,
    MalformedLine,
    MissingSeparator,
    ParseError,
    UnknownArgument,
    EXIT_PARSE,
)
from probarg.models.framework import ArgumentationFramework

logger = logging.getLogger(__name__)

_NAME = r"[A-Za-z0-9_]+"
_APX_STATEMENT = re.compile(
    rf"\s*(?:arg\(\s*(?P<arg>{_NAME})\s*\)|att\(\s*(?P<src>{_NAME})\s*,\s*(?P<dst>{_NAME})\s*\))\s*\.\s*"
)


def _decode(text: Union[bytes, str]) -> str:
    if isinstance(text, str):
        return text
    try:
        return text.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise ParseError(f"input is not valid UTF-8: {e}")


def _build(arguments: List[str], attacks: List[Tuple[str, str]]) -> ArgumentationFramework:
    known = set(arguments)
    unique_attacks: Dict[Tuple[str, str], None] = {}
    for attacker, attackee in attacks:
        for name in (attacker, attackee):
            if name not in known:
                raise UnknownArgument(name, exit_code=EXIT_PARSE)
        unique_attacks.setdefault((attacker, attackee), None)
    af = ArgumentationFramework(arguments=tuple(arguments), attacks=tuple(unique_attacks))
    logger.info(f"Parsed framework with {af.size} arguments and {len(af.attacks)} attacks")
    return af


def parse_apx(text: Union[bytes, str]) -> ArgumentationFramework:
    """Parse ``arg(a).`` / ``att(a,b).`` statements; several may share one line"""
    arguments: List[str] = []
    seen = set()
    attacks: List[Tuple[str, str]] = []

    for line_number, raw in enumerate(_decode(text).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue

        position = 0
        while position < len(line):
            match = _APX_STATEMENT.match(line, position)
            if match is None or match.end() == position:
                raise MalformedLine(line_number, raw)
            if match.group("arg") is not None:
                name = match.group("arg")
                if name in seen:
                    raise DuplicateArgument(name)
                seen.add(name)
                arguments.append(name)
            else:
                attacks.append((match.group("src"), match.group("dst")))
            position = match.end()

    return _build(arguments, attacks)


def parse_tgf(text: Union[bytes, str]) -> ArgumentationFramework:
    """Parse node lines, a ``#`` separator, then ``<src> <dst>`` edge lines.

    Only the first token of a node line (and the first two of an edge line)
    are read; anything after them is a TGF label and ignored.
    """
    arguments: List[str] = []
    seen = set()
    attacks: List[Tuple[str, str]] = []
    in_edges = False
    lines = _decode(text).splitlines()
    if not any(raw.strip() == "#" for raw in lines):
        raise MissingSeparator()

    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line == "#":
            if in_edges:
                raise MalformedLine(line_number, raw)
            in_edges = True
            continue

        tokens = line.split()
        if not in_edges:
            name = tokens[0]
            if not re.fullmatch(_NAME, name):
                raise MalformedLine(line_number, raw)
            if name in seen:
                raise DuplicateArgument(name)
            seen.add(name)
            arguments.append(name)
        else:
            if len(tokens) < 2:
                raise MalformedLine(line_number, raw)
            attacks.append((tokens[0], tokens[1]))

    return _build(arguments, attacks)


def serialize_apx(af: ArgumentationFramework) -> str:
    lines = [f"arg({name})." for name in af.arguments]
    lines += [f"att({a},{b})." for a, b in af.attacks]
    return "\n".join(lines) + "\n"


def serialize_tgf(af: ArgumentationFramework) -> str:
    lines = list(af.arguments) + ["#"] + [f"{a} {b}" for a, b in af.attacks]
    return "\n".join(lines) + "\n"


def attackers(af: ArgumentationFramework, argument: str) -> FrozenSet[str]:
    return af.attacker_names(argument)


def to_digraph(af: ArgumentationFramework) -> nx.DiGraph:
    """Attack digraph over argument indices"""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(af.size))
    graph.add_edges_from(af.attack_indices())
    return graph


def _component_has_odd_cycle(graph: nx.DiGraph, component: FrozenSet[int]) -> bool:
    # Inside a strongly connected component every cycle is even iff a BFS
    # distance-parity colouring is consistent on all internal edges.
    root = min(component)
    parity = {root: 0}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for successor in graph.successors(node):
            if successor not in component:
                continue
            if successor not in parity:
                parity[successor] = parity[node] ^ 1
                queue.append(successor)
            elif parity[successor] == parity[node]:
                return True
    return False


def _odd_sccs(af: ArgumentationFramework) -> List[FrozenSet[int]]:
    graph = to_digraph(af)
    odd = []
    for component in nx.strongly_connected_components(graph):
        component = frozenset(component)
        if len(component) == 1:
            node = next(iter(component))
            if graph.has_edge(node, node):
                odd.append(component)
        elif _component_has_odd_cycle(graph, component):
            odd.append(component)
    return odd


def has_odd_cycle(af: ArgumentationFramework) -> bool:
    """True iff some directed cycle visits an odd number of distinct arguments"""
    return bool(_odd_sccs(af))


def weak_components(af: ArgumentationFramework) -> List[Tuple[str, ...]]:
    """Argument groups connected by attacks in either direction, in framework order"""
    components = [sorted(c) for c in nx.weakly_connected_components(to_digraph(af))]
    components.sort(key=lambda c: c[0])
    return [tuple(af.arguments[i] for i in c) for c in components]


def odd_cycle_components(af: ArgumentationFramework) -> List[Tuple[str, ...]]:
    """Weak components containing a directed odd cycle"""
    odd_members = set()
    for component in _odd_sccs(af):
        odd_members |= {af.arguments[i] for i in component}
    return [c for c in weak_components(af) if odd_members.intersection(c)]


__all__ = [
    "parse_apx",
    "parse_tgf",
    "serialize_apx",
    "serialize_tgf",
    "attackers",
    "to_digraph",
    "has_odd_cycle",
    "weak_components",
    "odd_cycle_components",
]
