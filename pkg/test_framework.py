"""Parsing, serialization and graph structure of argumentation frameworks"""
import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import SAMPLES
from probarg.core.errors import (
    EXIT_PARSE,
    DuplicateArgument,
    MalformedLine,
    MissingSeparator,
    ParseError,
    UnknownArgument,
)
from probarg.models.framework import ArgumentationFramework
from probarg.services.framework_service import (
    attackers,
    has_odd_cycle,
    odd_cycle_components,
    parse_apx,
    parse_tgf,
    serialize_apx,
    serialize_tgf,
    weak_components,
)
from strategies import frameworks, seeded_frameworks


def test_parse_apx_minimal():
    af = parse_apx(b"arg(a). arg(b). att(a,b).")
    assert af.arguments == ("a", "b")
    assert af.attacks == (("a", "b"),)


def test_parse_apx_six_arguments(six_args):
    assert six_args.size == 6
    assert len(six_args.attacks) == 8
    assert ("a1", "a2") in six_args.attacks and ("a2", "a1") in six_args.attacks


def test_parse_apx_comments_and_whitespace():
    af = parse_apx("% a comment\n\n  arg( x ) .\narg(y).\r\natt(x , y).\n")
    assert af.arguments == ("x", "y")
    assert af.attacks == (("x", "y"),)


def test_parse_apx_drops_repeated_attack():
    af = parse_apx("arg(a). arg(b). att(a,b). att(a,b).")
    assert af.attacks == (("a", "b"),)


def test_parse_apx_unknown_endpoint_is_a_parse_error():
    with pytest.raises(UnknownArgument) as info:
        parse_apx(b"att(a,b).")
    assert info.value.exit_code == EXIT_PARSE


def test_parse_apx_duplicate_argument():
    with pytest.raises(DuplicateArgument):
        parse_apx("arg(a). arg(a).")


def test_parse_apx_malformed_line_reports_line_number():
    with pytest.raises(MalformedLine) as info:
        parse_apx("arg(a).\narg(b\n")
    assert info.value.line_number == 2


def test_parse_apx_rejects_bad_encoding():
    with pytest.raises(ParseError):
        parse_apx(b"arg(\xff).")


def test_parse_tgf_examples():
    af = parse_tgf(b"a\nb\n#\na b")
    assert af.arguments == ("a", "b")
    assert af.attacks == (("a", "b"),)

    lone = parse_tgf(b"a\n#\n")
    assert lone.size == 1 and not lone.attacks


def test_parse_tgf_ignores_labels():
    af = parse_tgf("a first node\nb\n#\na b some label\n")
    assert af.arguments == ("a", "b")
    assert af.attacks == (("a", "b"),)


def test_parse_tgf_missing_separator():
    with pytest.raises(MissingSeparator):
        parse_tgf(b"a\nb\na b")


def test_parse_tgf_second_separator():
    with pytest.raises(MalformedLine):
        parse_tgf("a\n#\n#\n")


def test_tgf_and_apx_samples_agree(six_args):
    assert parse_tgf((SAMPLES / "six_args.tgf").read_bytes()) == six_args


@settings(max_examples=50, deadline=None)
@given(frameworks(max_size=6))
def test_serialization_parses_back(af):
    assert parse_apx(serialize_apx(af)) == af
    assert parse_tgf(serialize_tgf(af)) == af


def test_attackers(six_args):
    assert attackers(six_args, "a3") == {"a2", "a5"}
    assert attackers(six_args, "a6") == frozenset()

    selfish = ArgumentationFramework(arguments=("x",), attacks=(("x", "x"),))
    assert attackers(selfish, "x") == {"x"}


def test_attackers_unknown_argument(six_args):
    with pytest.raises(UnknownArgument):
        attackers(six_args, "zz")


def test_odd_cycles(three_cycle):
    assert has_odd_cycle(three_cycle)
    assert not has_odd_cycle(parse_apx("arg(a). arg(b). att(a,b). att(b,a)."))
    assert not has_odd_cycle(parse_apx("arg(a). arg(b). arg(c). att(a,b). att(b,c)."))
    assert has_odd_cycle(parse_apx("arg(a). att(a,a)."))


def test_odd_cycle_in_six_arguments(six_args):
    # a3 -> a4 -> a5 -> a3
    assert has_odd_cycle(six_args)
    assert odd_cycle_components(six_args) == [six_args.arguments]


def test_weak_components():
    af = parse_apx("arg(a). arg(b). arg(c). arg(d). att(b,a). att(c,c).")
    assert weak_components(af) == [("a", "b"), ("c",), ("d",)]
    assert odd_cycle_components(af) == [("c",)]


def _brute_force_odd_cycle(af: ArgumentationFramework) -> bool:
    graph = nx.DiGraph()
    graph.add_nodes_from(af.arguments)
    graph.add_edges_from(af.attacks)
    return any(len(cycle) % 2 == 1 for cycle in nx.simple_cycles(graph))


@settings(max_examples=150, deadline=None)
@given(frameworks(max_size=6))
def test_odd_cycle_matches_cycle_enumeration(af):
    assert has_odd_cycle(af) == _brute_force_odd_cycle(af)


def test_odd_cycle_matches_cycle_enumeration_up_to_eight_arguments():
    for af in seeded_frameworks(seed=7, count=300, max_size=8):
        assert has_odd_cycle(af) == _brute_force_odd_cycle(af), serialize_apx(af)
