# probarg/commands/check.py
import argparse
import logging
from typing import List

from probarg.commands.common import load_assignment, load_framework, split_list
from probarg.core.errors import EXIT_NEGATIVE, EXIT_OK, InvalidUsage, UnsupportedProperty
from probarg.models.probability import MarginalAssignment
from probarg.models.properties import PROPERTY_ORDER, PropertyId
from probarg.models.responses import CommandResult, PropertyOut
from probarg.services.property_service import check

logger = logging.getLogger(__name__)


def parse_properties(value: str) -> List[PropertyId]:
    """Comma-separated identifiers or ``all``; result follows the canonical order"""
    names = split_list(value)
    if names == ["all"]:
        return list(PROPERTY_ORDER)
    if not names:
        raise InvalidUsage("no properties given")
    requested = set()
    for name in names:
        try:
            requested.add(PropertyId(name.upper()))
        except ValueError:
            raise UnsupportedProperty(name, "unknown property") from None
    return [prop for prop in PROPERTY_ORDER if prop in requested]


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("check", parents=[parent], help="check properties of a total assignment")
    parser.add_argument("--assignment", required=True)
    parser.add_argument("--properties", default="all", help="comma-separated property ids, or 'all'")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    af = load_framework(args)
    props = parse_properties(args.properties)
    m = load_assignment(af, args.assignment)
    if not isinstance(m, MarginalAssignment):
        raise InvalidUsage("assignment must cover every argument")

    reports = [check(af, m, prop) for prop in props]
    lines = [f"{r.property.value}: {'PASS' if r.holds else 'FAIL'}" for r in reports]
    for report in reports:
        lines.extend(f"{report.property.value}: {v.describe()}" for v in report.violations)

    failed = [r.property.value for r in reports if not r.holds]
    if failed:
        logger.info(f"Failed properties: {', '.join(failed)}")
    return CommandResult(
        command="check",
        exit_code=EXIT_NEGATIVE if failed else EXIT_OK,
        lines=lines,
        properties=[PropertyOut.from_report(r) for r in reports],
    )
