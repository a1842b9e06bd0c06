# probarg/commands/semantics.py
import argparse
import logging

from probarg.commands.common import labelling_lines, load_framework
from probarg.models.labelling import Semantics
from probarg.models.responses import CommandResult, LabellingOut
from probarg.services.labelling_service import select

logger = logging.getLogger(__name__)


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("semantics", parents=[parent], help="list the labellings of a semantics")
    parser.add_argument("--semantics", required=True, choices=[s.value for s in Semantics])
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    """Print every labelling of the chosen semantics, separated by blank lines"""
    af = load_framework(args)
    labellings = select(af, args.semantics)
    logger.info(f"{len(labellings)} {args.semantics} labellings")

    lines = []
    for k, labelling in enumerate(labellings):
        if k:
            lines.append("")
        lines.extend(labelling_lines(labelling))
    return CommandResult(
        command="semantics",
        lines=lines,
        labellings=[LabellingOut.from_labelling(l) for l in labellings],
    )
