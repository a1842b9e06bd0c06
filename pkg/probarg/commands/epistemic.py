# probarg/commands/epistemic.py
import argparse
import logging

from probarg.commands.common import labelling_lines, load_assignment, load_framework
from probarg.core.errors import InvalidUsage
from probarg.models.labelling import LabelValue
from probarg.models.probability import MarginalAssignment
from probarg.models.responses import CommandResult, LabellingOut
from probarg.services.epistemic_service import epistemic_labelling

logger = logging.getLogger(__name__)


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("epistemic", parents=[parent], help="epistemic labelling of an assignment")
    parser.add_argument("--assignment", required=True, help="file with one '<name> <probability>' per argument")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    af = load_framework(args)
    m = load_assignment(af, args.assignment)
    if not isinstance(m, MarginalAssignment):
        missing = [name for name in af.arguments if name not in m.values]
        raise InvalidUsage(f"assignment must cover every argument, missing {' '.join(missing)}")

    labelling = epistemic_labelling(m)
    extension = list(labelling.names_with(LabelValue.IN))
    lines = labelling_lines(labelling) + [f"EXTENSION: {' '.join(extension)}".rstrip()]
    return CommandResult(
        command="epistemic",
        lines=lines,
        labellings=[LabellingOut.from_labelling(labelling)],
        extension=extension,
    )
