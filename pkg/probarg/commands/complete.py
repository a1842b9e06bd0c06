# probarg/commands/complete.py
import argparse
import logging

from probarg.commands.check import parse_properties
from probarg.commands.common import load_assignment, load_framework
from probarg.core.errors import EXIT_NEGATIVE, EXIT_OK, Infeasible
from probarg.models.constraints import CompletionResult, CompletionStatus
from probarg.models.probability import MarginalAssignment, PartialAssignment
from probarg.models.responses import CommandResult, CompletionOut
from probarg.services.maxent_service import max_entropy_completion
from probarg.utils.assignment_format import format_completion

logger = logging.getLogger(__name__)


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("complete", parents=[parent], help="maximum-entropy completion of partial beliefs")
    parser.add_argument("--partial", required=True, help="file with '<name> <probability>' lines")
    parser.add_argument("--properties", required=True, help="comma-separated linear property ids")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    af = load_framework(args)
    props = parse_properties(args.properties)
    beliefs = load_assignment(af, args.partial)
    if isinstance(beliefs, MarginalAssignment):
        beliefs = PartialAssignment(framework=af, values=beliefs.as_dict())

    try:
        result = max_entropy_completion(af, props, beliefs)
    except Infeasible as e:
        logger.info(f"No completion: {e.detail}")
        result = CompletionResult(status=CompletionStatus.INFEASIBLE, certificate=e.certificate)

    return CommandResult(
        command="complete",
        exit_code=EXIT_OK if result.status == CompletionStatus.OPTIMAL else EXIT_NEGATIVE,
        lines=format_completion(result),
        completion=CompletionOut.from_result(result),
    )
