# probarg/commands/verify.py
import argparse
import logging

from probarg.commands.common import load_framework
from probarg.core.errors import EXIT_NEGATIVE, EXIT_OK
from probarg.models.responses import CommandResult
from probarg.services.verification_service import verify

logger = logging.getLogger(__name__)


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("verify", parents=[parent], help="check the structural propositions on a framework")
    parser.add_argument("--samples", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    af = load_framework(args)
    report = verify(af, samples=max(args.samples, 0), seed=args.seed)
    return CommandResult(
        command="verify",
        exit_code=EXIT_OK if report.all_ok else EXIT_NEGATIVE,
        lines=report.lines(),
        verify=report.results,
    )
