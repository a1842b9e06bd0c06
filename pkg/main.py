import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from probarg import __version__
from probarg.commands import COMMANDS
from probarg.core.config import configure, reset_settings
from probarg.core.errors import EXIT_USAGE, ProbArgError
from probarg.core.logging import setup_logging

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """argparse with the usage-error exit code of this tool"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> ArgumentParser:
    # Flags every command accepts, placed after the command name
    shared = ArgumentParser(add_help=False)
    shared.add_argument("--file", required=True, help="framework file")
    shared.add_argument("--format", choices=["apx", "tgf"], default="apx")
    shared.add_argument("--tol", type=float, default=None, help="slack for property checks and completion")
    shared.add_argument("--label-band", type=float, default=None, help="half-width of the undec band around 0.5")
    shared.add_argument("--output", choices=["text", "json"], default="text")
    shared.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])

    parser = ArgumentParser(prog="probarg", description="Epistemic probabilities over argumentation frameworks")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers, shared)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(args.log_level)
    reset_settings()
    try:
        configure(property_tol=args.tol, completion_tol=args.tol, label_band=args.label_band)
    except ValidationError as e:
        print(f"error: invalid tolerance settings: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_USAGE

    try:
        result = args.handler(args)
    except ProbArgError as e:
        logger.error(f"{args.command} failed: {e.detail}")
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code

    sys.stdout.write(result.to_json() if args.output == "json" else result.to_text())
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
