# probarg/core/errors.py
from typing import Iterable, Optional

# Exit-code contract of the command line tool
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_USAGE = 3


class ProbArgError(Exception):
    """Base error carrying the exit code the CLI reports for it"""

    exit_code: int = EXIT_USAGE

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class ParseError(ProbArgError):
    exit_code = EXIT_PARSE


class MalformedLine(ParseError):
    def __init__(self, line_number: int, line: str):
        super().__init__(f"line {line_number}: cannot parse {line!r}")
        self.line_number = line_number
        self.line = line


class MissingSeparator(ParseError):
    def __init__(self):
        super().__init__("TGF input has no '#' separator line")


class DuplicateArgument(ParseError):
    def __init__(self, name: str):
        super().__init__(f"argument {name!r} declared twice")
        self.name = name


class UnknownArgument(ProbArgError):
    """An argument name that the framework does not declare.

    Raised with exit code 2 while parsing a framework and 3 while binding
    an assignment or query to an already parsed framework.
    """

    def __init__(self, name: str, exit_code: int = EXIT_USAGE):
        super().__init__(f"unknown argument {name!r}", exit_code=exit_code)
        self.name = name


class TooLarge(ProbArgError):
    exit_code = EXIT_USAGE

    def __init__(self, size: int, cap: int, what: str):
        super().__init__(f"{what} supports at most {cap} arguments, got {size}")
        self.size = size
        self.cap = cap


class UnsupportedProperty(ProbArgError):
    exit_code = EXIT_USAGE

    def __init__(self, name: str, reason: str = "not supported here"):
        super().__init__(f"property {name}: {reason}")
        self.name = name


class InvalidUsage(ProbArgError):
    exit_code = EXIT_USAGE


class Infeasible(ProbArgError):
    exit_code = EXIT_NEGATIVE

    def __init__(self, certificate: Iterable[str]):
        self.certificate = list(certificate)
        super().__init__("constraint system is infeasible: " + "; ".join(self.certificate))


class ConsistencyError(ProbArgError):
    """Two independent computations of the same quantity disagree"""

    exit_code = EXIT_NEGATIVE


__all__ = [
    "EXIT_OK",
    "EXIT_NEGATIVE",
    "EXIT_PARSE",
    "EXIT_USAGE",
    "ProbArgError",
    "ParseError",
    "MalformedLine",
    "MissingSeparator",
    "DuplicateArgument",
    "UnknownArgument",
    "TooLarge",
    "UnsupportedProperty",
    "InvalidUsage",
    "Infeasible",
    "ConsistencyError",
]
