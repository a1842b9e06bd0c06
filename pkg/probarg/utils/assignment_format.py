# probarg/utils/assignment_format.py
from typing import Dict, List, Union
import logging

from probarg.core.errors import DuplicateArgument, MalformedLine, ParseError, UnknownArgument
from probarg.models.constraints import CompletionResult, CompletionStatus
from probarg.models.framework import ArgumentationFramework
from probarg.models.probability import MarginalAssignment, PartialAssignment

logger = logging.getLogger(__name__)

Assignment = Union[MarginalAssignment, PartialAssignment]


def parse_assignment(af: ArgumentationFramework, text: Union[bytes, str]) -> Assignment:
    """Parse ``<name> <probability>`` lines bound to ``af``.

    A file that covers every argument becomes a MarginalAssignment, anything
    less a PartialAssignment. ``#`` starts a comment.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8-sig")
        except UnicodeDecodeError as e:
            raise ParseError(f"assignment is not valid UTF-8: {e}")

    values: Dict[str, float] = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedLine(line_number, raw)
        name, literal = tokens
        try:
            value = float(literal)
        except ValueError:
            raise MalformedLine(line_number, raw) from None
        if not 0.0 <= value <= 1.0:
            raise MalformedLine(line_number, raw)
        if name not in af:
            raise UnknownArgument(name)
        if name in values:
            raise DuplicateArgument(name)
        values[name] = value

    logger.info(f"Parsed assignment for {len(values)} of {af.size} arguments")
    partial = PartialAssignment(framework=af, values=values)
    return partial.to_marginal() if partial.is_total() else partial


def format_assignment(m: MarginalAssignment) -> List[str]:
    return [f"{name} {value:.9g}" for name, value in zip(m.framework.arguments, m.values)]


def format_completion(result: CompletionResult) -> List[str]:
    if result.status == CompletionStatus.INFEASIBLE:
        return ["# status infeasible"] + [f"# conflict {note}" for note in result.certificate]
    return format_assignment(result.assignment) + [
        f"# entropy {result.entropy:.9g}",
        f"# status {result.status.value}",
        f"# kkt {result.kkt_residual:.3e}",
    ]


__all__ = ["parse_assignment", "format_assignment", "format_completion"]
