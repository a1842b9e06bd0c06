# probarg/commands/common.py
"""Helpers shared by the command modules: input loading and labelling text"""
import argparse
import logging
from pathlib import Path
from typing import List

from probarg.core.errors import ParseError
from probarg.models.framework import ArgumentationFramework
from probarg.models.labelling import LABEL_BY_RANK, Labelling
from probarg.services.framework_service import parse_apx, parse_tgf
from probarg.utils.assignment_format import Assignment, parse_assignment

logger = logging.getLogger(__name__)

FORMATS = {"apx": parse_apx, "tgf": parse_tgf}


def read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror or e}")


def load_framework(args: argparse.Namespace) -> ArgumentationFramework:
    return FORMATS[args.format](read_bytes(args.file))


def load_assignment(af: ArgumentationFramework, path: str) -> Assignment:
    return parse_assignment(af, read_bytes(path))


def labelling_lines(labelling: Labelling) -> List[str]:
    """``IN: ...`` / ``OUT: ...`` / ``UNDEC: ...`` in framework order"""
    return [f"{label.value.upper()}: {' '.join(labelling.names_with(label))}".rstrip() for label in LABEL_BY_RANK]


def split_list(value: str) -> List[str]:
    return [item.strip() for item in value.split(",") if item.strip()]
