# probarg/commands/__init__.py
"""CLI commands for probarg"""
from probarg.commands import check, complete, epistemic, semantics, verify

# Registration order is the order shown in --help
COMMANDS = (semantics, epistemic, check, complete, verify)
