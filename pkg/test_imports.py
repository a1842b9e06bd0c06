#!/usr/bin/env python3
"""Check that every module of the package imports and wires up"""
import importlib
import logging

import pytest

MODULES = [
    "probarg",
    "probarg.core.cache",
    "probarg.core.config",
    "probarg.core.errors",
    "probarg.core.logging",
    "probarg.models.framework",
    "probarg.models.labelling",
    "probarg.models.probability",
    "probarg.models.properties",
    "probarg.models.constraints",
    "probarg.models.responses",
    "probarg.services.framework_service",
    "probarg.services.labelling_service",
    "probarg.services.epistemic_service",
    "probarg.services.property_service",
    "probarg.services.lp_solver",
    "probarg.services.barrier_solver",
    "probarg.services.maxent_service",
    "probarg.services.verification_service",
    "probarg.utils.sampling",
    "probarg.utils.assignment_format",
    "probarg.commands",
    "main",
]


@pytest.mark.parametrize("name", MODULES)
def test_module_imports(name):
    assert importlib.import_module(name) is not None


def test_every_command_registers():
    from main import build_parser

    extra = {
        "semantics": ["--semantics", "grounded"],
        "epistemic": ["--assignment", "m.txt"],
        "check": ["--assignment", "m.txt"],
        "complete": ["--partial", "p.txt", "--properties", "COH"],
        "verify": [],
    }
    parser = build_parser()
    for command, flags in extra.items():
        args = parser.parse_args([command, "--file", "x.apx", *flags])
        assert args.command == command
        assert callable(args.handler)


def test_setup_logging_replaces_handlers():
    from probarg.core.logging import setup_logging

    root = setup_logging("debug")
    setup_logging("INFO")
    assert root.level == logging.INFO
    assert len(root.handlers) == 1


def test_result_cache_evicts_oldest():
    from probarg.core.cache import ResultCache

    cache = ResultCache(max_entries=2)
    cache.set("op", "a", 1)
    cache.set("op", "b", 2)
    cache.set("op", "c", 3)
    assert len(cache) == 2
    assert cache.get("op", "c") == 3
    assert cache.get("op", "b") == 2
    cache.clear()
    assert len(cache) == 0


def test_settings_validation():
    from pydantic import ValidationError

    from probarg.core.config import configure, get_settings

    configure(property_tol=1e-6)
    assert get_settings().property_tol == 1e-6
    assert get_settings().label_band == 1e-9
    with pytest.raises(ValidationError):
        configure(label_band=0.5)
