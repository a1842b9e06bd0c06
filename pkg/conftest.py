import os
import sys
from pathlib import Path

import pytest

# Add current directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from probarg.core.cache import result_cache
from probarg.core.config import reset_settings
from probarg.models.framework import ArgumentationFramework
from probarg.models.probability import MarginalAssignment
from probarg.services.framework_service import parse_apx

SAMPLES = Path(__file__).parent / "samples"

# Assignments of the six-argument running example, in a1..a6 order
TABLE_ROWS = {
    "p1": (0.2, 0.7, 0.6, 0.3, 0.6, 1.0),
    "p2": (0.7, 0.3, 0.5, 0.5, 0.2, 0.4),
    "p3": (0.7, 0.3, 0.7, 0.3, 0.0, 1.0),
    "p4": (0.7, 0.8, 0.9, 0.8, 0.7, 1.0),
    "p5": (0.5, 0.5, 0.5, 0.5, 0.5, 0.5),
}


@pytest.fixture(autouse=True)
def fresh_state():
    """Default settings and an empty result cache for every test"""
    reset_settings()
    result_cache.clear()
    yield
    reset_settings()


def load_sample(name: str) -> ArgumentationFramework:
    return parse_apx((SAMPLES / name).read_bytes())


@pytest.fixture
def six_args() -> ArgumentationFramework:
    return load_sample("six_args.apx")


@pytest.fixture
def three_cycle() -> ArgumentationFramework:
    return load_sample("three_cycle.apx")


@pytest.fixture
def single_attack() -> ArgumentationFramework:
    return load_sample("single_attack.apx")


@pytest.fixture
def chain_attack() -> ArgumentationFramework:
    return load_sample("chain_attack.apx")


@pytest.fixture
def table_row(six_args):
    def build(name: str) -> MarginalAssignment:
        return MarginalAssignment(framework=six_args, values=TABLE_ROWS[name])

    return build
