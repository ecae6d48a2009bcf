import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from vnepkit.cnf import CnfFormula

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True)
settings.load_profile("default")

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")

# (x1 v x2 v x3) & (~x1 v x2 v x4) & (x2 v ~x3 v x4)
WORKED_FORMULA = CnfFormula(4, ((1, 2, 3), (-1, 2, 4), (2, -3, 4)))
WORKED_ASSIGNMENT = {1: True, 2: True, 3: False, 4: False}


@pytest.fixture
def worked_formula():
    return WORKED_FORMULA


@pytest.fixture
def worked_assignment():
    return dict(WORKED_ASSIGNMENT)


@pytest.fixture
def fixture_path():
    return lambda name: os.path.join(FIXTURES, name)


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""
    def record(label, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
