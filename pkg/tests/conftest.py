from functools import lru_cache

import pytest

from greenring.chartable import dixon_character_table
from greenring.greenring import structure_constants
from greenring.groups import make_group

# groups used across modules; A6 is the largest instance
SMALL_GROUPS = ["C1", "C2", "C6", "S3", "D8", "C2xC4", "A4", "D10", "Q8", "S4"]


@lru_cache(maxsize=None)
def group(desc: str):
    if desc == "Q8":
        # quaternion group as a regular permutation representation
        return make_group("perm:[(0,1,2,3)(4,5,6,7),(0,4,2,6)(1,7,3,5)]")
    return make_group(desc)


@lru_cache(maxsize=None)
def table(desc: str):
    return dixon_character_table(group(desc))


@lru_cache(maxsize=None)
def ring(desc: str):
    return structure_constants(table(desc))


@pytest.fixture
def a4():
    return group("A4"), ring("A4")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
