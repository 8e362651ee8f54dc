import random

import pytest
from hypothesis import settings

from sheffer_lie.symtensor import Context

settings.register_profile("exact", max_examples=25, deadline=None)
settings.load_profile("exact")

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def ctx1():
    return Context(1, 6)


@pytest.fixture
def ctx2():
    return Context(2, 4)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
