import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from pinchwpc.config import SystemConfig  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture
def cfg():
    return SystemConfig()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line[1])
