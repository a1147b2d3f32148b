import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kgeodetic.formats import LEFT_CAGE, RIGHT_CAGE  # noqa: E402


@pytest.fixture
def left():
    return LEFT_CAGE


@pytest.fixture
def right():
    return RIGHT_CAGE


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
