import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from detours.families import h9  # noqa: E402
from detours.graph import Graph, add_edge  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def H9():
    return h9()


@pytest.fixture
def M9():
    return add_edge(h9(), (2, 6))


@pytest.fixture
def K4():
    return Graph.from_edges(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
