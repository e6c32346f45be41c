import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from zarank3.graph import AugmentedGraph, Cell, Edge2, Edge3  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"


def random_simple_graph(rng: random.Random, max_side: int = 6) -> AugmentedGraph:
    """Random simple graph: shuffle the grid and carve it into 1-, 2- and 3-edges."""
    m, n = rng.randint(1, max_side), rng.randint(1, max_side)
    cells = [Cell(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    rng.shuffle(cells)
    cells = cells[: rng.randint(0, len(cells))]
    e1, e2, e3 = [], [], []
    while cells:
        k = rng.choice((1, 2, 3))
        if k == 3 and len(cells) >= 3:
            a, b, c = cells[:3]
            if len({a.row, b.row, c.row}) == 3 and len({a.col, b.col, c.col}) == 3:
                e3.append(Edge3(a, b, c))
                cells = cells[3:]
                continue
        if k >= 2 and len(cells) >= 2:
            e2.append(Edge2(cells[0], cells[1]))
            cells = cells[2:]
            continue
        e1.append(cells.pop(0))
    return AugmentedGraph.build(m, n, e1, e2, e3)


@pytest.fixture
def rng():
    return random.Random(20260)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
