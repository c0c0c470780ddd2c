import numpy as np
import pytest

from bht import pair_from_masses


@pytest.fixture
def binary_pair():
    return pair_from_masses([0.5, 0.5], [0.25, 0.75])


def random_pair(seed: int, m: int, alpha: float = 1.0):
    rng = np.random.default_rng(seed)
    return pair_from_masses(rng.dirichlet(np.full(m, alpha)), rng.dirichlet(np.full(m, alpha)))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
