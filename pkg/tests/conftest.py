import sys

import numpy as np
import pytest

from fermient.linalg import make_rng
from fermient.sampling import random_rank1_state, random_state


def levi_civita_loops():
    """Alternating symbol built by counting inversions, independent of the library."""
    eps = np.zeros((4, 4, 4, 4))
    for i in range(4):
        for j in range(4):
            for k in range(4):
                for l in range(4):
                    idx = (i, j, k, l)
                    if len(set(idx)) < 4:
                        continue
                    inv = sum(1 for a in range(4) for b in range(a + 1, 4) if idx[a] > idx[b])
                    eps[i, j, k, l] = -1.0 if inv % 2 else 1.0
    return eps


@pytest.fixture(scope="session")
def generic_states():
    rng = make_rng(20240601)
    return [random_state(rng) for _ in range(1000)]


@pytest.fixture(scope="session")
def rank1_states():
    rng = make_rng(20240602)
    return [random_rank1_state(rng) for _ in range(1000)]


@pytest.fixture
def rng():
    return make_rng(12345)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
