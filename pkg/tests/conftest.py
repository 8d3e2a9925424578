import itertools

import numpy as np
import pytest

from noisysort.graph import EdgeState

ACCEPTANCE_LINES = []


def brute_in_degree(g, x):
    """Count simple edges into ``x`` one pair at a time."""
    return sum(1 for y in range(g.n) if y != x and g.edge_state(y, x) is EdgeState.FORWARD)


def brute_out_degree(g, x):
    return sum(1 for y in range(g.n) if y != x and g.edge_state(x, y) is EdgeState.FORWARD)


def edge_census(g):
    counts = {state: 0 for state in EdgeState}
    for i, j in itertools.combinations(range(g.n), 2):
        counts[g.edge_state(i, j)] += 1
    return counts


def swap_perm(n, a, b):
    perm = np.arange(n)
    perm[a], perm[b] = b, a
    return perm


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
