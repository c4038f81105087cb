import itertools

import numpy as np
import pytest

from cubepst import ConnectionSet, example_graph, hypercube, simplex

from oracles import random_connection_sets

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def example():
    return example_graph()


@pytest.fixture
def simplex3():
    return simplex(3)


@pytest.fixture
def k2():
    return hypercube(1)


@pytest.fixture
def rng():
    return np.random.default_rng(20260101)


def all_dim3_sets():
    vecs = range(1, 8)
    return [
        ConnectionSet(3, combo)
        for r in range(1, 8)
        for combo in itertools.combinations(vecs, r)
    ]


def theorem_corpus(seed=7, n_random=500):
    """All 127 nonempty sets at dim 3 plus uniform random sets at dims 4-6."""
    rng = np.random.default_rng(seed)
    rand = [ConnectionSet.from_elements(d, els) for d, els in random_connection_sets(rng, [4, 5, 6], n_random)]
    return all_dim3_sets() + rand
