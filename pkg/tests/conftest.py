import itertools
import math

import numpy as np
import pytest

from clusterdist.graph import build_graph, figure_one_graph

# Lines collected by test_acceptance.py and echoed at the end of the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_edges(rng, n, p):
    """Independent coin flips over all unordered pairs."""
    return [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]


def random_graph(rng, n, p):
    return build_graph(n, random_edges(rng, n, p))


def dense(g):
    A = np.zeros((g.vertex_count, g.vertex_count), dtype=np.int64)
    for u, v in g.edges():
        A[u, v] = A[v, u] = 1
    return A


# --- independent oracles: plain Python sets and dense-matrix sums ---------


def neighbor_sets(A):
    return [set(np.flatnonzero(row).tolist()) for row in A]


def jaccard_oracle(A, u, v):
    cu, cv = neighbor_sets(A[[u, v]])
    union = cu | cv
    if not union:
        return 0.0
    return 1.0 - len(cu & cv) / len(union)


def otoc_oracle(A, u, v):
    cu, cv = neighbor_sets(A[[u, v]])
    if not cu and not cv:
        return 0.0
    if not cu or not cv:
        return 1.0
    return 1.0 - len(cu & cv) / math.sqrt(len(cu) * len(cv))


def burt_sq_oracle(A, u, v):
    """Integer sum of (A_uk - A_vk)**2 over k not in {u, v}."""
    return sum(
        int(A[u, k] - A[v, k]) ** 2 for k in range(A.shape[0]) if k != u and k != v
    )


@pytest.fixture
def fig1():
    return figure_one_graph()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
