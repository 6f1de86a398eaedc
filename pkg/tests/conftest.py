import os
import random

import pytest

from bicircular.generators import matroid_pool, medium_graphs, named_graphs, small_graphs
from bicircular.graphs import fast_bicircular

DATA = os.path.join(os.path.dirname(__file__), "data")


def data(name):
    return os.path.join(DATA, name)


@pytest.fixture(scope="session")
def small_corpus():
    """One graph per isomorphism class, <=3 vertices, <=5 edges."""
    return list(small_graphs(3, 5))


@pytest.fixture(scope="session")
def big_corpus():
    """Named graphs plus random connected ones on 4..6 vertices."""
    gs = list(named_graphs().values())
    gs += medium_graphs(random.Random(7), count=40)
    return gs


@pytest.fixture(scope="session")
def pool():
    return matroid_pool(200, seed=0)


@pytest.fixture(scope="session")
def connected_pool(pool, small_corpus):
    """Connected matroids from the pool and from small graphs, |E| <= 7."""
    out = [M for M in pool if M.n >= 1 and M.is_connected()]
    seen = set(out)
    for G in small_corpus:
        M = fast_bicircular(G)
        if M.n >= 1 and M.is_connected() and M not in seen:
            seen.add(M)
            out.append(M)
    return out


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
