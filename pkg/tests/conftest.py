import itertools

import pytest

from bipcontract.graph import Graph
from bipcontract.oracle import gen_random


def small_graphs(max_n, seed=0, count=60):
    """Deterministic mix of random graphs on 1..max_n vertices."""
    out = []
    for i in range(count):
        n = 1 + i % max_n
        p = (0.25, 0.45, 0.65)[i % 3]
        out.append(gen_random(n, p, seed + i))
    return out


def all_graphs(n):
    """Every labelled graph on vertices 1..n."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(range(1, n + 1), [e for i, e in enumerate(pairs) if mask >> i & 1])


@pytest.fixture
def c5():
    return Graph(range(1, 6), [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)])


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
