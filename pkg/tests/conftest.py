import random

import pytest

from spancores import TemporalGraph

# Canonical 4-vertex, 3-timestamp fixture used throughout: a triangle abc that
# decays to a single edge ab, plus a pendant d attached only at t=0.
FIX1_SNAPSHOTS = [
    [("a", "b"), ("a", "c"), ("b", "c"), ("c", "d")],
    [("a", "b"), ("a", "c"), ("b", "c")],
    [("a", "b")],
]


@pytest.fixture
def fix1() -> TemporalGraph:
    return TemporalGraph.from_snapshot_edges(FIX1_SNAPSHOTS)


def random_temporal_graph(rng: random.Random, n: int, t: int, p: float) -> TemporalGraph:
    snapshots = []
    for _ in range(t):
        snapshots.append([(u, v) for u in range(n) for v in range(u + 1, n)
                          if rng.random() < p])
    return TemporalGraph(snapshots, [f"v{i}" for i in range(n)])


def build_corpus(count: int = 200, base_seed: int = 1000) -> list[TemporalGraph]:
    """Deterministic random-graph corpus: |V| <= 12, |T| <= 6, edge prob in {.2,.4,.6}."""
    graphs = []
    probabilities = (0.2, 0.4, 0.6)
    for i in range(count):
        rng = random.Random(base_seed + i)
        n = rng.randint(4, 12)
        t = rng.randint(1, 6)
        graphs.append(random_temporal_graph(rng, n, t, probabilities[i % 3]))
    return graphs


@pytest.fixture(scope="session")
def corpus() -> list[TemporalGraph]:
    return build_corpus()


def benchmark_graph(n: int = 2000, t: int = 100, seed: int = 7) -> TemporalGraph:
    """Synthetic workload with both churn and persistent group structure.

    Short-lived background pairs dominate single snapshots while long-lived
    cliques keep wide intervals nonempty, which is the regime where interval
    seeding and the top-down maximal scan pay off.
    """
    rng = random.Random(seed)
    snapshots: list[list[tuple[int, int]]] = [[] for _ in range(t)]
    for _ in range(4000):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        start = rng.randrange(t)
        for s in range(start, min(t, start + rng.randint(1, 3))):
            snapshots[s].append((u, v))
    for _ in range(30):
        members = rng.sample(range(n), 7)
        start = rng.randrange(t - 8)
        for s in range(start, min(t, start + rng.randint(8, 35))):
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    snapshots[s].append((members[i], members[j]))
    return TemporalGraph(snapshots, [str(i) for i in range(n)])


# -- acceptance reporting: one pass/fail line per criterion in the summary ------

_acceptance_results: list[str] = []


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        _acceptance_results.append(f"{status}  {name}")
    elif report.when == "setup" and report.skipped:
        _acceptance_results.append(f"SKIP  {name}")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for line in _acceptance_results:
        terminalreporter.write_line(line)
