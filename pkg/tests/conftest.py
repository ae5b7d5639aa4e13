import numpy as np
import pytest

from qgwalk.graphspec import Edge, GraphSpec, Site

_ACCEPTANCE = []


def random_graph(rng: np.random.Generator, n: int, density: float = 0.5) -> GraphSpec:
    """Connected-ish random graph: a spanning path plus random extra edges."""
    sites = tuple(Site(i, float(rng.uniform(-1, 1))) for i in range(n))
    pairs = {(i, i + 1) for i in range(n - 1)}
    for i in range(n):
        for j in range(i + 2, n):
            if rng.random() < density:
                pairs.add((i, j))
    edges = tuple(Edge(a, b, float(rng.uniform(-1, 1))) for a, b in sorted(pairs))
    return GraphSpec(sites, edges, {})


def random_state(rng: np.random.Generator, n: int) -> np.ndarray:
    psi = rng.normal(size=n) + 1j * rng.normal(size=n)
    return psi / np.linalg.norm(psi)


@pytest.fixture
def rng():
    return np.random.default_rng(20211007)


@pytest.fixture
def acceptance():
    def record(criterion: str, passed: bool, detail: str = "", fail_label: str = "FAIL"):
        status = "PASS" if passed else fail_label
        line = f"[{status}] {criterion}  {detail}".rstrip()
        _ACCEPTANCE.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE:
        terminalreporter.write_line(line)
