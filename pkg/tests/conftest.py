import numpy as np
import pytest

from spatial_majority.model import make_situation


def pure_utility(ideal, metric, x):
    """Plain-float utility, independent of the numpy evaluation path."""
    k = len(ideal)
    d = [float(x[a]) - float(ideal[a]) for a in range(k)]
    return -sum(d[a] * float(metric[a][b]) * d[b] for a in range(k) for b in range(k))


def exhaustive_counts(situation, x, y):
    """(prefer x, prefer y, indifferent) by direct per-voter comparison."""
    px = py = 0
    for v in situation.voters:
        ux = pure_utility(v.ideal, v.metric, x)
        uy = pure_utility(v.ideal, v.metric, y)
        px += ux > uy
        py += uy > ux
    return px, py, situation.size - px - py


@pytest.fixture
def square():
    return make_situation([(1, 0), (-1, 0), (0, 1), (0, -1)])


@pytest.fixture
def plott3():
    return make_situation([(0, 0), (1, 0), (-1, 0)])


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one pass/fail line for an acceptance criterion."""
    def record(number, name, passed, detail=""):
        _CRITERIA[number] = f"criterion {number} {'PASS' if passed else 'FAIL'}: {name}" + (
            f" ({detail})" if detail else "")
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[k])
