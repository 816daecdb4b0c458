import numpy as np
import pytest

from bichromatic.geometry import Instance

DEMO = [((0, 0), (4, 0)), ((0, 1), (4, 1))]
CROSSED = [((1, 1), (3, 3)), ((1, 3), (3, 1))]


def random_instance(rng, n, kind="uniform"):
    if kind == "uniform":
        pts = rng.random((n, 2, 2))
    elif kind == "two-cluster":
        a = rng.normal(size=(n, 2)) * 0.3
        b = rng.normal(size=(n, 2)) * 0.3 + [6.0, 1.0]
        flip = rng.random(n) < 0.5
        pts = np.stack([np.where(flip[:, None], b, a), np.where(flip[:, None], a, b)], axis=1)
    elif kind == "nearby-lens":
        a = rng.normal(size=(n, 2))
        b = rng.normal(size=(n, 2)) + [1.0, 0.0]
        pts = np.stack([a, b], axis=1)
    else:
        raise ValueError(kind)
    return Instance.from_coords(pts.tolist())


def random_pairs(rng, U, m):
    g = rng.integers(1, U + 1, size=(m, 2, 2))
    return [tuple(tuple(int(v) for v in p) for p in pair) for pair in g]


@pytest.fixture
def demo():
    return Instance.from_coords(DEMO)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
