import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from prdense import kernels  # noqa: E402
from prdense.graph import from_edges  # noqa: E402


def clique(n):
    return from_edges([(i, j) for i in range(n) for j in range(i + 1, n)])


def path(n):
    return from_edges([(i, i + 1) for i in range(n - 1)])


def star(leaves):
    return from_edges([(0, i) for i in range(1, leaves + 1)])


@pytest.fixture
def k4():
    return clique(4)


@pytest.fixture
def k5():
    return clique(5)


@pytest.fixture
def triangle_pendant():
    return from_edges([(0, 1), (1, 2), (2, 0), (2, 3)])


@pytest.fixture(params=kernels.available_backends())
def each_backend(request):
    prev = kernels.BACKEND
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(prev)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# Acceptance report: tests/test_acceptance.py appends (criterion, ok, detail).
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
