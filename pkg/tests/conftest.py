import os
import sys
import time
from contextlib import contextmanager

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from fmring.multipliers import MultiplierSystem  # noqa: E402

import oracles  # noqa: E402

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance criterion; fails the test if it overruns its time budget."""

    @contextmanager
    def record(number, title, budget_s):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < budget_s, f"criterion {number} took {elapsed:.2f}s (budget {budget_s}s)"
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            _CRITERIA.append((number, title, ok, elapsed, budget_s))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, elapsed, budget in sorted(_CRITERIA):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {title} ({elapsed:.2f}s / {budget}s)")


@pytest.fixture(scope="session")
def valid01_n3():
    """All valid (01)-tensors of order 3 as dicts, by exhaustive sweep over the free entries."""
    return oracles.sweep_systems(3, (0, 1))


@pytest.fixture(scope="session")
def as_system():
    def build(s, n, ring):
        return MultiplierSystem.from_function(n, ring, lambda i, j, k: s[i, j, k])

    return build
