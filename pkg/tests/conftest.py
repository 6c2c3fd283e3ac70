import numpy as np
import pytest

from rabi_jc.eigen import symmetric_eigh

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session", autouse=True)
def _compiled_kernels():
    # Trigger numba compilation (or cache load) before any timed test.
    symmetric_eigh(np.array([[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]]))
    symmetric_eigh(np.eye(3), want_vectors=False)


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion, then assert."""

    def record(name, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
