import numpy as np
import pytest
from hypothesis import settings

from groversim.statevec import StateVector

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def random_state(n, rng):
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, v / np.linalg.norm(v))


@pytest.fixture
def rng():
    return np.random.default_rng(20260)


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
