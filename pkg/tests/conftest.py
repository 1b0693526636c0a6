import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from cellsp.complex import CellComplex

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# acceptance outcomes, printed once at the end of the session
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def triangle():
    return CellComplex(3, ((0, 1), (0, 2), (1, 2)), ((0, 1, 2),))


@pytest.fixture
def square():
    return CellComplex(4, ((0, 1), (1, 2), (2, 3), (0, 3)), ((0, 1, 2, 3),))


@pytest.fixture
def four_cycle():
    return CellComplex(4, ((0, 1), (1, 2), (2, 3), (0, 3)))


@pytest.fixture
def path3():
    return CellComplex(3, ((0, 1), (1, 2)))
