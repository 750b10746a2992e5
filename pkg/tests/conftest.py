import numpy as np
import pytest

from inertia import groups


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def rot(axis, degrees):
    return groups.rotation_matrix(np.eye(3)[axis], np.deg2rad(degrees))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
