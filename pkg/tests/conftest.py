import random

import numpy as np
import pytest

from agmceliece import LinearCode, hermitian_curve, suzuki_curve

# acceptance criteria append their one-line verdicts here; printed at the end
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def herm2():
    return hermitian_curve(2)


@pytest.fixture(scope="session")
def herm3():
    return hermitian_curve(3)


@pytest.fixture(scope="session")
def herm4():
    return hermitian_curve(4)


@pytest.fixture(scope="session")
def suz2():
    return suzuki_curve(2)


@pytest.fixture()
def rng():
    return random.Random(0xA6)


def random_code(field, n, k, rng) -> LinearCode:
    rows = np.array([[field.random_rep(rng) for _ in range(n)] for _ in range(k)])
    return LinearCode(field, n, rows)


def random_matrix(field, rows, cols, rng) -> np.ndarray:
    return np.array(
        [[field.random_rep(rng) for _ in range(cols)] for _ in range(rows)], dtype=np.int64
    )
