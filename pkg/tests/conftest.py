import random

import pytest

from trace_horizon.matrix_core import IntMatrix, block_diag, companion, standard_symplectic_form
from trace_horizon.polynomial import IntPolynomial

LEHMER = IntPolynomial.from_high([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def cat_map():
    return IntMatrix.from_rows([[2, 1], [1, 1]])


@pytest.fixture
def rotation():
    return IntMatrix.from_rows([[0, -1], [1, 0]])


@pytest.fixture
def J4():
    return standard_symplectic_form(2)


@pytest.fixture
def lehmer():
    return LEHMER


@pytest.fixture
def lehmer_companion():
    return companion(LEHMER)


@pytest.fixture
def cat_plus_identity(cat_map):
    return block_diag(cat_map, IntMatrix.identity(2))


# acceptance results, printed once at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
