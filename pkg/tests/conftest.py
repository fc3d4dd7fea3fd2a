import pytest

from asorder.artin_schreier import make_K
from asorder.ff_core import make_field


@pytest.fixture(scope="session")
def F3():
    return make_field(3, 1)


@pytest.fixture(scope="session")
def F9():
    return make_field(3, 2, (1, 0, 1))


@pytest.fixture(scope="session")
def K27(F3):
    return make_K(F3, 1)


@pytest.fixture(scope="session")
def K729(F9):
    return make_K(F9, 1)


def brute_order(u):
    """Multiplicative order by repeated multiplication."""
    x, k = u, 1
    while not x.is_one():
        x = x * u
        k += 1
    return k


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
