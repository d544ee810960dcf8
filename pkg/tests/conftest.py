import numpy as np
import pytest

from apvm.state import landau_grid, weibel_grid

_CRITERIA = {}


def record_criterion(number, passed, detail):
    """Store (and print) the verdict line of an acceptance criterion."""
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
    _CRITERIA[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[number])


@pytest.fixture(scope="session")
def small_landau_grid():
    return landau_grid(nx=16, np1=32, np2=32)


@pytest.fixture(scope="session")
def small_weibel_grid():
    return weibel_grid(nx=16, np1=32, np2=32)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
