import pytest
from hypothesis import HealthCheck, settings

from pyracat.algmod.algebra import path_algebra_A, truncated_polynomial
from pyracat.catcore import MatCat
from pyracat.rng import make_rng

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def kx2():
    return truncated_polynomial(2)


@pytest.fixture(scope="session")
def a2():
    return path_algebra_A(2)


@pytest.fixture
def matcat():
    return MatCat()


@pytest.fixture
def rng():
    return make_rng(20240611)


# one pass/fail line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
