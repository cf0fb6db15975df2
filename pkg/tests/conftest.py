import numpy as np
import pytest

from theta13.torus import make_siegel, random_siegel


def random_zs(count, seed=0):
    rng = np.random.default_rng(seed)
    return [random_siegel(rng) for _ in range(count)]


@pytest.fixture(scope="session")
def Z_generic():
    return make_siegel(0.1 + 1.1j, 0.2 + 0.3j, -0.1 + 1.4j)


@pytest.fixture(scope="session")
def Z_identity():
    return make_siegel(1j, 0, 1j)


@pytest.fixture(scope="session")
def Z_random():
    return random_zs(5, seed=2024)


@pytest.fixture
def rng():
    return np.random.default_rng(99)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
