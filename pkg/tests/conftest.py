import numpy as np
import pytest

from hypothesis import settings

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20241014)


def random_coord(rng, radius=2.0):
    from birkhoff import CoordUW

    def disc():
        r = radius * np.sqrt(rng.uniform())
        return r * np.exp(2j * np.pi * rng.uniform())

    return CoordUW(disc(), disc())


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[key])
