import numpy as np
import pytest
from hypothesis import settings

from sigpaths.harness import random_path

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def random_paths(rng):
    return [random_path(rng, int(rng.integers(1, 4)), int(rng.integers(1, 7))) for _ in range(30)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
