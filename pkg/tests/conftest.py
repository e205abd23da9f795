import numpy as np
import pytest
from hypothesis import settings

from honeyrobin.geometry import random_convex_polygon

settings.register_profile("default", max_examples=30, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def polygon_from_seed(seed: int, n: int):
    return random_convex_polygon(np.random.default_rng(seed), n)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
