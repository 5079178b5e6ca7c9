import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def smooth(c):
    """A smooth, non-polynomial test function on (n, 2) points."""
    return lambda x: np.sin(c[0] * x[:, 0] + c[1] * x[:, 1]) * np.exp(c[2] * x[:, 1] + c[3] * x[:, 0])


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
