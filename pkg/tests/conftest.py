import numpy as np
import pytest

from pants_margulis.surface_group import fricke_construct


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def pants():
    return fricke_construct(-3.0, -3.0, -3.0)


@pytest.fixture(scope="session")
def cusped_pants():
    return fricke_construct(-3.0, -3.0, -2.0)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
