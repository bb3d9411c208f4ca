import numpy as np
import pytest

from bqscat.fields import ZeroSource
from bqscat.oracle import WavepacketSource, WavepacketSpec
from bqscat.spectral import Scattering


@pytest.fixture(scope="session")
def zero_source():
    return ZeroSource()


@pytest.fixture(scope="session")
def short_wave():
    """A wavepacket cut at x = 30: cheap, and fine for exact algebraic identities."""
    return WavepacketSource(WavepacketSpec(eps=1e-2, x_max=30.0, n_quad=200, phase=0.4))


@pytest.fixture(scope="session")
def short_scat(short_wave):
    return Scattering(short_wave)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(capsys):
    """Record one pass/fail line per acceptance criterion and echo it."""
    def record(number, title, ok, detail):
        line = f"CRITERION {number} {'PASS' if ok else 'FAIL'}: {title} | {detail}"
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
