import math
import warnings

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from pulsegrav.model import REDUCED, Circular, Linear, PulseConfig

settings.register_profile("pulsegrav", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("pulsegrav")

warnings.filterwarnings("ignore", category=RuntimeWarning)

# desk-scale configuration in G = c = 1 units: L = 5, D = 100, kappa = 4e-4
L_RED, D_RED, U0_RED = 5.0, 100.0, 1e-4
OMEGA_RED = 3 * math.pi / 5


def reduced_circular() -> PulseConfig:
    return PulseConfig(L_RED, D_RED, 1.0, Circular(U0_RED), REDUCED)


def reduced_linear(omega: float = OMEGA_RED, phase: float = 0.3) -> PulseConfig:
    return PulseConfig(L_RED, D_RED, 1.0, Linear(U0_RED, omega, phase), REDUCED)


def si_config(power: float = 1e15, **kw) -> PulseConfig:
    kw.setdefault("length", 0.1)
    kw.setdefault("distance", 50.0)
    return PulseConfig.from_power(power, **kw)


@pytest.fixture(scope="session")
def circ():
    return reduced_circular()


@pytest.fixture(scope="session")
def lin():
    return reduced_linear()


@pytest.fixture(params=["circular", "linear"], scope="session")
def both(request):
    return reduced_circular() if request.param == "circular" else reduced_linear()


@pytest.fixture(scope="session")
def si():
    return si_config()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
