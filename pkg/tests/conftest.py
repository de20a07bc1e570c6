import math

import numpy as np
import pytest

from ringpursuit import ScenarioParams

ACCEPTANCE_LINES = []


@pytest.fixture
def ref_params():
    """rho = gamma = 0.5 with the evader 0.4 along +x."""
    return ScenarioParams(rho=0.5, gamma=0.5, r=0.4)


@pytest.fixture(scope="session")
def random_scenarios():
    rng = np.random.default_rng(20231018)
    out = []
    for _ in range(500):
        params = ScenarioParams(rho=rng.uniform(0.05, 0.9), gamma=rng.uniform(0.1, 0.9), r=rng.uniform(0.0, 0.9))
        psi = rng.uniform(math.pi, 2 * math.pi)
        direction = int(rng.choice([-1, 1]))
        out.append((params, psi, direction))
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
