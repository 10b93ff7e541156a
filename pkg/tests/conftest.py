import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from herdreg import DEFAULT_LEADER_ALPHA, DEFAULT_MARKET, AgentProfiles, CostSpec, UtilitySpec  # noqa: E402

# fixtures below are immutable, so sharing them across examples is safe
settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("default")

# frozen from the independent oracles in oracles.py (damped iteration + bisection)
THRESHOLD_K05 = 0.005600729406987739
MU_025_0006 = 0.4631823476974831
GAIN_025_0006 = 0.5074375912701408
GAIN_025_001 = 0.5368964394111995


@pytest.fixture
def market():
    return DEFAULT_MARKET


@pytest.fixture
def lead():
    return DEFAULT_LEADER_ALPHA


@pytest.fixture
def risky():
    return AgentProfiles(DEFAULT_LEADER_ALPHA, 0.25)


@pytest.fixture
def utils():
    return UtilitySpec.linear(0.9, 1.0)


@pytest.fixture
def u(utils):
    return utils.policy


@pytest.fixture
def cost05():
    return CostSpec(0.5)


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(acceptance_log.LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
