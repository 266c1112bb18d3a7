import math

import numpy as np
import pytest

from epidemic_game.schemas.costs import CostParams
from epidemic_game.schemas.population import ActionProfile, PopulationState
from epidemic_game.schemas.scenario import InterventionCase, ScenarioSpec

E_INV = math.exp(-1.0)


@pytest.fixture
def four_agent_state():
    """Agent 0 infected, agents 1-3 healthy (the four-agent meeting example)."""
    return PopulationState.initial(4, 1)


@pytest.fixture
def four_agent_actions():
    return ActionProfile(levels=(0.1, 0.2, 0.3, 0.4))


@pytest.fixture
def unit_costs():
    """alpha = 1 with the default exponential activity cost and q(u) = u."""
    return CostParams(alpha=1.0)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(12345))


@pytest.fixture
def small_spec():
    """A quick no-intervention ensemble that saturates well before its horizon."""
    return ScenarioSpec(
        case=InterventionCase.NO_INTERVENTION,
        M=60,
        m0=1,
        u=1.0 / 60,
        u_star=0.1 / 60,
        horizon=200,
        runs=12,
        seed=3,
    )
