"""One-day transition kernel of the microscopic epidemic model.

A healthy agent i meets infected agent j with probability min(u_i, u_j), meetings
are independent, and any meeting with an infected agent infects. Infected agents
stay infected. Only agents infected at the start of a day infect on that day.
"""
from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from ..errors import DomainError
from ..schemas.population import ActionProfile, PopulationState
from ..utils.validation import check_unit_array, check_unit_interval

logger = logging.getLogger(__name__)

# Above this many infected factors the stay-healthy product is summed in log space
LOG_PRODUCT_THRESHOLD = 64


def meeting_probability(u_i: float, u_j: float) -> float:
    """Chance that two agents meet on one day: the smaller activity level."""
    return min(check_unit_interval(u_i, "u_i"), check_unit_interval(u_j, "u_j"))


def meeting_matrix(actions: ActionProfile) -> np.ndarray:
    """Pairwise meeting probabilities for a whole profile, zero on the diagonal."""
    levels = actions.as_array()
    matrix = np.minimum.outer(levels, levels)
    np.fill_diagonal(matrix, 0.0)
    return matrix


def _stay_healthy(levels: np.ndarray, infected_levels: np.ndarray) -> np.ndarray:
    """Probability of meeting no infected agent, for every entry of ``levels``."""
    if infected_levels.size == 0:
        return np.ones_like(levels)
    meets = np.minimum.outer(levels, infected_levels)
    if infected_levels.size > LOG_PRODUCT_THRESHOLD:
        with np.errstate(divide="ignore"):
            return np.exp(np.log1p(-meets).sum(axis=1))
    return (1.0 - meets).prod(axis=1)


def infection_probability(u_i: float, infected_levels: Sequence[float] | np.ndarray) -> float:
    """Probability that a healthy agent at level ``u_i`` is infected today.

    Args:
        u_i: Activity level of the healthy agent.
        infected_levels: Activity levels of every currently infected agent.

    Returns:
        1 - prod_j (1 - min(u_i, u_j)); zero when nobody is infected.

    Raises:
        DomainError: If any level is outside [0, 1].
    """
    u_i = check_unit_interval(u_i, "u_i")
    others = check_unit_array(infected_levels, "infected_levels")
    if others.size == 1:
        return min(u_i, float(others[0]))
    stay = _stay_healthy(np.array([u_i]), others)[0]
    return float(1.0 - stay)


def infection_probabilities(states: np.ndarray, levels: np.ndarray) -> np.ndarray:
    """Per-agent infection probability for one day; zero for infected agents."""
    infected = states.astype(bool)
    probabilities = np.zeros(levels.shape, dtype=np.float64)
    healthy = ~infected
    if healthy.any() and infected.any():
        probabilities[healthy] = 1.0 - _stay_healthy(levels[healthy], levels[infected])
    return probabilities


def transition_with_uniforms(
    states: np.ndarray, levels: np.ndarray, uniforms: np.ndarray
) -> np.ndarray:
    """Deterministic kernel: agent i ends infected iff it was, or u_i-draw < its risk.

    Args:
        states: 0/1 indicators at the start of the day.
        levels: Activity level of every agent.
        uniforms: One draw in [0, 1) per agent; ignored for infected agents.

    Returns:
        The 0/1 indicators at the start of the next day.
    """
    if not (states.shape == levels.shape == uniforms.shape):
        raise DomainError(
            f"states, levels and uniforms must share one shape, got "
            f"{states.shape}, {levels.shape}, {uniforms.shape}"
        )
    risk = infection_probabilities(states, levels)
    newly = (states == 0) & (uniforms < risk)
    return np.where(newly, 1, states).astype(np.int8)


def step_array(states: np.ndarray, levels: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Array form of :func:`step`; healthy agents draw in ascending index order."""
    healthy = states == 0
    uniforms = np.ones(states.shape, dtype=np.float64)
    uniforms[healthy] = rng.random(int(healthy.sum()))
    return transition_with_uniforms(states, levels, uniforms)


def step(state: PopulationState, actions: ActionProfile, rng: np.random.Generator) -> PopulationState:
    """Advance the population by one day.

    Args:
        state: Population at the start of day k.
        actions: Activity levels chosen on day k.
        rng: Random stream; one uniform is consumed per healthy agent.

    Returns:
        Population at the start of day k + 1.
    """
    if actions.size != state.size:
        raise DomainError(f"action profile has {actions.size} levels for {state.size} agents")
    next_states = step_array(state.as_array(), actions.as_array(), rng)
    return PopulationState.from_array(next_states, day=state.day + 1)


def expected_new_infections(state: PopulationState, actions: ActionProfile) -> float:
    """Expected m_{k+1} - m_k: the sum of healthy agents' infection probabilities."""
    if actions.size != state.size:
        raise DomainError(f"action profile has {actions.size} levels for {state.size} agents")
    return float(infection_probabilities(state.as_array(), actions.as_array()).sum())
