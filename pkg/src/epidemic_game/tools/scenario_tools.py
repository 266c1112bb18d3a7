"""Intervention scenarios and their Monte Carlo ensembles.

Agents 0..m0-1 start infected. Under delayed isolation an agent first infected on
day k keeps the normal level u on days k..k+T-1 and switches to u_star on day k+T.
"""
from __future__ import annotations

import logging

import numpy as np
from joblib import Parallel, delayed

from .. import config
from ..schemas.population import AgentState
from ..schemas.scenario import EnsembleResult, InterventionCase, ScenarioSpec
from ..utils.rng import indexed_stream
from .dynamics_tools import step_array

logger = logging.getLogger(__name__)

NEVER_INFECTED = -1


def policy_activity(
    spec: ScenarioSpec,
    agent_state: AgentState | int,
    days_since_infection: int | None,
    k: int,
) -> float:
    """Activity level one agent plays on day ``k`` under the scenario's case."""
    infected = AgentState(agent_state) == AgentState.INFECTED
    if spec.case is InterventionCase.NO_INTERVENTION:
        return spec.u
    if spec.case is InterventionCase.LOCKDOWN:
        return spec.u_star
    if spec.case is InterventionCase.IMMEDIATE_ISOLATION:
        return spec.u_star if infected else spec.u
    # delayed isolation
    if not infected:
        return spec.u
    if days_since_infection is None:
        raise ValueError("an infected agent needs days_since_infection under delayed isolation")
    return spec.u_star if days_since_infection >= spec.T else spec.u


def activity_levels(
    spec: ScenarioSpec, states: np.ndarray, infection_day: np.ndarray, k: int
) -> np.ndarray:
    """Vectorized :func:`policy_activity` over the whole population."""
    levels = np.full(states.shape, spec.u, dtype=np.float64)
    infected = states == 1
    if spec.case is InterventionCase.LOCKDOWN:
        levels[:] = spec.u_star
    elif spec.case is InterventionCase.IMMEDIATE_ISOLATION:
        levels[infected] = spec.u_star
    elif spec.case is InterventionCase.DELAYED_ISOLATION:
        levels[infected & (k - infection_day >= spec.T)] = spec.u_star
    return levels


def _simulate(spec: ScenarioSpec, run_index: int) -> tuple[list[int], np.ndarray]:
    if not 0 <= run_index < spec.runs:
        raise ValueError(f"run_index must lie in [0, {spec.runs}), got {run_index}")

    rng = indexed_stream(spec.seed, run_index)
    states = np.zeros(spec.M, dtype=np.int8)
    states[: spec.m0] = 1
    infection_day = np.where(states == 1, 0, NEVER_INFECTED)
    m_k = [spec.m0]

    for k in range(spec.horizon):
        if m_k[-1] == spec.M:
            break
        levels = activity_levels(spec, states, infection_day, k)
        next_states = step_array(states, levels, rng)
        infection_day[(next_states == 1) & (states == 0)] = k + 1
        states = next_states
        m_k.append(int(states.sum()))

    # saturated runs stay constant
    m_k.extend([m_k[-1]] * (spec.horizon + 1 - len(m_k)))
    return m_k, infection_day


def run_trajectory(spec: ScenarioSpec, run_index: int) -> list[int]:
    """Infected count m_0..m_horizon for one run; a function of (seed, run_index)."""
    m_k, _ = _simulate(spec, run_index)
    return m_k


def infection_days(spec: ScenarioSpec, run_index: int) -> list[int | None]:
    """First infected day of every agent in one run, None if never infected."""
    _, days = _simulate(spec, run_index)
    return [None if d == NEVER_INFECTED else int(d) for d in days]


def monte_carlo(
    spec: ScenarioSpec, keep_trajectories: bool = False, n_jobs: int | None = None
) -> EnsembleResult:
    """Run ``spec.runs`` independent trajectories and reduce them to envelopes.

    Args:
        spec: Scenario to simulate.
        keep_trajectories: Retain every per-run trajectory in the result.
        n_jobs: joblib worker count; defaults to ``EPIDEMIC_GAME_N_JOBS``.

    Returns:
        Pointwise mean, min and max of m_k over the runs, reduced in run order.
    """
    n_jobs = config.N_JOBS if n_jobs is None else n_jobs
    logger.info(
        f"Simulating {spec.runs} runs of case '{spec.case.value}' "
        f"(M={spec.M}, u={spec.u}, u_star={spec.u_star}, horizon={spec.horizon})"
    )
    trajectories = Parallel(n_jobs=n_jobs)(
        delayed(run_trajectory)(spec, run_index) for run_index in range(spec.runs)
    )
    matrix = np.asarray(trajectories, dtype=np.int64)
    std = matrix.std(axis=0, ddof=1) if spec.runs > 1 else np.zeros(matrix.shape[1])

    return EnsembleResult(
        mean_mk=matrix.mean(axis=0).tolist(),
        min_mk=matrix.min(axis=0).tolist(),
        max_mk=matrix.max(axis=0).tolist(),
        std_mk=std.tolist(),
        runs=spec.runs,
        trajectories=matrix.tolist() if keep_trajectories else None,
    )
