"""Stage-game equilibria, the centralized optimum and the welfare gap between them.

Within each role (healthy, infected) agents are exchangeable, so equilibria and
the optimum are searched over profiles where each role shares one level. The
infected cost does not depend on anyone else; healthy agents best-respond to the
infected level. The solver is the one-day game, so a nonzero gamma is ignored.
"""
from __future__ import annotations

import logging
from typing import Iterable, Sequence

import numpy as np

from ..errors import ConfigError
from ..plugins.cost_plugins import p_default
from ..schemas.costs import CostParams, EquilibriumReport, StageEquilibrium, SystemOptimum
from ..schemas.population import AgentState
from .dynamics_tools import infection_probability
from .optimize_tools import scalar_minimize

logger = logging.getLogger(__name__)

__all__ = [
    "p_default",
    "expected_stage_cost",
    "healthy_objective",
    "infected_objective",
    "objective_curve",
    "stage_nash",
    "system_cost",
    "system_optimum",
    "welfare_loss",
    "equilibrium_report",
    "equilibrium_sweep",
]

COORDINATE_ROUNDS = 50
OPTIMUM_GRID = 400


def _check_counts(m: int, M: int) -> None:
    if M < 1 or not 0 <= m <= M:
        raise ValueError(f"need 0 <= m <= M and M >= 1, got m={m}, M={M}")


def _shaping(params: CostParams, shaped: bool):
    if not shaped:
        return None
    q = params.q()
    if q is None:
        raise ConfigError("shaped costs requested but CostParams.shaping is 'none'")
    return q


def _minimize(objective, params: CostParams) -> tuple[float, float]:
    # exactly equal values where p has underflowed are ranked by log p
    return scalar_minimize(objective, vectorized=True, tie_key=params.p().tie_key)


def healthy_objective(u, m: int, u_infected: float, params: CostParams):
    """Expected healthy cost 1 - (1 - min(u, u_infected))^m + alpha p(u)."""
    risk = 1.0 - (1.0 - np.minimum(u, u_infected)) ** m
    return risk + params.alpha * params.p()(u)


def infected_objective(params: CostParams, m: int, shaped: bool):
    """The part of the infected cost that depends on its own level."""
    p = params.p()
    q = _shaping(params, shaped)

    def objective(u):
        value = params.alpha * p(u)
        return value + q(u, m) if q is not None else value

    return objective


def expected_stage_cost(
    x: AgentState | int,
    u: float,
    m: int,
    u_infected: float,
    params: CostParams,
    shaped: bool = False,
    infected_levels: Sequence[float] | None = None,
) -> float:
    """Expected one-day cost of an agent in state ``x`` playing ``u``.

    Args:
        x: The agent's state.
        u: The agent's activity level.
        m: Number of infected agents.
        u_infected: Common level of the infected agents.
        params: Cost parameters.
        shaped: Add the shaping term to the infected cost.
        infected_levels: Individual infected levels; overrides ``m`` and
            ``u_infected`` for a healthy agent.

    Returns:
        The expected cost.
    """
    if AgentState(x) == AgentState.INFECTED:
        return float(1.0 + infected_objective(params, m, shaped)(u))
    if infected_levels is not None:
        risk = infection_probability(u, infected_levels)
        return float(risk + params.alpha * params.p()(u))
    return float(healthy_objective(u, m, u_infected, params))


def stage_nash(m: int, M: int, params: CostParams, shaped: bool = False) -> StageEquilibrium:
    """Role-homogeneous Nash equilibrium of the one-day game."""
    _check_counts(m, M)
    if params.gamma != 0.0:
        logger.warning(f"stage_nash solves the one-day game; gamma={params.gamma} is ignored")

    u_infected, _ = _minimize(infected_objective(params, m, shaped), params)
    u_healthy, _ = _minimize(lambda u: healthy_objective(u, m, u_infected, params), params)
    cost_infected = expected_stage_cost(AgentState.INFECTED, u_infected, m, u_infected, params, shaped)
    cost_healthy = expected_stage_cost(AgentState.HEALTHY, u_healthy, m, u_infected, params, shaped)

    logger.info(
        f"Stage Nash (m={m}, M={M}, alpha={params.alpha}, shaped={shaped}): "
        f"u_healthy={u_healthy:.6g}, u_infected={u_infected:.6g}"
    )
    return StageEquilibrium(
        u_healthy=u_healthy,
        u_infected=u_infected,
        cost_healthy=cost_healthy,
        cost_infected=cost_infected,
        system_cost=m * cost_infected + (M - m) * cost_healthy,
        m=m,
        M=M,
        shaped=shaped,
    )


def system_cost(u_healthy, u_infected, m: int, M: int, params: CostParams):
    """Total unshaped expected cost when each role shares one level."""
    p = params.p()
    infected_total = m * (1.0 + params.alpha * p(u_infected))
    healthy_total = (M - m) * healthy_objective(u_healthy, m, u_infected, params)
    return infected_total + healthy_total


def _coordinate_descent(u_h: float, u_i: float, m: int, M: int, params: CostParams):
    best = (u_h, u_i, float(system_cost(u_h, u_i, m, M, params)))
    for _ in range(COORDINATE_ROUNDS):
        u_h, _ = _minimize(lambda u: system_cost(u, u_i, m, M, params), params)
        u_i, value = _minimize(lambda v: system_cost(u_h, v, m, M, params), params)
        improved = value < best[2] - 1e-15
        if value < best[2]:
            best = (u_h, u_i, value)
        if not improved:
            break
    return best


def system_optimum(m: int, M: int, params: CostParams) -> SystemOptimum:
    """Centralized minimum L_o of the total stage cost.

    A 401 x 401 grid over (u_healthy, u_infected) seeds a coordinate descent whose
    steps are full scalar minimizations. The unshaped Nash profile is a second
    seed, so the result never exceeds the Nash system cost.
    """
    _check_counts(m, M)
    axis = np.linspace(0.0, 1.0, OPTIMUM_GRID + 1)
    grid_h, grid_i = np.meshgrid(axis, axis, indexing="ij")
    totals = system_cost(grid_h, grid_i, m, M, params)
    row, col = np.unravel_index(int(np.argmin(totals)), totals.shape)

    nash = stage_nash(m, M, params.model_copy(update={"gamma": 0.0}), shaped=False)
    seeds = [(float(axis[row]), float(axis[col])), (nash.u_healthy, nash.u_infected)]

    best = None
    for u_h, u_i in seeds:
        candidate = _coordinate_descent(u_h, u_i, m, M, params)
        if best is None or candidate[2] < best[2]:
            best = candidate
    if nash.system_cost < best[2]:
        best = (nash.u_healthy, nash.u_infected, nash.system_cost)

    u_h, u_i, total = best
    logger.info(f"System optimum (m={m}, M={M}): u_healthy={u_h:.6g}, u_infected={u_i:.6g}, L_o={total:.10g}")
    return SystemOptimum(u_healthy=u_h, u_infected=u_i, system_cost=total, m=m, M=M)


def welfare_loss(m: int, M: int, params: CostParams) -> float:
    """L* of the unshaped equilibrium minus the centralized optimum L_o."""
    nash = stage_nash(m, M, params, shaped=False)
    return nash.system_cost - system_optimum(m, M, params).system_cost


def equilibrium_report(m: int, M: int, params: CostParams, shaped: bool = False) -> EquilibriumReport:
    """One report row; L_star and welfare_loss refer to the equilibrium requested."""
    nash = stage_nash(m, M, params, shaped=shaped)
    optimum = system_optimum(m, M, params)
    return EquilibriumReport(
        m=m,
        M=M,
        alpha=params.alpha,
        shaped=shaped,
        u_healthy=nash.u_healthy,
        u_infected=nash.u_infected,
        cost_healthy=nash.cost_healthy,
        cost_infected=nash.cost_infected,
        L_star=nash.system_cost,
        L_opt=optimum.system_cost,
        welfare_loss=nash.system_cost - optimum.system_cost,
    )


def equilibrium_sweep(M: int, params: CostParams, shaped: bool = False) -> list[EquilibriumReport]:
    """Report rows for every infected count m = 0..M."""
    return [equilibrium_report(m, M, params, shaped) for m in range(M + 1)]


def objective_curve(
    m: int,
    u_infected: float,
    params: CostParams,
    alphas: Iterable[float],
    points: int = 101,
) -> dict[float, tuple[np.ndarray, np.ndarray]]:
    """Healthy objective sampled on [0, 1] for several preference weights."""
    u = np.linspace(0.0, 1.0, points)
    curves = {}
    for alpha in alphas:
        weighted = params.model_copy(update={"alpha": alpha})
        curves[alpha] = (u, np.asarray(healthy_objective(u, m, u_infected, weighted)))
    return curves
