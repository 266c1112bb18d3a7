from __future__ import annotations

import logging
import math
from typing import Iterable

import numpy as np

from ..schemas.si import SIParams, SITrajectory
from ..utils.validation import check_unit_interval

logger = logging.getLogger(__name__)

# Relative slack under which days / dt counts as a whole number of steps
STEP_SLACK = 1e-9


def _rate(s: float, beta: float) -> float:
    return beta * s * (1.0 - s)


def si_derivative(s: float, beta: float) -> float:
    """Growth rate of the infected fraction, beta * s * (1 - s)."""
    return _rate(check_unit_interval(s, "s"), beta)


def logistic_solution(t: float, beta: float, s0: float) -> float:
    """Closed-form solution s(t) = s0 e^{bt} / (1 - s0 + s0 e^{bt})."""
    if s0 == 0.0:
        return 0.0
    # divide through by e^{bt} to stay finite for large t
    decay = math.exp(-beta * t)
    return s0 / ((1.0 - s0) * decay + s0)


def _rk4_step(s: float, beta: float, h: float) -> float:
    k1 = _rate(s, beta)
    k2 = _rate(s + 0.5 * h * k1, beta)
    k3 = _rate(s + 0.5 * h * k2, beta)
    k4 = _rate(s + h * k3, beta)
    return min(1.0, max(0.0, s + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0))


def integrate(params: SIParams) -> SITrajectory:
    """Classical fixed-step RK4 solution on [0, days], clamped to [0, 1].

    Args:
        params: Infection coefficient, initial fraction, duration and step.

    Returns:
        The trajectory at t_n = n * dt, plus one shortened final step ending
        exactly at ``days`` when ``days`` is not a multiple of ``dt``.
    """
    h = params.dt
    beta = params.beta
    n_full = int(math.floor(params.days / h + STEP_SLACK))
    remainder = params.days - n_full * h
    times = [n * h for n in range(n_full + 1)]
    if remainder > STEP_SLACK * h:
        times.append(params.days)
    else:
        times[-1] = params.days
    n_steps = len(times) - 1

    values = np.empty(n_steps + 1, dtype=np.float64)
    s = values[0] = params.s0
    for n in range(n_steps):
        s = _rk4_step(s, beta, times[n + 1] - times[n] if n == n_full else h)
        values[n + 1] = s

    logger.info(f"Integrated SI model with beta={beta} over {n_steps} steps, s_end={s:.6f}")
    return SITrajectory(beta=beta, t=times, s=values.tolist())


def integrate_many(
    betas: Iterable[float], s0: float, days: float = 100.0, dt: float = 1e-2
) -> list[SITrajectory]:
    """One trajectory per infection coefficient, sharing s0, duration and step."""
    return [integrate(SIParams(beta=beta, s0=s0, days=days, dt=dt)) for beta in betas]


def sample_daily(trajectory: SITrajectory) -> SITrajectory:
    """Keep the points at integer days, for comparison with m_k / M."""
    if len(trajectory.t) < 2:
        return trajectory
    dt = trajectory.t[1] - trajectory.t[0]
    last_day = int(math.floor(trajectory.t[-1] + 1e-9))
    indices = [min(len(trajectory.t) - 1, int(round(day / dt))) for day in range(last_day + 1)]
    return SITrajectory(
        beta=trajectory.beta,
        t=[float(day) for day in range(last_day + 1)],
        s=[trajectory.s[i] for i in indices],
    )
