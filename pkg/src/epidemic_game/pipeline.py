"""Runs one validated configuration end to end: compute, then write artifacts."""
from __future__ import annotations

import logging
from typing import Any

from . import __version__
from .agents.q_learning_agent import train
from .errors import EpidemicGameError
from .schemas.costs import ObjectiveCurve
from .schemas.outputs import LearningOutput, NashOutput, SimulationOutput, SIOutput
from .schemas.run_config import LearnOptions, NashOptions, RunConfig, SimulateOptions, SIOptions
from .tools.file_tools import emit_outputs
from .tools.loop_tools import check_flattening
from .tools.nash_tools import equilibrium_report, equilibrium_sweep, objective_curve
from .tools.scenario_tools import infection_days, monte_carlo
from .tools.si_tools import integrate_many, sample_daily

logger = logging.getLogger(__name__)


def _simulate(options: SimulateOptions, config: RunConfig) -> SimulationOutput:
    spec = options.to_spec(config.seed)
    ensemble = monte_carlo(spec, keep_trajectories=options.keep_runs, n_jobs=config.jobs)
    logger.info(
        f"Mean envelope reaches M/2 on day {ensemble.day_to_reach(spec.M / 2)}, "
        f"fastest growth on day {ensemble.peak_growth_day()}"
    )
    raster = None
    if options.raster_run is not None:
        raster = infection_days(spec, options.raster_run)
    return SimulationOutput(ensemble=ensemble, raster=raster)


def _nash(options: NashOptions, config: RunConfig) -> NashOutput:
    params = options.cost_params()
    if options.sweep:
        rows = equilibrium_sweep(options.M, params, shaped=options.shaped)
        at_m = rows[options.m]
    else:
        rows = [equilibrium_report(options.m, options.M, params, shaped=options.shaped)]
        at_m = rows[0]

    curves = None
    if options.curve_alphas:
        sampled = objective_curve(options.m, at_m.u_infected, params, options.curve_alphas)
        curves = [
            ObjectiveCurve(alpha=alpha, m=options.m, u_infected=at_m.u_infected, u=u.tolist(), cost=cost.tolist())
            for alpha, (u, cost) in sampled.items()
        ]
    return NashOutput(rows=rows, curves=curves)


def _learn(options: LearnOptions, config: RunConfig) -> LearningOutput:
    cfg = options.to_train_config(config.seed)
    table, records = train(cfg)
    status = check_flattening(records, cfg.horizon)
    logger.info(f"Flattening check: {status}")
    return LearningOutput(table=table, records=records)


def _si(options: SIOptions, config: RunConfig) -> SIOutput:
    trajectories = integrate_many(options.beta, options.s0, days=options.days, dt=options.dt)
    if not options.dense:
        trajectories = [sample_daily(trajectory) for trajectory in trajectories]
    return SIOutput(trajectories=trajectories)


RUNNERS = {
    "simulate": _simulate,
    "nash": _nash,
    "learn": _learn,
    "si": _si,
}


def compute(config: RunConfig) -> Any:
    """The in-memory result of a run, without touching the filesystem."""
    logger.info(f"Running '{config.command}' with seed={config.seed}")
    return RUNNERS[config.command](config.options, config)


def run(config: RunConfig) -> dict[str, Any]:
    """Compute the result and write its CSV files plus manifest.json.

    Returns:
        ``{"status": "success", "files": [...]}`` or ``{"status": "error", "error": ...}``.
    """
    try:
        result = compute(config)
    except (EpidemicGameError, ArithmeticError, ValueError) as e:
        logger.error(f"Run '{config.command}' failed: {e}")
        return {"status": "error", "error": str(e)}
    return emit_outputs(result, config.out, manifest=config.manifest(__version__))
