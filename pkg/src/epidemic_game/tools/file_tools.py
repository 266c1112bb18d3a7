from __future__ import annotations

import json
import logging
from functools import singledispatch
from pathlib import Path
from typing import Any

import pandas as pd

from .. import config
from ..schemas.costs import EquilibriumReport
from ..schemas.outputs import LearningOutput, NashOutput, SimulationOutput, SIOutput

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"


def _get_output_dir(out_dir: Path | str | None) -> Path:
    """Directory for artifacts; falls back to EPIDEMIC_GAME_OUT_DIR."""
    return Path(out_dir) if out_dir is not None else config.DEFAULT_OUT_DIR


@singledispatch
def frames_for(result: Any) -> dict[str, pd.DataFrame]:
    raise TypeError(f"no CSV layout for result type {type(result).__name__}")


@frames_for.register
def _(result: SimulationOutput) -> dict[str, pd.DataFrame]:
    ensemble = result.ensemble
    frames = {
        "envelope.csv": pd.DataFrame(
            {
                "day": range(len(ensemble.mean_mk)),
                "mean": ensemble.mean_mk,
                "min": ensemble.min_mk,
                "max": ensemble.max_mk,
            }
        )
    }
    if ensemble.trajectories is not None:
        frames["runs.csv"] = pd.DataFrame(
            [
                {"run": run, "day": day, "m": m}
                for run, trajectory in enumerate(ensemble.trajectories)
                for day, m in enumerate(trajectory)
            ],
            columns=["run", "day", "m"],
        )
    if result.raster is not None:
        frames["raster.csv"] = pd.DataFrame(
            {
                "agent": range(len(result.raster)),
                "infection_day": pd.array(result.raster, dtype="Int64"),
            }
        )
    return frames


@frames_for.register
def _(result: NashOutput) -> dict[str, pd.DataFrame]:
    columns = list(EquilibriumReport.model_fields)
    frames = {"nash.csv": pd.DataFrame([row.model_dump() for row in result.rows], columns=columns)}
    if result.curves:
        frames["objective_curve.csv"] = pd.DataFrame(
            [
                {"alpha": curve.alpha, "m": curve.m, "u_infected": curve.u_infected, "u": u, "cost": cost}
                for curve in result.curves
                for u, cost in zip(curve.u, curve.cost)
            ],
            columns=["alpha", "m", "u_infected", "u", "cost"],
        )
    return frames


@frames_for.register
def _(result: LearningOutput) -> dict[str, pd.DataFrame]:
    q_table = pd.DataFrame(result.table.records(), columns=["x", "m", "action_level", "q_value", "visits"])
    trajectories = pd.DataFrame(
        [
            {"episode": record.episode, "day": day, "m": m}
            for record in result.records
            for day, m in enumerate(record.m_trajectory)
        ],
        columns=["episode", "day", "m"],
    )
    summary = pd.DataFrame(
        [
            {
                "episode": record.episode,
                "epsilon": record.epsilon,
                "final_m": record.final_m,
                "cumulative_cost": record.cumulative_cost,
            }
            for record in result.records
        ],
        columns=["episode", "epsilon", "final_m", "cumulative_cost"],
    )
    return {"q_table.csv": q_table, "trajectories.csv": trajectories, "summary.csv": summary}


@frames_for.register
def _(result: SIOutput) -> dict[str, pd.DataFrame]:
    if len(result.trajectories) == 1:
        only = result.trajectories[0]
        return {"si.csv": pd.DataFrame({"t": only.t, "s": only.s})}
    return {
        f"si_beta_{i}.csv": pd.DataFrame({"t": trajectory.t, "s": trajectory.s})
        for i, trajectory in enumerate(result.trajectories)
    }


def save_artifact(path: Path, frame: pd.DataFrame) -> Path:
    """Write one CSV with full round-trip float precision and LF line endings."""
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=config.CSV_FLOAT_FORMAT, lineterminator="\n")
    return path


def emit_outputs(result: Any, out_dir: Path | str | None, manifest: dict | None = None) -> dict[str, Any]:
    """Write the result's CSV files and the run manifest.

    Args:
        result: A simulation, nash, learning or SI output.
        out_dir: Target directory; created if missing.
        manifest: Config that reproduces the run, written as manifest.json.

    Returns:
        Status and the written file paths.
    """
    output_dir = _get_output_dir(out_dir)
    try:
        written = []
        for filename, frame in frames_for(result).items():
            logger.info(f"Saving artifact to: {output_dir / filename}")
            written.append(str(save_artifact(output_dir / filename, frame)))
        if manifest is not None:
            path = output_dir / MANIFEST_NAME
            path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
            written.append(str(path))
        return {"status": "success", "files": written}
    except OSError as e:
        logger.error(f"Error writing outputs to {output_dir}: {e}")
        return {"status": "error", "error": str(e)}
