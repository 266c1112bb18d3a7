from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict

from .costs import EquilibriumReport, ObjectiveCurve
from .learning import EpisodeRecord
from .scenario import EnsembleResult
from .si import SITrajectory


class SimulationOutput(BaseModel):
    ensemble: EnsembleResult
    raster: list[int | None] | None = None


class NashOutput(BaseModel):
    rows: list[EquilibriumReport]
    curves: list[ObjectiveCurve] | None = None


class LearningOutput(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    table: Any  # agents.q_table.QTable
    records: list[EpisodeRecord]


class SIOutput(BaseModel):
    trajectories: list[SITrajectory]
