from __future__ import annotations

import logging
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

logger = logging.getLogger(__name__)


class InterventionCase(str, Enum):
    NO_INTERVENTION = "none"
    IMMEDIATE_ISOLATION = "immediate"
    DELAYED_ISOLATION = "delayed"
    LOCKDOWN = "lockdown"


class ScenarioSpec(BaseModel):
    """One intervention scenario and its Monte Carlo budget."""

    model_config = ConfigDict(frozen=True)

    case: InterventionCase = InterventionCase.NO_INTERVENTION
    M: int = Field(default=1000, ge=1)
    m0: int = Field(default=1, ge=1)
    u: float = Field(default=0.001, ge=0.0, le=1.0)
    u_star: float = Field(default=0.0001, ge=0.0, le=1.0)
    T: int = Field(default=1, ge=1)
    horizon: int = Field(default=4000, ge=1)
    runs: int = Field(default=200, ge=1)
    seed: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_ranges(self) -> ScenarioSpec:
        if self.m0 > self.M:
            raise ValueError(f"m0={self.m0} exceeds M={self.M}")
        if self.u_star > self.u:
            raise ValueError(f"u_star={self.u_star} exceeds u={self.u}")
        return self


class EnsembleResult(BaseModel):
    """Pointwise mean/min/max of infected counts over an ensemble of runs."""

    model_config = ConfigDict(frozen=True)

    mean_mk: list[float]
    min_mk: list[int]
    max_mk: list[int]
    runs: int = Field(ge=1)
    std_mk: list[float] | None = None
    trajectories: list[list[int]] | None = None

    @model_validator(mode="after")
    def _check_envelopes(self) -> EnsembleResult:
        lengths = {len(self.mean_mk), len(self.min_mk), len(self.max_mk)}
        if len(lengths) != 1:
            raise ValueError(f"envelopes differ in length: {sorted(lengths)}")
        return self

    @property
    def horizon(self) -> int:
        return len(self.mean_mk) - 1

    def day_to_reach(self, level: float) -> int | None:
        """First day on which the mean envelope is at least ``level``."""
        hits = np.flatnonzero(np.asarray(self.mean_mk) >= level)
        if not hits.size:
            logger.warning(f"Mean envelope never reaches {level} within {self.horizon} days")
            return None
        return int(hits[0])

    def peak_growth_day(self) -> int:
        """Day k maximizing mean_mk[k+1] - mean_mk[k]; ties go to the earliest day."""
        growth = np.diff(np.asarray(self.mean_mk))
        return int(np.argmax(growth)) if growth.size else 0
