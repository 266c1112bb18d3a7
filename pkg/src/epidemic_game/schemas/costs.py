from __future__ import annotations

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..plugins.cost_plugins import ACTIVITY_COSTS, SHAPINGS


class CostParams(BaseModel):
    """Preference weight, discount and the pluggable cost terms p and q."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(default=1.0, gt=0.0)
    gamma: float = Field(default=0.0, ge=0.0, le=1.0)
    activity_cost: Literal["exponential", "parabolic"] = "exponential"
    parabolic_center: float = Field(default=0.5, ge=0.0, le=1.0)
    shaping: Literal["none", "linear", "infection_risk"] = "linear"

    def p(self):
        if self.activity_cost == "parabolic":
            return ACTIVITY_COSTS["parabolic"](center=self.parabolic_center)
        return ACTIVITY_COSTS[self.activity_cost]()

    def q(self):
        """Shaping term, or None when shaping is disabled."""
        if self.shaping == "none":
            return None
        return SHAPINGS[self.shaping]()


class StageEquilibrium(BaseModel):
    """Role-homogeneous Nash equilibrium of the one-day game."""

    model_config = ConfigDict(frozen=True)

    u_healthy: float = Field(ge=0.0, le=1.0)
    u_infected: float = Field(ge=0.0, le=1.0)
    cost_healthy: float
    cost_infected: float
    system_cost: float
    m: int = Field(ge=0)
    M: int = Field(ge=1)
    shaped: bool = False

    @model_validator(mode="after")
    def _check_total(self) -> StageEquilibrium:
        expected = self.m * self.cost_infected + (self.M - self.m) * self.cost_healthy
        if not math.isclose(self.system_cost, expected, rel_tol=1e-12, abs_tol=1e-12):
            raise ValueError(f"system_cost {self.system_cost} != role-weighted total {expected}")
        if self.m > self.M:
            raise ValueError(f"m={self.m} exceeds M={self.M}")
        return self


class SystemOptimum(BaseModel):
    """Centralized minimum of the total stage cost over role-homogeneous profiles."""

    model_config = ConfigDict(frozen=True)

    u_healthy: float = Field(ge=0.0, le=1.0)
    u_infected: float = Field(ge=0.0, le=1.0)
    system_cost: float
    m: int = Field(ge=0)
    M: int = Field(ge=1)


class EquilibriumReport(BaseModel):
    """One row of the equilibrium CSV report."""

    m: int
    M: int
    alpha: float
    shaped: bool
    u_healthy: float
    u_infected: float
    cost_healthy: float
    cost_infected: float
    L_star: float
    L_opt: float
    welfare_loss: float


class ObjectiveCurve(BaseModel):
    """Healthy objective sampled on [0, 1] for one preference weight."""

    alpha: float
    m: int
    u_infected: float
    u: list[float]
    cost: list[float]
