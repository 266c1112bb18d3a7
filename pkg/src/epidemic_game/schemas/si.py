from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SIParams(BaseModel):
    """Macroscopic susceptible-infected model: ds/dt = beta * s * (1 - s)."""

    model_config = ConfigDict(frozen=True)

    beta: float = Field(ge=0.0)
    s0: float = Field(ge=0.0, le=1.0)
    days: float = Field(default=100.0, gt=0.0)
    dt: float = Field(default=1e-2, gt=0.0)

    @model_validator(mode="after")
    def _check_step(self) -> SIParams:
        if self.days < self.dt:
            raise ValueError(f"days={self.days} is shorter than one step dt={self.dt}")
        return self


class SITrajectory(BaseModel):
    beta: float
    t: list[float]
    s: list[float]

    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.t, self.s))
