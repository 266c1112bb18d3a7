from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .costs import CostParams

LEARNING_PRESETS: dict[str, dict] = {
    "case1": {"gamma": 0.0, "shaped": False},
    "case2": {"gamma": 0.5, "shaped": False},
    "case3": {"gamma": 0.5, "shaped": True, "shaping": "linear"},
}


def default_action_levels(M: int) -> list[float]:
    """Low, medium and high activity: {0, 1/M, 10/M}, capped at 1."""
    return sorted({0.0, min(1.0, 1.0 / M), min(1.0, 10.0 / M)})


class TrainConfig(BaseModel):
    """Shared-table Q-learning run over the epidemic environment."""

    model_config = ConfigDict(frozen=True)

    M: int = Field(default=50, ge=1)
    m0: int = Field(default=1, ge=1)
    action_levels: list[float] | None = None
    alpha: float = Field(default=1.0, gt=0.0)
    gamma: float = Field(default=0.0, ge=0.0, lt=1.0)
    eta: float = Field(default=1.0, gt=0.0, le=1.0)
    max_episodes: int = Field(default=200, ge=1)
    horizon: int = Field(default=50, ge=1)
    shaped: bool = False
    shaping: Literal["linear", "infection_risk"] = "linear"
    activity_cost: Literal["exponential", "parabolic"] = "exponential"
    parabolic_center: float = Field(default=0.5, ge=0.0, le=1.0)
    q_init: float = 10.0
    eval_every: int = Field(default=10, ge=0)
    seed: int = Field(default=0, ge=0)

    @model_validator(mode="before")
    @classmethod
    def _fill_action_levels(cls, data):
        if isinstance(data, dict) and data.get("action_levels") is None:
            M = data.get("M", cls.model_fields["M"].default)
            if isinstance(M, int) and M >= 1:
                data = {**data, "action_levels": default_action_levels(M)}
        return data

    @model_validator(mode="after")
    def _check(self) -> TrainConfig:
        if self.m0 > self.M:
            raise ValueError(f"m0={self.m0} exceeds M={self.M}")
        levels = self.action_levels
        if not levels:
            raise ValueError("action_levels must not be empty")
        if any(not 0.0 <= u <= 1.0 for u in levels):
            raise ValueError(f"action levels must lie in [0, 1], got {levels}")
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise ValueError(f"action levels must be strictly increasing, got {levels}")
        return self

    @classmethod
    def preset(cls, name: str, **overrides) -> TrainConfig:
        """One of the three learning cases, with optional overrides."""
        if name not in LEARNING_PRESETS:
            raise ValueError(f"unknown preset '{name}', expected one of {sorted(LEARNING_PRESETS)}")
        return cls(**{**LEARNING_PRESETS[name], **overrides})

    def cost_params(self) -> CostParams:
        return CostParams(
            alpha=self.alpha,
            gamma=self.gamma,
            activity_cost=self.activity_cost,
            parabolic_center=self.parabolic_center,
            shaping=self.shaping if self.shaped else "none",
        )


class Transition(BaseModel):
    """One agent's experience on one day."""

    model_config = ConfigDict(frozen=True)

    agent: int
    x: int
    m: int
    action: int
    cost: float
    x_next: int
    m_next: int


class EpisodeRecord(BaseModel):
    """Outcome of one training episode."""

    model_config = ConfigDict(frozen=True)

    episode: int = Field(ge=0)
    epsilon: float = Field(ge=0.0, le=1.0)
    m_trajectory: list[int]
    cumulative_cost: float
    transitions: list[Transition] | None = None
    greedy_trajectory: list[int] | None = None

    @model_validator(mode="after")
    def _check_monotone(self) -> EpisodeRecord:
        for name in ("m_trajectory", "greedy_trajectory"):
            values = getattr(self, name)
            if values and any(b < a for a, b in zip(values, values[1:])):
                raise ValueError(f"{name} must be nondecreasing")
        return self

    @property
    def final_m(self) -> int:
        return self.m_trajectory[-1]
