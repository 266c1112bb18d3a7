from __future__ import annotations

from typing import Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .. import config
from .costs import CostParams
from .learning import TrainConfig
from .scenario import InterventionCase, ScenarioSpec
from .si import SIParams

Command = Literal["simulate", "nash", "learn", "si"]

# Keys every config file may carry besides the subcommand's own options
COMMON_KEYS = ("command", "seed", "out", "jobs", "package_version")


class _Options(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    def resolved(self, seed: int):
        """The owning domain model(s), validated against their own invariants."""
        raise NotImplementedError


class SimulateOptions(_Options):
    case: InterventionCase = InterventionCase.NO_INTERVENTION
    M: int = Field(default=1000, ge=1)
    m0: int = Field(default=1, ge=1)
    u: float = Field(default=0.001, ge=0.0, le=1.0)
    u_star: float = Field(default=0.0001, ge=0.0, le=1.0)
    T: int = Field(default=1, ge=1)
    horizon: int = Field(default=4000, ge=1)
    runs: int = Field(default=200, ge=1)
    keep_runs: bool = False
    raster_run: int | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _check_raster(self) -> SimulateOptions:
        if self.raster_run is not None and self.raster_run >= self.runs:
            raise ValueError(f"raster_run={self.raster_run} must be below runs={self.runs}")
        return self

    def to_spec(self, seed: int) -> ScenarioSpec:
        return ScenarioSpec(
            case=self.case,
            M=self.M,
            m0=self.m0,
            u=self.u,
            u_star=self.u_star,
            T=self.T,
            horizon=self.horizon,
            runs=self.runs,
            seed=seed,
        )

    def resolved(self, seed: int) -> ScenarioSpec:
        return self.to_spec(seed)


class NashOptions(_Options):
    m: int = Field(default=1, ge=0)
    M: int = Field(default=4, ge=1)
    alpha: float = Field(default=1.0, gt=0.0)
    shaped: bool = False
    shaping: Literal["linear", "infection_risk"] = "linear"
    activity_cost: Literal["exponential", "parabolic"] = "exponential"
    parabolic_center: float = Field(default=0.5, ge=0.0, le=1.0)
    sweep: bool = False
    curve_alphas: list[float] | None = None

    @model_validator(mode="after")
    def _check_counts(self) -> NashOptions:
        if self.m > self.M:
            raise ValueError(f"m={self.m} exceeds M={self.M}")
        if self.curve_alphas is not None and any(alpha <= 0.0 for alpha in self.curve_alphas):
            raise ValueError(f"curve weights must be positive, got {self.curve_alphas}")
        return self

    def cost_params(self) -> CostParams:
        return CostParams(
            alpha=self.alpha,
            activity_cost=self.activity_cost,
            parabolic_center=self.parabolic_center,
            shaping=self.shaping,
        )

    def resolved(self, seed: int) -> CostParams:
        return self.cost_params()


class LearnOptions(_Options):
    preset: Literal["case1", "case2", "case3"] | None = None
    M: int = Field(default=50, ge=1)
    m0: int = Field(default=1, ge=1)
    action_levels: list[float] | None = None
    alpha: float = Field(default=1.0, gt=0.0)
    gamma: float | None = Field(default=None, ge=0.0, lt=1.0)
    eta: float = Field(default=1.0, gt=0.0, le=1.0)
    episodes: int = Field(default=200, ge=1)
    horizon: int = Field(default=50, ge=1)
    shaped: bool | None = None
    shaping: Literal["linear", "infection_risk"] = "linear"
    activity_cost: Literal["exponential", "parabolic"] = "exponential"
    parabolic_center: float = Field(default=0.5, ge=0.0, le=1.0)
    q_init: float = 10.0
    eval_every: int = Field(default=10, ge=0)

    def to_train_config(self, seed: int) -> TrainConfig:
        """Explicit gamma/shaped values override the preset's."""
        values = {
            "M": self.M,
            "m0": self.m0,
            "action_levels": self.action_levels,
            "alpha": self.alpha,
            "eta": self.eta,
            "max_episodes": self.episodes,
            "horizon": self.horizon,
            "shaping": self.shaping,
            "activity_cost": self.activity_cost,
            "parabolic_center": self.parabolic_center,
            "q_init": self.q_init,
            "eval_every": self.eval_every,
            "seed": seed,
        }
        if self.gamma is not None:
            values["gamma"] = self.gamma
        if self.shaped is not None:
            values["shaped"] = self.shaped
        if self.preset is not None:
            return TrainConfig.preset(self.preset, **values)
        return TrainConfig(**values)

    def resolved(self, seed: int) -> TrainConfig:
        return self.to_train_config(seed)


class SIOptions(_Options):
    beta: list[float] = Field(min_length=1)
    s0: float = Field(ge=0.0, le=1.0)
    days: float = Field(default=100.0, gt=0.0)
    dt: float = Field(default=1e-2, gt=0.0)
    dense: bool = False

    def to_params(self) -> list[SIParams]:
        return [SIParams(beta=beta, s0=self.s0, days=self.days, dt=self.dt) for beta in self.beta]

    def resolved(self, seed: int) -> list[SIParams]:
        return self.to_params()


OPTIONS_BY_COMMAND: dict[str, type[_Options]] = {
    "simulate": SimulateOptions,
    "nash": NashOptions,
    "learn": LearnOptions,
    "si": SIOptions,
}


class RunConfig(BaseModel):
    """A fully validated run: one subcommand, its options and the common settings."""

    model_config = ConfigDict(frozen=True)

    command: Command
    seed: int = Field(default=0, ge=0)
    out: str = Field(default_factory=lambda: str(config.DEFAULT_OUT_DIR))
    jobs: int = Field(default_factory=lambda: config.N_JOBS, ge=1)
    options: Union[SimulateOptions, NashOptions, LearnOptions, SIOptions]

    @model_validator(mode="after")
    def _check_options(self) -> RunConfig:
        expected = OPTIONS_BY_COMMAND[self.command]
        if not isinstance(self.options, expected):
            raise ValueError(f"command '{self.command}' needs {expected.__name__}")
        return self

    def manifest(self, package_version: str) -> dict:
        """Flat config dict that reproduces this run when passed back as --config."""
        return {
            "command": self.command,
            "seed": self.seed,
            "out": self.out,
            "jobs": self.jobs,
            "package_version": package_version,
            **self.options.model_dump(mode="json"),
        }
