from __future__ import annotations

from enum import IntEnum
from typing import Annotated

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

UnitFloat = Annotated[float, Field(ge=0.0, le=1.0)]


class AgentState(IntEnum):
    """Health indicator of one agent. Infection is absorbing."""

    HEALTHY = 0
    INFECTED = 1


class PopulationState(BaseModel):
    """Infection indicators of all M agents on a given day."""

    model_config = ConfigDict(frozen=True)

    states: tuple[AgentState, ...] = Field(min_length=1)
    day: int = Field(default=0, ge=0)

    @classmethod
    def initial(cls, M: int, m0: int) -> PopulationState:
        """Agents 0..m0-1 infected, the rest healthy, on day 0."""
        if not 0 <= m0 <= M:
            raise ValueError(f"m0 must lie in [0, M={M}], got {m0}")
        return cls(states=tuple([AgentState.INFECTED] * m0 + [AgentState.HEALTHY] * (M - m0)))

    @classmethod
    def from_array(cls, states: np.ndarray, day: int = 0) -> PopulationState:
        return cls(states=tuple(AgentState(int(x)) for x in states), day=day)

    @property
    def size(self) -> int:
        return len(self.states)

    def infected_count(self) -> int:
        return sum(int(x) for x in self.states)

    def infected_set(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.states) if x == AgentState.INFECTED)

    def as_array(self) -> np.ndarray:
        return np.fromiter((int(x) for x in self.states), dtype=np.int8, count=self.size)


class ActionProfile(BaseModel):
    """Activity level chosen by every agent for one day."""

    model_config = ConfigDict(frozen=True)

    levels: tuple[UnitFloat, ...] = Field(min_length=1)

    @classmethod
    def uniform(cls, M: int, level: float) -> ActionProfile:
        return cls(levels=(level,) * M)

    @field_validator("levels", mode="before")
    @classmethod
    def _coerce_array(cls, value):
        if isinstance(value, np.ndarray):
            return tuple(float(v) for v in value)
        return value

    @property
    def size(self) -> int:
        return len(self.levels)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.levels, dtype=np.float64)
