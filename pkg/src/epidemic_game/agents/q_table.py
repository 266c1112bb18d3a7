from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

logger = logging.getLogger(__name__)


class QTable:
    """Action-value table shared by every agent.

    Indexed by (agent state x in {0, 1}, infected count m in 0..M, action index).
    Entries never updated keep their initial value and are reported as unvisited.
    """

    def __init__(self, M: int, action_levels: Sequence[float], q_init: float = 10.0):
        levels = [float(u) for u in action_levels]
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise ValueError(f"action levels must be strictly increasing, got {levels}")
        if any(not 0.0 <= u <= 1.0 for u in levels):
            raise ValueError(f"action levels must lie in [0, 1], got {levels}")
        if not np.isfinite(q_init):
            raise ValueError(f"q_init must be finite, got {q_init}")
        self.M = M
        self.action_levels = tuple(levels)
        self.q_init = float(q_init)
        self.values = np.full((2, M + 1, len(levels)), self.q_init, dtype=np.float64)
        self.visits = np.zeros((2, M + 1, len(levels)), dtype=np.int64)

    @property
    def n_actions(self) -> int:
        return len(self.action_levels)

    def min_value(self, x: int, m: int) -> float:
        return float(self.values[x, m].min())

    def minimizers(self, x: int, m: int) -> np.ndarray:
        row = self.values[x, m]
        return np.flatnonzero(row == row.min())

    def greedy_policy(self) -> np.ndarray:
        """Greedy action index per (x, m); -1 for rows never visited and for ties."""
        policy = np.full((2, self.M + 1), -1, dtype=np.int64)
        for x in (0, 1):
            for m in range(self.M + 1):
                best = self.minimizers(x, m)
                if self.visits[x, m].any() and best.size == 1:
                    policy[x, m] = int(best[0])
        return policy

    def records(self) -> list[dict]:
        """Long-format rows; q_value is None for unvisited entries."""
        rows = []
        for x in (0, 1):
            for m in range(self.M + 1):
                for a, level in enumerate(self.action_levels):
                    visits = int(self.visits[x, m, a])
                    rows.append(
                        {
                            "x": x,
                            "m": m,
                            "action_level": level,
                            "q_value": float(self.values[x, m, a]) if visits else None,
                            "visits": visits,
                        }
                    )
        return rows
