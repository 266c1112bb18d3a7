from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from ..schemas.learning import EpisodeRecord

logger = logging.getLogger(__name__)


def curve_area(m_trajectory: Sequence[int], horizon: int) -> float:
    """Sum of m_k over days 0..horizon; a trajectory that stopped early is held at its last value."""
    values = list(m_trajectory)[: horizon + 1]
    values.extend([values[-1]] * (horizon + 1 - len(values)))
    return float(np.sum(values))


def is_non_growing(m_trajectory: Sequence[int]) -> bool:
    return m_trajectory[-1] == m_trajectory[0]


def flattening_episode(records: Sequence[EpisodeRecord]) -> int | None:
    """First episode whose greedy evaluation never grew, or None."""
    for record in records:
        if record.greedy_trajectory is not None and is_non_growing(record.greedy_trajectory):
            return record.episode
    return None


def check_flattening(records: Sequence[EpisodeRecord], horizon: int, window: int = 20) -> dict:
    """Compare mean curve areas of the first and last ``window`` episodes.

    Returns:
        Status dictionary with both means, whether the later curves are flatter,
        and the flattening episode.
    """
    if len(records) < window:
        logger.warning(f"Only {len(records)} episodes recorded; comparing windows of that size")
        window = len(records)
    early = np.mean([curve_area(r.m_trajectory, horizon) for r in records[:window]])
    late = np.mean([curve_area(r.m_trajectory, horizon) for r in records[-window:]])
    flattened = bool(late < early)
    logger.info(f"Mean curve area: first {window} episodes {early:.1f}, last {window} {late:.1f}")
    return {
        "status": "success",
        "early_area": float(early),
        "late_area": float(late),
        "flattened": flattened,
        "flattening_episode": flattening_episode(records),
    }
