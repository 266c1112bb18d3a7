from __future__ import annotations

import logging
from typing import Iterable

import numpy as np

from ..errors import DomainError

logger = logging.getLogger(__name__)


def check_unit_interval(value: float, name: str = "value") -> float:
    """Validate that a scalar lies in [0, 1].

    Args:
        value: The number to check.
        name: Label used in the error message.

    Returns:
        The value as a float.

    Raises:
        DomainError: If the value is NaN or outside [0, 1].
    """
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def check_unit_array(values: Iterable[float] | np.ndarray, name: str = "values") -> np.ndarray:
    """Validate that every element lies in [0, 1] and return a float64 array."""
    array = np.asarray(values, dtype=np.float64)
    if array.size and not (np.all(array >= 0.0) and np.all(array <= 1.0)):
        bad = array[~((array >= 0.0) & (array <= 1.0))]
        raise DomainError(f"{name} must lie in [0, 1], got {bad[:5].tolist()}")
    return array
