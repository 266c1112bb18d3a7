"""Pluggable cost terms.

Activity costs p(u) express the need to stay active; shaping terms q(u, m) are
charged to infected agents only. All of them accept scalars or numpy arrays.
"""
from __future__ import annotations

import logging

import numpy as np

from ..utils.validation import check_unit_array

logger = logging.getLogger(__name__)

# p is evaluated at u <= 1 - EXPONENT_CLAMP below the boundary
EXPONENT_CLAMP = 1e-12


class ExponentialActivityCost:
    """p(u) = exp(1 / (u - 1)), extended by p(1) = 0. Strictly decreasing."""

    def __init__(self):
        self.name = "exponential"
        self.tie_key = self.exponent

    def __call__(self, u):
        array = check_unit_array(u, "u")
        clamped = np.minimum(array, 1.0 - EXPONENT_CLAMP)
        values = np.where(array >= 1.0, 0.0, np.exp(1.0 / (clamped - 1.0)))
        return float(values) if np.ndim(u) == 0 else values

    def exponent(self, u):
        """log p(u) = 1 / (u - 1), with -inf at u = 1. Ranks points where p has underflowed to 0."""
        array = check_unit_array(u, "u")
        clamped = np.minimum(array, 1.0 - EXPONENT_CLAMP)
        values = np.where(array >= 1.0, -np.inf, 1.0 / (clamped - 1.0))
        return float(values) if np.ndim(u) == 0 else values


class ParabolicActivityCost:
    """p(u) = (u - center)^2: activity is best kept around ``center``."""

    def __init__(self, center: float = 0.5):
        self.name = "parabolic"
        self.center = float(check_unit_array(center, "center"))
        self.tie_key = None

    def __call__(self, u):
        array = check_unit_array(u, "u")
        values = (array - self.center) ** 2
        return float(values) if np.ndim(u) == 0 else values


class LinearShaping:
    """q(u) = u."""

    def __init__(self):
        self.name = "linear"

    def __call__(self, u, m: int = 0):
        array = check_unit_array(u, "u")
        return float(array) if np.ndim(u) == 0 else array


class InfectionRiskShaping:
    """q(u) = 1 - (1 - u)^m: the infection risk an infected agent imposes on one contact."""

    def __init__(self):
        self.name = "infection_risk"

    def __call__(self, u, m: int = 0):
        array = check_unit_array(u, "u")
        values = 1.0 - (1.0 - array) ** m
        return float(values) if np.ndim(u) == 0 else values


def p_default(u):
    """Default activity cost exp(1 / (u - 1)) with p(1) = 0."""
    return _EXPONENTIAL(u)


_EXPONENTIAL = ExponentialActivityCost()

ACTIVITY_COSTS = {
    "exponential": ExponentialActivityCost,
    "parabolic": ParabolicActivityCost,
}

SHAPINGS = {
    "linear": LinearShaping,
    "infection_risk": InfectionRiskShaping,
}
