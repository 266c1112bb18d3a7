from __future__ import annotations


class EpidemicGameError(Exception):
    """Base class for errors raised by the epidemic game package."""


class DomainError(EpidemicGameError, ValueError):
    """A probability, activity level or fraction fell outside its range."""


class ConfigError(EpidemicGameError, ValueError):
    """A configuration value cannot be used to run the requested computation."""


class EvaluationError(EpidemicGameError, ArithmeticError):
    """An objective function returned a non-finite value."""


class UsageError(ConfigError):
    """Command-line input that cannot form a valid run configuration."""
