"""Exception types shared across the package.

The split matters for the command line tool: configuration problems
(bad names, bad dimensions, bad parameter values) exit with code 2,
failures during objective evaluation exit with code 3.
"""

from __future__ import annotations


class EmberError(Exception):
    """Base class for all package errors."""


class ConfigError(EmberError):
    """A configuration value, key, or combination is invalid."""


class UnknownFunctionError(ConfigError):
    """The requested benchmark function is not registered."""


class DimensionError(ConfigError):
    """The requested dimension is not valid for the function."""


class InputError(ConfigError):
    """An input vector is malformed (wrong shape or non-finite)."""


class EvaluationError(EmberError):
    """The objective produced a non-finite value during a run."""

    def __init__(self, message, agent=None, value=None):
        super().__init__(message)
        self.agent = agent
        self.value = value


class MetricError(EmberError):
    """A derived metric is undefined for the given inputs."""
