"""Spectrum access policies for a secondary user sharing reactive primary channels."""

import json

from . import _core
from ._core import (
    BudgetExceeded,
    ChannelParams,
    ConfigParseError,
    ConfigValidationError,
    InfeasibleRequirement,
    InvalidParameters,
    benchmark_throughput,
    epsilon_for_delta,
    figure_ids,
    regularized_lower_gamma,
    stationary_busy,
)


def _text(config):
    return config if isinstance(config, str) else json.dumps(config)


def validate_config(config):
    """List of (json pointer, message) violations; empty when valid."""
    return _core.validate_config(_text(config))


def solve(config):
    return json.loads(_core.solve(_text(config)))


def evaluate(config):
    return json.loads(_core.evaluate(_text(config)))


def simulate(config, episodes, seed, threads=0):
    return json.loads(_core.simulate(_text(config), episodes, seed, threads))


def reproduce(figure, max_horizon=8):
    """Rows of (x, series, value) for one reproduction target."""
    lines = _core.reproduce(figure, max_horizon).splitlines()
    return [(x, series, float(value)) for x, series, value in (line.split(",") for line in lines[1:])]


__all__ = [
    "BudgetExceeded",
    "ChannelParams",
    "ConfigParseError",
    "ConfigValidationError",
    "InfeasibleRequirement",
    "InvalidParameters",
    "benchmark_throughput",
    "epsilon_for_delta",
    "evaluate",
    "figure_ids",
    "regularized_lower_gamma",
    "reproduce",
    "simulate",
    "solve",
    "stationary_busy",
    "validate_config",
]
