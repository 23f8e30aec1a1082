"""Exact quantization maps on cotangent bundles."""

import json

from ._ttquant import (
    Context,
    ContextMismatchError,
    CotangentLift,
    DomainError,
    Error,
    Function,
    Operator,
    ParseError,
    PoleError,
    SingularError,
    _check_suite,
    _oscillator_spectrum,
    _run_cli,
    commutator,
    multiplication,
    poisson_bracket,
    quantize,
    tautological_field,
    tuning_indicator,
)

__all__ = [
    "Context",
    "ContextMismatchError",
    "CotangentLift",
    "DomainError",
    "Error",
    "Function",
    "Operator",
    "ParseError",
    "PoleError",
    "SingularError",
    "check_suite",
    "commutator",
    "multiplication",
    "oscillator_spectrum",
    "poisson_bracket",
    "quantize",
    "run_cli",
    "tautological_field",
    "tuning_indicator",
]


def oscillator_spectrum(points=2000, half_width=10.0, params=None, levels=6):
    """Lowest levels of the polarized oscillator, as a dict report."""
    params = params or {"hbar": 1.0, "m": 1.0, "omega": 1.0}
    return json.loads(_oscillator_spectrum(points, half_width, params, levels))


def check_suite(seed=1):
    return _check_suite(seed)


def run_cli(*args):
    """Runs the command-line front end; returns (exit code, stdout, stderr)."""
    return _run_cli(list(args))
