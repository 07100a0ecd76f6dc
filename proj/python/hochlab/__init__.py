"""Exact computations on small chain operads: cobar and Hochschild homology, Gerstenhaber brackets,
spectral-sequence audits and the formality obstruction class."""

import json as _json

from ._core import (
    ArityOverflow,
    Error,
    Inconclusive,
    InvalidArgument,
    LiftFailure,
    NoSolution,
    NotACycle,
    ParseError,
    WindowBoundary,
    bracket,
    cobar_dims,
    hochschild_dims,
    poisson_image_check,
)
from . import _core


def framed_e2_check(d, p_min=-4, q_max=12):
    return _json.loads(_core.framed_e2_check_json(d, p_min, q_max))


def audit(d, p_min=-4, q_max=None, strict=False):
    if q_max is None:
        q_max = max(12, 2 * d - 2)
    return _json.loads(_core.audit_json(d, p_min, q_max, strict))


def obstruction(instance):
    return _json.loads(_core.obstruction_json(instance))


def compare_with_d2(instance):
    return _json.loads(_core.d2_comparison_json(instance))


def choice_independence(instance, trials=10, seed=1):
    return _json.loads(_core.choice_independence_json(instance, trials, seed))


__all__ = [
    "ArityOverflow",
    "Error",
    "Inconclusive",
    "InvalidArgument",
    "LiftFailure",
    "NoSolution",
    "NotACycle",
    "ParseError",
    "WindowBoundary",
    "audit",
    "bracket",
    "choice_independence",
    "cobar_dims",
    "compare_with_d2",
    "framed_e2_check",
    "hochschild_dims",
    "obstruction",
    "poisson_image_check",
]
