"""Exact rendezvous of robots on a line when some of them are faulty."""

from .errors import PlanError, PreconditionError, RendezvousError, StallError
from .exactnum import INF, Scalar, format_scalar, parse_scalar, phi
from .line_model import (
    Configuration,
    MeetEvent,
    Plan,
    Trajectory,
    Violation,
    diameter,
    gather_time,
    position_at,
    simulate,
    validate_plan,
)
from .strategies import STRATEGIES, make_plan

__all__ = [
    "Configuration",
    "INF",
    "MeetEvent",
    "Plan",
    "PlanError",
    "PreconditionError",
    "RendezvousError",
    "STRATEGIES",
    "Scalar",
    "StallError",
    "Trajectory",
    "Violation",
    "diameter",
    "format_scalar",
    "gather_time",
    "make_plan",
    "parse_scalar",
    "phi",
    "position_at",
    "simulate",
    "validate_plan",
]
