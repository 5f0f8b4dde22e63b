"""Discrete-time closed-loop regulation with the switching-curve feedback."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError
from .scaling import ScaledState
from .synthesis import DEFAULT_EPS_CURVE, plan


@dataclass(frozen=True)
class Regulation:
    trace: np.ndarray  # rows of (t, x, xdot, u)
    arrived: bool
    t_star: float
    t_limit: float

    @property
    def arrival_time(self) -> float | None:
        return float(self.trace[-1, 0]) if self.arrived else None


def regulate(
    s: ScaledState,
    dt: float = 1e-3,
    deadband: float = 1e-2,
    eps_curve: float = DEFAULT_EPS_CURVE,
) -> Regulation:
    """Apply the feedback law every ``dt`` to the integrated plant.

    Inside the deadband ball the controller holds ``u = 0`` and the run ends.
    The run is abandoned after ``2 T* + 1`` simulated seconds.
    """
    if not (dt > 0 and deadband > 0):
        raise DomainError("dt and deadband must be positive")
    t_star = plan(s, eps_curve).total_time
    t_limit = 2.0 * t_star + 1.0
    ts, xs, vs, us, arrived = _kernels.closed_loop(s.x, s.x_dot, dt, deadband, eps_curve, t_limit)
    return Regulation(np.column_stack((ts, xs, vs, us)), bool(arrived), t_star, t_limit)
