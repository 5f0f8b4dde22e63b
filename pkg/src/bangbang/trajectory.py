"""Closed-form propagation and sampling of the optimal trajectory.

Under a constant control every state moves along a parabola
``x - u x'^2 / 2 = const`` with ``x'`` changing at rate ``u``, so all arcs
here are evaluated exactly rather than integrated.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GeometryError, OrderingError, PreconditionError
from .scaling import ORIGIN, ScaledState
from .synthesis import Case, Plan

ARC_RTOL = 1e-9


class Arc(str, enum.Enum):
    P1 = "P1"
    P2 = "P2"


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    state: ScaledState
    u: float


@dataclass(frozen=True)
class ParabolaArc:
    u: float
    c: float
    start: ScaledState
    end: ScaledState

    def __post_init__(self):
        tol = ARC_RTOL * (1.0 + abs(self.c))
        for p in (self.start, self.end):
            if abs(parabola_constant(p, self.u) - self.c) > tol:
                raise GeometryError(f"{p.as_tuple()} is not on the parabola u={self.u:+g}, c={self.c!r}")


def propagate_const(s: ScaledState, u: float, t: float) -> ScaledState:
    if not abs(u) <= 1.0:
        raise DomainError(f"|u| must not exceed 1, got {u!r}")
    if not t >= 0:
        raise DomainError(f"propagation time must be non-negative, got {t!r}")
    return ScaledState(u * t * t / 2.0 + s.x_dot * t + s.x, u * t + s.x_dot)


def parabola_constant(s: ScaledState, u: float) -> float:
    if u not in (-1.0, 1.0):
        raise DomainError(f"arc control must be +1 or -1, got {u!r}")
    return s.x - 0.5 * u * s.x_dot * s.x_dot


def arcs_of_plan(plan: Plan) -> list[ParabolaArc]:
    """Phase-plane arcs traversed by ``plan`` (empty at the origin)."""
    if plan.case is Case.AT_ORIGIN:
        return []
    if plan.case is Case.ON_CURVE:
        u = plan.bangs[0].u
        return [ParabolaArc(u, parabola_constant(plan.initial, u), plan.initial, ORIGIN)]
    s = plan.switch_point
    u1, u2 = plan.bangs[0].u, plan.bangs[1].u
    return [
        ParabolaArc(u1, parabola_constant(plan.initial, u1), plan.initial, s),
        ParabolaArc(u2, parabola_constant(s, u2), s, ORIGIN),
    ]


def state_at(plan: Plan, t: float) -> ScaledState:
    """State on the planned trajectory at global time ``t`` in ``[0, T*]``."""
    if plan.case is Case.AT_ORIGIN:
        return plan.initial
    t = min(max(t, 0.0), plan.total_time)
    if plan.case is Case.OFF_CURVE and t >= plan.bangs[0].duration:
        # second arc restarts from the analytic switch point on a local clock
        return propagate_const(plan.switch_point, plan.bangs[1].u, t - plan.bangs[0].duration)
    return propagate_const(plan.initial, plan.bangs[0].u, t)


def sample_times(plan: Plan, n_samples: int) -> np.ndarray:
    """Uniform grid on ``[0, T*]`` with the switch instant spliced in."""
    if n_samples < 2:
        raise DomainError(f"need at least 2 samples, got {n_samples}")
    if plan.case is Case.AT_ORIGIN:
        return np.zeros(n_samples)
    times = np.linspace(0.0, plan.total_time, n_samples)
    times[-1] = plan.total_time
    if plan.case is Case.OFF_CURVE:
        times = np.union1d(times, [plan.bangs[0].duration])
    return times


def trajectory_of_plan(plan: Plan, n_samples: int = 200) -> list[TrajectorySample]:
    return [
        TrajectorySample(float(t), state_at(plan, t), plan.control_at(t))
        for t in sample_times(plan, n_samples)
    ]


def final_state(plan: Plan) -> ScaledState:
    """Endpoint reached by chaining the bangs from the initial state."""
    s = plan.initial
    for bang in plan.bangs:
        s = propagate_const(s, bang.u, bang.duration)
    return s


def _arc_control(arc: Arc, sigma0: float) -> float:
    if sigma0 not in (-1.0, 1.0):
        raise PreconditionError(f"sigma0 must be +1 or -1, got {sigma0!r}")
    return -sigma0 if Arc(arc) is Arc.P1 else sigma0


def time_between(a: ScaledState, b: ScaledState, arc: Arc | str, sigma0: float) -> float:
    """Time to travel from ``a`` to ``b`` along the named arc.

    Along an arc of control ``u`` the velocity changes at rate ``u``, so the
    elapsed time is the velocity difference divided by the arc control.
    """
    u = _arc_control(arc, sigma0)
    ca, cb = parabola_constant(a, u), parabola_constant(b, u)
    if abs(ca - cb) > ARC_RTOL * (1.0 + max(abs(ca), abs(cb))):
        raise GeometryError(f"{a.as_tuple()} and {b.as_tuple()} are not on a common {Arc(arc).value} arc")
    dt = (b.x_dot - a.x_dot) / u
    if dt < 0:
        # a few ulps of reversal is round-off on coincident points
        if -dt > 1e-12 * (1.0 + abs(a.x_dot) + abs(b.x_dot)):
            raise OrderingError(f"{b.as_tuple()} precedes {a.as_tuple()} on {Arc(arc).value}")
        dt = 0.0
    return dt


def time_across_switch(b_on_p1: ScaledState, c_on_p2: ScaledState, plan: Plan) -> float:
    if plan.case is not Case.OFF_CURVE:
        raise PreconditionError("time across the switch needs an off-curve plan")
    s = plan.switch_point
    return time_between(b_on_p1, s, Arc.P1, plan.sigma0) + time_between(s, c_on_p2, Arc.P2, plan.sigma0)


def samples_to_array(samples: list[TrajectorySample]) -> np.ndarray:
    """Rows of ``(t, x, x_dot, u)``."""
    return np.array([(p.t, p.state.x, p.state.x_dot, p.u) for p in samples], dtype=float).reshape(-1, 4)
