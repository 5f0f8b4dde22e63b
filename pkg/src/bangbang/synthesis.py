"""Minimum-time bang-bang synthesis for ``x'' = u``, ``|u| <= 1``.

The phase plane is split by the switching curve ``F(x, x') = 0`` with
``F = x + sgn(x') x'^2 / 2``. States on the curve reach the origin with a
single bang; states off it use one bang to reach the curve and a second bang
along the curve.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, PreconditionError
from .scaling import ScaledState

DEFAULT_EPS_CURVE = 1e-9


class Case(str, enum.Enum):
    AT_ORIGIN = "AtOrigin"
    ON_CURVE = "OnCurve"
    OFF_CURVE = "OffCurve"


def sgn(value: float) -> float:
    if value > 0:
        return 1.0
    if value < 0:
        return -1.0
    return 0.0


@dataclass(frozen=True)
class Bang:
    u: float
    duration: float

    def __post_init__(self):
        if self.u not in (-1.0, 0.0, 1.0):
            raise DomainError(f"bang control must be -1, 0 or +1, got {self.u!r}")
        if not self.duration >= 0:
            raise DomainError(f"bang duration must be non-negative, got {self.duration!r}")


@dataclass(frozen=True)
class Plan:
    """Optimal open-loop schedule from ``initial`` to the origin.

    ``sigma0`` is the sign of F at the initial state (0 on the curve) and
    ``lambda0`` is ``sqrt(sigma0 x0 + x0'^2 / 2)`` for off-curve states.
    """

    initial: ScaledState
    case: Case
    bangs: tuple[Bang, ...]
    total_time: float
    switch_point: ScaledState | None = None
    sigma0: float = 0.0
    lambda0: float | None = None

    @property
    def switch_time(self) -> float | None:
        if self.case is Case.OFF_CURVE:
            return self.bangs[0].duration
        return None

    def control_at(self, t: float) -> float:
        """Scheduled control at time ``t``; a switch instant belongs to the later bang."""
        if not self.bangs:
            return 0.0
        if self.case is Case.OFF_CURVE and t >= self.bangs[0].duration:
            return self.bangs[1].u
        return self.bangs[0].u


def eval_F(s: ScaledState) -> float:
    return s.x + sgn(s.x_dot) * s.x_dot * s.x_dot / 2.0


def classify(s: ScaledState, eps_curve: float = DEFAULT_EPS_CURVE) -> tuple[Case, float]:
    if not eps_curve > 0:
        raise DomainError(f"eps_curve must be positive, got {eps_curve!r}")
    if s.norm <= eps_curve:
        return Case.AT_ORIGIN, 0.0
    f0 = eval_F(s)
    if abs(f0) <= eps_curve * (1.0 + s.norm_sq):
        if s.x_dot == 0.0:
            # |x| is then within round-off of eps_curve: treat as the target
            return Case.AT_ORIGIN, 0.0
        return Case.ON_CURVE, 0.0
    return Case.OFF_CURVE, sgn(f0)


def _lambda0(s: ScaledState, sigma0: float) -> float:
    # clamp guards round-off; near-curve states are classified OnCurve first
    return math.sqrt(max(sigma0 * s.x + s.x_dot * s.x_dot / 2.0, 0.0))


def switch_state(s: ScaledState, sigma0: float) -> ScaledState:
    if sigma0 not in (-1.0, 1.0):
        raise PreconditionError(f"sigma0 must be +1 or -1, got {sigma0!r}")
    if sgn(eval_F(s)) != sigma0:
        raise PreconditionError(f"state {s.as_tuple()} is not off-curve with sigma0 = {sigma0:+g}")
    lam = _lambda0(s, sigma0)
    return ScaledState(0.5 * (s.x + 0.5 * sigma0 * s.x_dot * s.x_dot), -sigma0 * lam)


def plan(s: ScaledState, eps_curve: float = DEFAULT_EPS_CURVE) -> Plan:
    if not (math.isfinite(s.x) and math.isfinite(s.x_dot)):
        raise DomainError(f"non-finite state {s.as_tuple()}")
    case, sigma0 = classify(s, eps_curve)

    if case is Case.AT_ORIGIN:
        return Plan(s, case, (), 0.0)

    if case is Case.ON_CURVE:
        t_star = abs(s.x_dot)
        return Plan(s, case, (Bang(-sgn(s.x_dot), t_star),), t_star)

    lam = _lambda0(s, sigma0)
    d1 = lam + sigma0 * s.x_dot
    d2 = lam
    bangs = (Bang(-sigma0, d1), Bang(sigma0, d2))
    # d1 + d2 == 2*lam + sigma0*x_dot, summed the same way as the bangs
    return Plan(s, case, bangs, d1 + d2, switch_state(s, sigma0), sigma0, lam)


def feedback_control(s: ScaledState, eps_curve: float = DEFAULT_EPS_CURVE) -> float:
    """Optimal control as a function of the current state."""
    case, sigma0 = classify(s, eps_curve)
    if case is Case.OFF_CURVE:
        return -sigma0
    if case is Case.ON_CURVE:
        return -sgn(s.x_dot)
    return 0.0
