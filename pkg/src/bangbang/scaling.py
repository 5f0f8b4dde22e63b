"""Physical <-> normalized coordinates for the double integrator.

With ``x = (I / C_max) y`` and ``u = C / C_max`` the plant ``I y'' = C``,
``|C| <= C_max`` becomes ``x'' = u``, ``|u| <= 1``. Time is untouched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigurationError, DomainError, SaturationError


@dataclass(frozen=True)
class PhysicalConfig:
    inertia: float
    control_max: float

    def __post_init__(self):
        for name in ("inertia", "control_max"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ConfigurationError(f"{name} must be positive and finite, got {value!r}")

    @property
    def gain(self) -> float:
        """Factor mapping displacement to normalized position."""
        return self.inertia / self.control_max


@dataclass(frozen=True)
class PhysicalState:
    y: float
    y_dot: float

    def __post_init__(self):
        if not (math.isfinite(self.y) and math.isfinite(self.y_dot)):
            raise DomainError(f"non-finite physical state ({self.y!r}, {self.y_dot!r})")


@dataclass(frozen=True)
class ScaledState:
    x: float
    x_dot: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.x_dot)):
            raise DomainError(f"non-finite state ({self.x!r}, {self.x_dot!r})")

    def __neg__(self) -> ScaledState:
        return ScaledState(-self.x, -self.x_dot)

    @property
    def norm(self) -> float:
        return math.hypot(self.x, self.x_dot)

    @property
    def norm_sq(self) -> float:
        return self.x * self.x + self.x_dot * self.x_dot

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.x_dot)


ORIGIN = ScaledState(0.0, 0.0)


def to_scaled(cfg: PhysicalConfig, s: PhysicalState, control: float) -> tuple[ScaledState, float]:
    if not math.isfinite(control):
        raise DomainError(f"non-finite control {control!r}")
    if abs(control) > cfg.control_max:
        raise SaturationError(f"|control| = {abs(control)!r} exceeds control_max = {cfg.control_max!r}")
    k = cfg.gain
    return ScaledState(k * s.y, k * s.y_dot), control / cfg.control_max


def to_physical(cfg: PhysicalConfig, s: ScaledState, u: float) -> tuple[PhysicalState, float]:
    if not (math.isfinite(u) and abs(u) <= 1.0):
        raise DomainError(f"normalized control must lie in [-1, 1], got {u!r}")
    k = cfg.gain
    return PhysicalState(s.x / k, s.x_dot / k), u * cfg.control_max
