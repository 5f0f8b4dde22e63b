"""Brute-force minimum-time search that knows nothing of the analytic synthesis.

Every candidate schedule applies ``u1`` up to a switch time ``ts`` and then
``-u1`` until the velocity reaches zero; the candidate reaches the origin iff
its terminal position vanishes. Switch times are enumerated on a uniform grid,
sign changes of the terminal position are refined by bisection, and the
fastest root wins.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import DomainError, PreconditionError, SearchFailure
from .scaling import ScaledState

_BLOCK = 1024


@dataclass(frozen=True)
class OracleResult:
    best_time: float
    best_first_control: float
    best_switch_time: float
    terminal_miss: float
    resolution: float

    def to_dict(self) -> dict:
        return asdict(self)


def integrate_numeric(s: ScaledState, control_history: Iterable, dt: float = 1e-3) -> ScaledState:
    """Integrate ``x'' = u`` over a piecewise-constant schedule with fixed-step RK4.

    ``control_history`` holds ``(u, duration)`` pairs or objects with ``u`` and
    ``duration`` attributes. Steps are cut at every breakpoint.
    """
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt!r}")
    x, v = s.x, s.x_dot
    for item in control_history:
        u, duration = (item.u, item.duration) if hasattr(item, "duration") else item
        if not duration >= 0:
            raise DomainError(f"schedule durations must be non-negative, got {duration!r}")
        if not abs(u) <= 1.0:
            raise DomainError(f"|u| must not exceed 1, got {u!r}")
        x, v = _kernels.rk4_const(float(x), float(v), float(u), float(duration), float(dt))
    return ScaledState(float(x), float(v))


def _terminal(x, v, u1, tail, t_step, dt):
    """Terminal position and duration for one switch time inside a grid cell."""
    xs, vs = _kernels.rk4_const(x, v, u1, tail, t_step)
    xf, tau, ok = _kernels.continuation(np.array([xs]), np.array([vs]), -u1, dt)
    return float(xf[0]), float(tau[0]), bool(ok[0])


def _bisect(x, v, u1, t_lo, t_hi, g_lo, t_step, dt, width):
    # x, v: state at t_lo; keep the sign-change bracket [a, b]
    a, b = t_lo, t_hi
    while b - a > width:
        mid = 0.5 * (a + b)
        g_mid, _, ok = _terminal(x, v, u1, mid - t_lo, t_step, dt)
        if ok and g_mid * g_lo > 0:
            a, g_lo = mid, g_mid
        else:
            b = mid
    ts = 0.5 * (a + b)
    xf, tau, ok = _terminal(x, v, u1, ts - t_lo, t_step, dt)
    return ts, xf, tau, ok


def grid_search_min_time(
    s: ScaledState,
    t_step: float = 1e-3,
    accept_radius: float | None = None,
    dt: float = 1e-2,
    refine: int = 100,
    max_time: float | None = None,
) -> OracleResult:
    """Fastest single-switch bang-bang schedule from ``s`` to the origin.

    ``dt`` is the integration step of the post-switch leg and ``max_time``
    caps the enumerated switch times (default ``100 (1 + |s|)``).
    """
    if s.x == 0.0 and s.x_dot == 0.0:
        raise PreconditionError("the search needs a state away from the origin")
    if not (t_step > 0 and dt > 0):
        raise DomainError("t_step and dt must be positive")
    scale = 1.0 + s.norm_sq
    if accept_radius is None:
        accept_radius = 1e-2 * scale
    if not accept_radius > 0:
        raise DomainError(f"accept_radius must be positive, got {accept_radius!r}")
    if max_time is None:
        max_time = 100.0 * (1.0 + s.norm)
    root_tol = 1e-9 * scale
    width = t_step / refine

    # per branch: grid index and state at the start of the next block
    branches = {-1.0: (0, s.x, s.x_dot), 1.0: (0, s.x, s.x_dot)}
    candidates = []  # (total, switch time, branch order, first control, miss)
    best = math.inf
    while True:
        for order, u1 in enumerate((-1.0, 1.0)):
            k0, x0, v0 = branches[u1]
            xs, vs = _kernels.march_const(x0, v0, u1, t_step, _BLOCK)
            xf, tau, ok = _kernels.continuation(xs, vs, -u1, dt)
            ts = (k0 + np.arange(_BLOCK + 1)) * t_step
            branches[u1] = (k0 + _BLOCK, float(xs[-1]), float(vs[-1]))

            hits = []
            for i in np.flatnonzero(ok & (np.abs(xf) <= root_tol)):
                hits.append((float(ts[i]), float(xf[i]), float(tau[i])))
            for i in np.flatnonzero(ok[:-1] & ok[1:] & (xf[:-1] * xf[1:] < 0)):
                t_sw, g, t_tail, good = _bisect(
                    float(xs[i]), float(vs[i]), u1, float(ts[i]), float(ts[i + 1]),
                    float(xf[i]), t_step, dt, width,
                )
                if good:
                    hits.append((t_sw, g, t_tail))
            for t_sw, g, t_tail in hits:
                first = u1 if t_sw > 0 else -u1
                candidates.append((t_sw + t_tail, t_sw, order, first, abs(g)))
                best = min(best, t_sw + t_tail)

        next_ts = branches[-1.0][0] * t_step
        if next_ts > best:
            break
        if next_ts > max_time:
            raise SearchFailure(f"no schedule reaches the origin from {s.as_tuple()} with switch before {max_time}")

    accepted = [c for c in candidates if c[4] <= accept_radius]
    if not accepted:
        raise SearchFailure(f"no candidate from {s.as_tuple()} ends within {accept_radius} of the origin")
    total, t_sw, _, first, miss = min(accepted, key=lambda c: c[:3])
    return OracleResult(
        best_time=total,
        best_first_control=first,
        best_switch_time=t_sw,
        terminal_miss=miss,
        resolution=t_step,
    )
