"""Hot loops, each in a numba-compiled and a pure-numpy flavour.

The public names at the bottom of the module are bound to one flavour
according to ``_accel.USE_NUMBA``. Both flavours stay importable under
``*_numba`` / ``*_numpy`` for parity tests and benchmarks.

Case codes used by the batch planner: 0 at origin, 1 on curve, 2 off curve.
"""

import math

import numpy as np

from ._accel import USE_NUMBA, njit

AT_ORIGIN, ON_CURVE, OFF_CURVE = 0, 1, 2


# --- scalar helpers ---------------------------------------------------------

@njit
def _sign(a):
    if a > 0.0:
        return 1.0
    if a < 0.0:
        return -1.0
    return 0.0


@njit
def _rk4_step(x, v, u, h):
    # classical RK4 on (x, v)' = (v, u) with u held over the step
    k1x, k1v = v, u
    k2x, k2v = v + 0.5 * h * k1v, u
    k3x, k3v = v + 0.5 * h * k2v, u
    k4x, k4v = v + h * k3v, u
    x_new = x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
    v_new = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    return x_new, v_new


@njit
def _feedback(x, v, eps):
    if math.hypot(x, v) <= eps:
        return 0.0
    f = x + _sign(v) * v * v / 2.0
    if abs(f) <= eps * (1.0 + x * x + v * v):
        return -_sign(v)
    return -_sign(f)


# --- fixed-step integration -------------------------------------------------

@njit
def rk4_const_numba(x, v, u, duration, dt):
    """Integrate for ``duration`` with step ``dt``; the last step is shortened."""
    n = int(duration // dt)
    for _ in range(n):
        x, v = _rk4_step(x, v, u, dt)
    rest = duration - n * dt
    if rest > 0.0:
        x, v = _rk4_step(x, v, u, rest)
    return x, v


rk4_const_numpy = rk4_const_numba.py_func


@njit
def march_const_numba(x, v, u, h, n):
    """States after 0, 1, ..., n RK4 steps of size ``h``."""
    xs = np.empty(n + 1)
    vs = np.empty(n + 1)
    xs[0] = x
    vs[0] = v
    for k in range(n):
        x, v = _rk4_step(x, v, u, h)
        xs[k + 1] = x
        vs[k + 1] = v
    return xs, vs


def march_const_numpy(x, v, u, h, n):
    # the RK4 increments are (h v + h^2 u / 2, h u); accumulate them in bulk
    vs = np.empty(n + 1)
    vs[0] = v
    vs[1:] = v + np.cumsum(np.full(n, h * u))
    xs = np.empty(n + 1)
    xs[0] = x
    xs[1:] = x + np.cumsum(h * vs[:-1] + 0.5 * h * h * u)
    return xs, vs


# --- oracle continuation ----------------------------------------------------

@njit
def continuation_numba(xs, vs, u2, dt):
    """Run each start state under ``u2`` until the velocity reaches zero.

    Returns terminal positions, elapsed times and a mask of starts whose
    velocity actually reaches zero (``v * u2 <= 0``).
    """
    m = xs.size
    xf = np.empty(m)
    tau = np.empty(m)
    ok = np.empty(m, dtype=np.bool_)
    for i in range(m):
        x = xs[i]
        v = vs[i]
        if v * u2 > 0.0:
            xf[i] = x
            tau[i] = 0.0
            ok[i] = False
            continue
        t = 0.0
        while v * u2 < 0.0 and (v + u2 * dt) * u2 < 0.0:
            x, v = _rk4_step(x, v, u2, dt)
            t += dt
        if v * u2 < 0.0:
            # zero crossing inside the next step; v is affine in time
            h = -v / u2
            x, v = _rk4_step(x, v, u2, h)
            t += h
        xf[i] = x
        tau[i] = t
        ok[i] = True
    return xf, tau, ok


def continuation_numpy(xs, vs, u2, dt):
    x = np.array(xs, dtype=float)
    v = np.array(vs, dtype=float)
    t = np.zeros_like(x)
    ok = v * u2 <= 0.0
    active = ok & (v * u2 < 0.0)
    while True:
        full = active & ((v + u2 * dt) * u2 < 0.0)
        if not full.any():
            break
        h = np.where(full, dt, 0.0)
        x, v = _rk4_step_vec(x, v, u2, h)
        t += h
    h = np.where(active & (v * u2 < 0.0), -v / u2, 0.0)
    x, v = _rk4_step_vec(x, v, u2, h)
    t += h
    return x, t, ok


def _rk4_step_vec(x, v, u, h):
    k1x, k1v = v, u
    k2x, k2v = v + 0.5 * h * k1v, u
    k3x, k3v = v + 0.5 * h * k2v, u
    k4x, k4v = v + h * k3v, u
    return x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x), v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)


# --- closed-loop regulation -------------------------------------------------

@njit
def closed_loop_numba(x, v, dt, deadband, eps, t_max):
    """Sample-and-hold feedback on the RK4-integrated plant.

    Stops when the state enters the deadband ball (u = 0 there) or once the
    clock passes ``t_max``. Returns the trace and whether the ball was reached.
    """
    n_max = int(math.ceil(t_max / dt)) + 2
    ts = np.empty(n_max)
    xs = np.empty(n_max)
    vs = np.empty(n_max)
    us = np.empty(n_max)
    arrived = False
    k = 0
    t = 0.0
    while True:
        ts[k] = t
        xs[k] = x
        vs[k] = v
        if math.hypot(x, v) <= deadband:
            us[k] = 0.0
            arrived = True
            k += 1
            break
        if t > t_max or k + 1 >= n_max:
            us[k] = 0.0
            k += 1
            break
        u = _feedback(x, v, eps)
        us[k] = u
        x, v = _rk4_step(x, v, u, dt)
        k += 1
        t = k * dt
    return ts[:k], xs[:k], vs[:k], us[:k], arrived


closed_loop_numpy = closed_loop_numba.py_func


# --- batch planning ---------------------------------------------------------

@njit
def plan_batch_numba(x, v, eps):
    n = x.size
    case = np.empty(n, dtype=np.int64)
    sigma = np.zeros(n)
    lam = np.full(n, np.nan)
    d1 = np.zeros(n)
    d2 = np.zeros(n)
    tstar = np.zeros(n)
    xs = np.full(n, np.nan)
    vs = np.full(n, np.nan)
    for i in range(n):
        a = x[i]
        b = v[i]
        if math.hypot(a, b) <= eps:
            case[i] = AT_ORIGIN
            continue
        f = a + _sign(b) * b * b / 2.0
        if abs(f) <= eps * (1.0 + a * a + b * b):
            if b == 0.0:
                case[i] = AT_ORIGIN
                continue
            case[i] = ON_CURVE
            d1[i] = abs(b)
            tstar[i] = abs(b)
            continue
        s = _sign(f)
        l0 = math.sqrt(max(s * a + b * b / 2.0, 0.0))
        case[i] = OFF_CURVE
        sigma[i] = s
        lam[i] = l0
        d1[i] = l0 + s * b
        d2[i] = l0
        tstar[i] = d1[i] + d2[i]
        xs[i] = 0.5 * (a + 0.5 * s * b * b)
        vs[i] = -s * l0
    return case, sigma, lam, d1, d2, tstar, xs, vs


def plan_batch_numpy(x, v, eps):
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    f = x + np.sign(v) * v * v / 2.0
    origin = np.hypot(x, v) <= eps
    on = ~origin & (np.abs(f) <= eps * (1.0 + x * x + v * v))
    origin |= on & (v == 0.0)
    on &= v != 0.0
    off = ~origin & ~on
    case = np.where(origin, AT_ORIGIN, np.where(on, ON_CURVE, OFF_CURVE)).astype(np.int64)
    sigma = np.where(off, np.sign(f), 0.0)
    lam = np.where(off, np.sqrt(np.maximum(sigma * x + v * v / 2.0, 0.0)), np.nan)
    d1 = np.where(off, lam + sigma * v, np.where(on, np.abs(v), 0.0))
    d2 = np.where(off, lam, 0.0)
    tstar = np.where(off, d1 + d2, d1)
    xs = np.where(off, 0.5 * (x + 0.5 * sigma * v * v), np.nan)
    vs = np.where(off, -sigma * lam, np.nan)
    return case, sigma, lam, d1, d2, tstar, xs, vs


FLAVOURS = {
    "numba": {
        "rk4_const": rk4_const_numba,
        "march_const": march_const_numba,
        "continuation": continuation_numba,
        "closed_loop": closed_loop_numba,
        "plan_batch": plan_batch_numba,
    },
    "numpy": {
        "rk4_const": rk4_const_numpy,
        "march_const": march_const_numpy,
        "continuation": continuation_numpy,
        "closed_loop": closed_loop_numpy,
        "plan_batch": plan_batch_numpy,
    },
}

BACKEND = "numba" if USE_NUMBA else "numpy"

rk4_const = FLAVOURS[BACKEND]["rk4_const"]
march_const = FLAVOURS[BACKEND]["march_const"]
continuation = FLAVOURS[BACKEND]["continuation"]
closed_loop = FLAVOURS[BACKEND]["closed_loop"]
plan_batch = FLAVOURS[BACKEND]["plan_batch"]
