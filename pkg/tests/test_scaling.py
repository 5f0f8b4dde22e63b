import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bangbang import (
    ConfigurationError,
    DomainError,
    PhysicalConfig,
    PhysicalState,
    SaturationError,
    ScaledState,
    to_physical,
    to_scaled,
)


def test_to_scaled_hand_value():
    s, u = to_scaled(PhysicalConfig(2.0, 4.0), PhysicalState(3.0, 1.0), 4.0)
    assert (s.x, s.x_dot, u) == (1.5, 0.5, 1.0)


@pytest.mark.parametrize("a,b,c", [(0.3, -2.0, 0.7), (-4.0, 1.5, -1.0), (0.0, 0.0, 0.0)])
def test_unit_config_is_identity(a, b, c):
    s, u = to_scaled(PhysicalConfig(1.0, 1.0), PhysicalState(a, b), c)
    assert (s.x, s.x_dot, u) == (a, b, c)


def test_boundary_saturation_is_allowed():
    s, u = to_scaled(PhysicalConfig(2.0, 4.0), PhysicalState(0.0, 0.0), -4.0)
    assert (s.x, s.x_dot, u) == (0.0, 0.0, -1.0)


def test_to_physical_hand_value():
    p, c = to_physical(PhysicalConfig(2.0, 4.0), ScaledState(1.5, 0.5), 1.0)
    assert (p.y, p.y_dot, c) == (3.0, 1.0, 4.0)


def test_origin_is_fixed():
    p, c = to_physical(PhysicalConfig(5.0, 2.0), ScaledState(0.0, 0.0), 0.0)
    assert (p.y, p.y_dot, c) == (0.0, 0.0, 0.0)


@pytest.mark.parametrize("inertia,cmax", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -3.0), (math.nan, 1.0)])
def test_bad_config(inertia, cmax):
    with pytest.raises(ConfigurationError):
        PhysicalConfig(inertia, cmax)


def test_saturation_violation():
    with pytest.raises(SaturationError):
        to_scaled(PhysicalConfig(2.0, 4.0), PhysicalState(0.0, 0.0), 4.0000001)


def test_scaled_control_out_of_range():
    with pytest.raises(DomainError):
        to_physical(PhysicalConfig(2.0, 4.0), ScaledState(0.0, 0.0), 1.5)


mags = st.floats(min_value=1e-6, max_value=1e6)
signed = st.tuples(mags, st.sampled_from([-1.0, 1.0])).map(lambda p: p[0] * p[1])


@given(mags, mags, signed, signed, st.floats(min_value=0.0, max_value=1.0), st.sampled_from([-1.0, 1.0]))
def test_round_trip(inertia, cmax, y, ydot, frac, sign):
    cfg = PhysicalConfig(inertia, cmax)
    control = sign * frac * cmax
    s, u = to_scaled(cfg, PhysicalState(y, ydot), control)
    p, c = to_physical(cfg, s, u)
    assert p.y == pytest.approx(y, rel=1e-12, abs=0)
    assert p.y_dot == pytest.approx(ydot, rel=1e-12, abs=0)
    assert c == pytest.approx(control, rel=1e-12, abs=1e-300)


def test_scaling_commutes_with_time_sampling():
    # I y'' = C with constant C sampled at shared times maps onto x'' = u
    from bangbang import propagate_const

    cfg = PhysicalConfig(2.0, 4.0)
    y0, ydot0, C = 1.0, -0.5, 3.0
    s0, u = to_scaled(cfg, PhysicalState(y0, ydot0), C)
    for t in (0.0, 0.25, 1.0, 3.5):
        y = y0 + ydot0 * t + 0.5 * (C / cfg.inertia) * t * t
        ydot = ydot0 + (C / cfg.inertia) * t
        st_t, _ = to_scaled(cfg, PhysicalState(y, ydot), C)
        prop = propagate_const(s0, u, t)
        assert prop.x == pytest.approx(st_t.x, rel=1e-12, abs=1e-14)
        assert prop.x_dot == pytest.approx(st_t.x_dot, rel=1e-12, abs=1e-14)
