import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from bangbang import (
    Arc,
    Case,
    DomainError,
    GeometryError,
    OrderingError,
    ParabolaArc,
    PreconditionError,
    ScaledState,
    parabola_constant,
    plan,
    propagate_const,
    time_across_switch,
    time_between,
    trajectory_of_plan,
)
from bangbang.trajectory import arcs_of_plan, samples_to_array

from conftest import SQRT_2_5, states

ORIGIN = ScaledState(0.0, 0.0)
controls = st.sampled_from([-1.0, 1.0])
durations = st.floats(min_value=0.0, max_value=10.0)


def test_propagate_examples():
    assert propagate_const(ScaledState(2.0, 1.0), -1.0, 1.0) == ScaledState(2.5, 0.0)
    assert propagate_const(ScaledState(0.0, 0.0), 1.0, 2.0) == ScaledState(2.0, 2.0)
    assert propagate_const(ScaledState(-0.5, 1.0), -1.0, 0.5) == ScaledState(-0.125, 0.5)


@given(states, st.floats(min_value=-1.0, max_value=1.0))
def test_zero_time_propagation(s, u):
    assert propagate_const(s, u, 0.0) == s


def test_propagate_domain():
    with pytest.raises(DomainError):
        propagate_const(ORIGIN, 1.0, -0.1)
    with pytest.raises(DomainError):
        propagate_const(ORIGIN, 1.5, 1.0)


def test_parabola_constant_examples():
    assert parabola_constant(ScaledState(2.0, 1.0), -1.0) == 2.5
    assert parabola_constant(ORIGIN, 1.0) == 0.0
    sw = plan(ScaledState(2.0, 1.0)).switch_point
    assert parabola_constant(sw, -1.0) == pytest.approx(2.5, rel=1e-15)


@given(states, controls, durations)
def test_parabola_conservation(s, u, t):
    c = parabola_constant(s, u)
    assert parabola_constant(propagate_const(s, u, t), u) == pytest.approx(c, abs=1e-9 * (1 + abs(c)))


@given(states, controls, durations, durations)
def test_clockwise_traversal(s, u, t1, dt):
    assume(dt > 1e-9)
    a = propagate_const(s, u, t1)
    b = propagate_const(s, u, t1 + dt)
    assert math.copysign(1.0, b.x_dot - a.x_dot) == u


@given(states, controls, durations, durations)
def test_semigroup(s, u, t1, t2):
    once = propagate_const(s, u, t1 + t2)
    twice = propagate_const(propagate_const(s, u, t1), u, t2)
    scale = 1.0 + abs(once.x) + abs(once.x_dot)
    assert twice.x == pytest.approx(once.x, rel=1e-12, abs=1e-12 * scale)
    assert twice.x_dot == pytest.approx(once.x_dot, rel=1e-12, abs=1e-12 * scale)


def test_trajectory_fig1():
    p = plan(ScaledState(2.0, 1.0))
    d1 = p.bangs[0].duration
    samples = trajectory_of_plan(p, 5)
    ts = [q.t for q in samples]
    assert ts[0] == 0.0 and ts[-1] == p.total_time and d1 in ts
    assert len(samples) == 6
    assert samples[0].state == ScaledState(2.0, 1.0) and samples[0].u == -1.0
    kink = samples[ts.index(d1)]
    assert kink.state.x == pytest.approx(1.25, rel=1e-14)
    assert kink.state.x_dot == pytest.approx(-SQRT_2_5, rel=1e-14)
    assert kink.u == 1.0
    assert samples[-1].state.norm <= 1e-9 * 6 and samples[-1].u == 1.0
    assert all(b > a for a, b in zip(ts, ts[1:]))


def test_trajectory_at_origin():
    samples = trajectory_of_plan(plan(ORIGIN), 2)
    assert [(q.t, q.state, q.u) for q in samples] == [(0.0, ORIGIN, 0.0), (0.0, ORIGIN, 0.0)]


def test_trajectory_on_curve():
    p = plan(ScaledState(-0.5, 1.0))
    samples = trajectory_of_plan(p, 3)
    assert [q.t for q in samples] == [0.0, 0.5, 1.0]
    assert samples[1].state == ScaledState(-0.125, 0.5)
    assert samples[-1].state.norm <= 1e-12
    assert {q.u for q in samples} == {-1.0}


def test_trajectory_needs_two_samples():
    with pytest.raises(DomainError):
        trajectory_of_plan(plan(ScaledState(1.0, 1.0)), 1)


@given(states, st.integers(min_value=2, max_value=60))
def test_trajectory_samples_consistent(s, n):
    p = plan(s)
    assume(p.case is not Case.AT_ORIGIN)
    arr = samples_to_array(trajectory_of_plan(p, n))
    assert np.all(np.diff(arr[:, 0]) > 0)
    assert np.hypot(arr[-1, 1], arr[-1, 2]) <= 1e-9 * (1 + s.norm_sq)
    # consecutive samples under one control obey the closed-form propagation
    for (t0, x0, v0, u0), (t1, x1, v1, u1) in zip(arr, arr[1:]):
        if u0 == u1:
            q = propagate_const(ScaledState(x0, v0), u0, t1 - t0)
            assert abs(q.x - x1) <= 1e-9 and abs(q.x_dot - v1) <= 1e-9


def test_parabola_arc_membership():
    p = plan(ScaledState(2.0, 1.0))
    p1, p2 = arcs_of_plan(p)
    assert (p1.u, p2.u) == (-1.0, 1.0)
    assert p1.c == 2.5 and p2.c == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(GeometryError):
        ParabolaArc(1.0, 0.0, ScaledState(1.0, 0.0), ORIGIN)


def test_time_between_examples():
    assert time_between(ScaledState(2.0, 1.0), ScaledState(2.5, 0.0), Arc.P1, 1.0) == 1.0
    a = ScaledState(0.7, -0.2)
    assert time_between(a, a, Arc.P2, 1.0) == 0.0
    sw = ScaledState(1.25, -SQRT_2_5)
    assert time_between(sw, ScaledState(0.5, -1.0), "P2", 1.0) == pytest.approx(SQRT_2_5 - 1.0, rel=1e-14)


def test_time_between_errors():
    with pytest.raises(GeometryError):
        time_between(ScaledState(2.0, 1.0), ScaledState(0.0, 0.0), Arc.P1, 1.0)
    with pytest.raises(OrderingError):
        time_between(ScaledState(2.5, 0.0), ScaledState(2.0, 1.0), Arc.P1, 1.0)


def test_time_across_switch_examples():
    p = plan(ScaledState(2.0, 1.0))
    assert time_across_switch(ScaledState(2.5, 0.0), ScaledState(0.5, -1.0), p) == pytest.approx(
        2.16227766016837933, rel=1e-14
    )
    assert time_across_switch(p.switch_point, p.switch_point, p) == 0.0
    assert time_across_switch(ScaledState(2.0, 1.0), ORIGIN, p) == pytest.approx(p.total_time, rel=1e-14)
    with pytest.raises(PreconditionError):
        time_across_switch(ORIGIN, ORIGIN, plan(ScaledState(-0.5, 1.0)))


@given(states, st.floats(0, 1), st.floats(0, 1))
def test_time_between_matches_propagation(s, f1, f2):
    p = plan(s)
    assume(p.case is Case.OFF_CURVE)
    d1, d2 = p.bangs[0].duration, p.bangs[1].duration
    ta, tb = sorted((f1 * d1, f2 * d1))
    a = propagate_const(s, p.bangs[0].u, ta)
    b = propagate_const(s, p.bangs[0].u, tb)
    assert time_between(a, b, Arc.P1, p.sigma0) == pytest.approx(tb - ta, rel=1e-12, abs=1e-12 * (1 + d1))
    tc, td = sorted((f1 * d2, f2 * d2))
    c = propagate_const(p.switch_point, p.bangs[1].u, tc)
    d = propagate_const(p.switch_point, p.bangs[1].u, td)
    assert time_between(c, d, Arc.P2, p.sigma0) == pytest.approx(td - tc, rel=1e-12, abs=1e-12 * (1 + d2))
    assert time_across_switch(a, d, p) == pytest.approx(d1 - ta + td, rel=1e-12, abs=1e-12 * p.total_time)


@given(states)
def test_whole_trajectory_time(s):
    p = plan(s)
    assume(p.case is Case.OFF_CURVE)
    assert time_across_switch(s, ORIGIN, p) == pytest.approx(p.total_time, rel=1e-12)
