import math

import numpy as np
import pytest
from hypothesis import strategies as st

from bangbang import ScaledState

SQRT_2_5 = math.sqrt(2.5)

coords = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False, allow_infinity=False)
states = st.builds(ScaledState, coords, coords)


def random_states(n, seed=0, lo=-5.0, hi=5.0, exclude_radius=0.0):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        x, v = rng.uniform(lo, hi, 2)
        if math.hypot(x, v) > exclude_radius:
            out.append(ScaledState(float(x), float(v)))
    return out


def grid_states(n=21, lo=-5.0, hi=5.0):
    axis = np.linspace(lo, hi, n)
    return [ScaledState(float(x), float(v)) for x in axis for v in axis]


@pytest.fixture(scope="session")
def fig1():
    return ScaledState(2.0, 1.0)


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    """Route the public kernel names to one flavour for the duration of a test."""
    from bangbang import _kernels

    for name, fn in _kernels.FLAVOURS[request.param].items():
        monkeypatch.setattr(_kernels, name, fn)
    return request.param


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
