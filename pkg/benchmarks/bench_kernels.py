"""Time the numba and numpy flavours of each hot kernel.

    python benchmarks/bench_kernels.py [--repeat N]

Numba compilation happens in a warm-up call that is not timed.
"""

import argparse
import time

import numpy as np

from bangbang import ScaledState, _kernels, grid_search_min_time


def _states(n, seed=0):
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-5, 5, (4 * n, 2))
    pts = pts[np.hypot(pts[:, 0], pts[:, 1]) > 0.05][:n]
    return [ScaledState(float(x), float(v)) for x, v in pts]


def _use(flavour):
    for name, fn in _kernels.FLAVOURS[flavour].items():
        setattr(_kernels, name, fn)


def bench_oracle(states):
    for s in states:
        grid_search_min_time(s)


def bench_closed_loop(states):
    for s in states:
        _kernels.closed_loop(s.x, s.x_dot, 1e-3, 1e-2, 1e-9, 30.0)


def bench_plan_batch(xv):
    _kernels.plan_batch(xv[0], xv[1], 1e-9)


def bench_continuation(xv):
    _kernels.continuation(xv[0][:4096], xv[1][:4096], 1.0, 1e-2)


def _time(fn, arg, repeat):
    fn(arg)  # warm-up / JIT
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(arg)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(1)
    xv = rng.uniform(-5, 5, (2, 1_000_000))
    cases = [
        ("oracle search, 10 states", bench_oracle, _states(10)),
        ("closed loop, 20 states", bench_closed_loop, _states(20, seed=1)),
        ("plan_batch, 1e6 states", bench_plan_batch, xv),
        ("continuation, 4096 starts", bench_continuation, xv),
    ]
    print(f"{'kernel':<28}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for label, fn, arg in cases:
        times = {}
        for flavour in ("numba", "numpy"):
            _use(flavour)
            times[flavour] = _time(fn, arg, args.repeat)
        print(f"{label:<28}{times['numba']:>12.4f}{times['numpy']:>12.4f}{times['numpy'] / times['numba']:>9.1f}x")
    _use(_kernels.BACKEND)


if __name__ == "__main__":
    main()
