"""Backend selection for the numeric kernels.

Set ``BANGBANG_BACKEND=numpy`` to bypass numba and run the pure-numpy
paths. The default is ``numba`` whenever it can be imported.
"""

import os

BACKEND_ENV = "BANGBANG_BACKEND"

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

HAVE_NUMBA = _numba is not None

_requested = os.environ.get(BACKEND_ENV, "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"{BACKEND_ENV} must be 'numba' or 'numpy', got {_requested!r}")

USE_NUMBA = HAVE_NUMBA and _requested == "numba"


def njit(func):
    """Compile ``func`` in nopython mode when numba is available.

    The undecorated function stays reachable as ``func.py_func`` either way.
    """
    if not HAVE_NUMBA:
        func.py_func = func
        return func
    return _numba.njit(cache=True)(func)
