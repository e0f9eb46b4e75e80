"""Numba toggle.

Set ``SUPERDIRECTIVE_DISABLE_NUMBA=1`` to run the pure-numpy kernels, or when
numba is not importable. The flag is read once at import time.
"""
import os

_FLAG = os.environ.get("SUPERDIRECTIVE_DISABLE_NUMBA", "").strip().lower()
DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and not DISABLED

if numba is not None:
    # Prefer OpenMP: probing an outdated TBB first only emits a warning.
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise an identity decorator."""
    if numba is not None:
        return numba.njit(*args, **kwargs)

    def wrapper(func):
        return func

    return wrapper


if numba is not None:
    prange = numba.prange
else:  # pragma: no cover
    prange = range
