"""Hot loop: maximum directivity ``||L^{-1} a(phi, theta)||^2`` over many directions.

Two implementations share the same arithmetic (per-node forward substitution
with real and imaginary parts carried separately): a numba kernel parallel
over azimuth rows and a numpy version vectorized over nodes. Which one
:func:`gstar_grid` uses is fixed at import by ``SUPERDIRECTIVE_DISABLE_NUMBA``.
Every node is computed independently, so a node's value does not depend on
the grid it was evaluated in.
"""
import math

import numpy as np

from ._accel import USE_NUMBA, njit, prange


@njit(parallel=True, cache=True)
def _gstar_grid_numba(chol, rows, cols, dx, dz, phis, thetas):
    size = rows * cols
    out = np.empty((phis.shape[0], thetas.shape[0]))
    for p in prange(phis.shape[0]):
        cos_phi = math.cos(phis[p])
        yr = np.empty(size)
        yi = np.empty(size)
        for t in range(thetas.shape[0]):
            fx = dx * math.sin(thetas[t]) * cos_phi
            fz = dz * math.cos(thetas[t])
            total = 0.0
            for i in range(size):
                phase = 2.0 * math.pi * ((i % cols) * fx + (i // cols) * fz)
                sr = math.cos(phase)
                si = math.sin(phase)
                for k in range(i):
                    sr -= chol[i, k] * yr[k]
                    si -= chol[i, k] * yi[k]
                yr[i] = sr / chol[i, i]
                yi[i] = si / chol[i, i]
                total += yr[i] * yr[i] + yi[i] * yi[i]
            out[p, t] = total
    return out


def _gstar_grid_numpy(chol, rows, cols, dx, dz, phis, thetas):
    size = rows * cols
    fx = dx * np.outer(np.cos(phis), np.sin(thetas))
    fz = dz * np.broadcast_to(np.cos(thetas), fx.shape)
    yr = np.empty((size,) + fx.shape)
    yi = np.empty((size,) + fx.shape)
    total = np.zeros(fx.shape)
    for i in range(size):
        phase = 2.0 * math.pi * ((i % cols) * fx + (i // cols) * fz)
        sr = np.cos(phase)
        si = np.sin(phase)
        for k in range(i):
            sr -= chol[i, k] * yr[k]
            si -= chol[i, k] * yi[k]
        yr[i] = sr / chol[i, i]
        yi[i] = si / chol[i, i]
        total += yr[i] * yr[i] + yi[i] * yi[i]
    return total


def gstar_grid(chol, rows, cols, dx, dz, phis, thetas, use_numba=None):
    """Linear maximum directivity on the outer grid ``phis x thetas``.

    ``chol`` is the lower Cholesky factor of the coupling matrix.
    """
    if use_numba is None:
        use_numba = USE_NUMBA
    args = (
        np.ascontiguousarray(chol, dtype=float),
        int(rows),
        int(cols),
        float(dx),
        float(dz),
        np.ascontiguousarray(phis, dtype=float).reshape(-1),
        np.ascontiguousarray(thetas, dtype=float).reshape(-1),
    )
    if use_numba:
        return _gstar_grid_numba(*args)
    return _gstar_grid_numpy(*args)
