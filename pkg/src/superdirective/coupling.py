"""Sinc-kernel coupling matrix of an isotropic URA and its quadrature oracle.

Entry ``(i, k)`` is ``sinc(2 * dist_ik)`` with ``dist_ik`` the element
separation in wavelengths. It is the half-space Gram matrix of steering
vectors, normalized by 2*pi, which :func:`coupling_entry_oracle` evaluates by
brute-force quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.linalg import LinAlgError, cholesky, solve_triangular

from .array_model import ArrayGeometry, ElementIndex, element_index
from .errors import FactorizationFailure, QuadratureNotConverged
from .quadrature import DEFAULT_ORDER, converged, half_space_rule

SERIES_CUTOFF = 1e-6
JITTER_START = 1e-14
JITTER_STOP = 1e-8
JITTER_GROWTH = 100.0


def sinc(x: float) -> float:
    """Normalized sinc, ``sin(pi x) / (pi x)``."""
    x = float(x)
    if abs(x) < SERIES_CUTOFF:
        t = (math.pi * x) ** 2
        return 1.0 - t / 6.0 + t * t / 120.0
    return math.sin(math.pi * x) / (math.pi * x)


def sinc_array(x) -> np.ndarray:
    """Vectorized :func:`sinc`; uses the same series branch near zero."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < SERIES_CUTOFF
    safe = np.where(small, 1.0, x)
    t = (np.pi * x) ** 2
    return np.where(small, 1.0 - t / 6.0 + t * t / 120.0, np.sin(np.pi * safe) / (np.pi * safe))


def coupling_entries(geom: ArrayGeometry) -> np.ndarray:
    """Raw MN x MN coupling matrix, without factorization.

    Values are looked up from a table over ``(|dm|, |dn|)`` so symmetry, the
    unit diagonal and the block-Toeplitz structure hold bit for bit.
    """
    dm = np.arange(geom.rows)[:, None]
    dn = np.arange(geom.cols)[None, :]
    table = sinc_array(2.0 * np.sqrt((geom.dz * dm) ** 2 + (geom.dx * dn) ** 2))
    m, n = geom.row_index(), geom.col_index()
    return table[np.abs(m[:, None] - m[None, :]), np.abs(n[:, None] - n[None, :])]


def _eig_condition(entries: np.ndarray) -> float:
    ev = np.linalg.eigvalsh(entries)
    smallest = np.min(np.abs(ev))
    return math.inf if smallest == 0.0 else float(np.max(np.abs(ev)) / smallest)


@dataclass(frozen=True, eq=False)
class CouplingMatrix:
    geom: ArrayGeometry
    entries: np.ndarray
    chol: Optional[np.ndarray]
    condition_estimate: float
    jitter_applied: float

    def _factor(self) -> np.ndarray:
        if self.chol is None:
            raise FactorizationFailure("coupling matrix has no factorization", self.condition_estimate)
        return self.chol

    def whiten(self, b) -> np.ndarray:
        """``L^{-1} b`` for the lower Cholesky factor ``L``."""
        return solve_triangular(self._factor(), b, lower=True)

    def unwhiten(self, y) -> np.ndarray:
        """``L^{-T} y``."""
        return solve_triangular(self._factor(), y, lower=True, trans="T")

    def solve(self, b) -> np.ndarray:
        return self.unwhiten(self.whiten(b))

    def quadratic_form(self, j) -> complex:
        """``j^H C j`` (unfactorized, real up to round-off)."""
        return complex(np.vdot(j, self.entries @ j))


def factorize(entries: np.ndarray) -> tuple[np.ndarray, float]:
    """Cholesky factor with escalating diagonal jitter.

    Returns ``(L, jitter)``; ``L @ L.T`` reproduces ``entries + jitter * I``.
    """
    size = entries.shape[0]
    jitter = 0.0
    scale = JITTER_START
    while True:
        try:
            shifted = entries if jitter == 0.0 else entries + jitter * np.eye(size)
            return cholesky(shifted, lower=True), jitter
        except LinAlgError:
            pass
        if scale > JITTER_STOP * (1.0 + 1e-9):
            raise FactorizationFailure(
                f"coupling matrix not positive definite after jitter {jitter:.1e}",
                _eig_condition(entries),
            )
        jitter = scale * size
        scale *= JITTER_GROWTH


@lru_cache(maxsize=64)
def coupling_matrix(geom: ArrayGeometry) -> CouplingMatrix:
    """Coupling matrix plus Cholesky factor (cached per geometry, read-only)."""
    entries = coupling_entries(geom)
    chol, jitter = factorize(entries)
    diag = np.diag(chol)
    condition = float((diag.max() / diag.min()) ** 2)
    entries.flags.writeable = False
    chol.flags.writeable = False
    return CouplingMatrix(geom, entries, chol, max(condition, 1.0), jitter)


def _as_element(index, geom: ArrayGeometry) -> ElementIndex:
    if isinstance(index, ElementIndex):
        return index
    return element_index(int(index), geom)


def coupling_entry_oracle(
    geom: ArrayGeometry,
    i,
    k,
    quad_order: int = DEFAULT_ORDER,
    tol: float = 1e-9,
) -> float:
    """Coupling entry ``(i, k)`` by direct half-space quadrature.

    Integrates ``exp(j 2pi (fx dn + fz dm)) sin(theta)`` over
    [0, pi] x [0, pi] and divides by 2*pi. ``i`` and ``k`` are flat indices
    or :class:`ElementIndex` values.
    """
    a, b = _as_element(i, geom), _as_element(k, geom)
    dn, dm = a.n - b.n, a.m - b.m

    def evaluate(order):
        phi, theta, weights = half_space_rule(order)
        fx = geom.dx * np.outer(np.cos(phi), np.sin(theta))
        fz = geom.dz * np.cos(theta)[None, :]
        integrand = np.exp(2j * np.pi * (fx * dn + fz * dm))
        value = np.sum(integrand * weights) / (2.0 * np.pi)
        if abs(value.imag) >= 1e-9:
            raise QuadratureNotConverged(f"coupling integral kept imaginary part {value.imag:.3e}")
        return value.real

    return float(converged(evaluate, quad_order, tol, what=f"coupling entry ({a.flat}, {b.flat})"))
