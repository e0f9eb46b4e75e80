"""Directivity of an excitation, optimal superdirective weights and their checks.

The maximum directivity in a direction is ``a^H C^{-1} a``. It is evaluated
as ``||L^{-1} a||^2`` with ``C = L L^T``, which is real by construction and
uses the same kernel as the pattern grids. The rank-one matrix ``a a^H`` is
never formed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .array_model import ArrayGeometry, Direction, as_excitation, steering_vector
from .coupling import CouplingMatrix, coupling_matrix
from .errors import PowerIterationStalled, ZeroExcitation
from .kernels import gstar_grid
from .quadrature import DEFAULT_ORDER, converged, half_space_rule

REALNESS_TOL = 1e-9
NORMALIZATION = "unit-norm, first nonzero entry real positive"


def to_db(linear):
    """Power ratio in dB; elementwise for arrays."""
    value = 10.0 * np.log10(linear)
    return float(value) if np.ndim(value) == 0 else value


@dataclass(frozen=True)
class DirectivityResult:
    linear: float
    direction: Direction
    geom: ArrayGeometry
    condition_estimate: float

    @property
    def db(self) -> float:
        return to_db(self.linear)


@dataclass(frozen=True, eq=False)
class OptimalExcitation:
    weights: np.ndarray
    achieved: DirectivityResult
    normalization: str = NORMALIZATION


class EigenCheck(NamedTuple):
    lambda0: float
    v0: np.ndarray
    lambda1: float
    iterations: int


def _real(value: complex, what: str) -> float:
    if abs(value.imag) >= REALNESS_TOL * abs(value.real):
        raise ArithmeticError(f"{what} is not real: {value!r}")
    return value.real


def normalize_weights(w) -> np.ndarray:
    """Scale to unit norm and rotate the first nonzero entry onto the positive real axis."""
    w = np.asarray(w, dtype=complex)
    w = w / np.linalg.norm(w)
    first = np.flatnonzero(np.abs(w) > 1e-12 * np.abs(w).max())[0]
    w = w * (abs(w[first]) / w[first])
    w[first] = abs(w[first])
    return w


def directivity(j, geom: ArrayGeometry, direction: Direction, coupling: CouplingMatrix | None = None) -> DirectivityResult:
    """Directivity ``|a^H j|^2 / (j^H C j)`` of excitation ``j``."""
    j = as_excitation(j, geom)
    if not np.any(j):
        raise ZeroExcitation("directivity is undefined for the all-zero excitation")
    cm = coupling if coupling is not None else coupling_matrix(geom)
    numerator = abs(np.vdot(steering_vector(geom, direction), j)) ** 2
    denominator = _real(cm.quadratic_form(j), "j^H C j")
    return DirectivityResult(numerator / denominator, direction, geom, cm.condition_estimate)


def directivity_quadrature_oracle(
    j,
    geom: ArrayGeometry,
    direction: Direction,
    quad_order: int = DEFAULT_ORDER,
    tol: float = 1e-10,
) -> float:
    """Directivity from its defining ratio, with the radiated-power integral done numerically.

    ``2 pi |J|^2`` over ``int int |J(alpha, beta)|^2 sin(beta)`` on the half
    space. Independent of the coupling matrix.
    """
    j = as_excitation(j, geom)
    if not np.any(j):
        raise ZeroExcitation("directivity is undefined for the all-zero excitation")
    n, m = geom.col_index(), geom.row_index()

    def radiated(order):
        phi, theta, weights = half_space_rule(order)
        fx = geom.dx * np.outer(np.cos(phi), np.sin(theta))
        fz = geom.dz * np.broadcast_to(np.cos(theta), fx.shape)
        phase = 2.0 * np.pi * (fx[..., None] * n + fz[..., None] * m)
        output = np.exp(-1j * phase) @ j
        return float(np.sum(np.abs(output) ** 2 * weights))

    power = converged(radiated, quad_order, tol, relative=True, what="radiated power")
    steer = steering_vector(geom, direction)
    return 2.0 * np.pi * abs(np.vdot(steer, j)) ** 2 / power


def optimal_excitation(geom: ArrayGeometry, direction: Direction) -> OptimalExcitation:
    """Weights ``C^{-1} a`` maximizing directivity toward ``direction``."""
    cm = coupling_matrix(geom)
    steer = steering_vector(geom, direction)
    whitened = cm.whiten(steer)
    weights = cm.unwhiten(whitened)
    gain = float(gstar_grid(cm.chol, geom.rows, geom.cols, geom.dx, geom.dz, [direction.phi], [direction.theta])[0, 0])
    closed = _real(complex(np.vdot(steer, weights)), "a^H C^-1 a")
    if abs(closed - gain) > 1e-9 * gain:
        raise ArithmeticError(f"a^H C^-1 a = {closed} disagrees with ||L^-1 a||^2 = {gain}")
    achieved = DirectivityResult(gain, direction, geom, cm.condition_estimate)
    return OptimalExcitation(normalize_weights(weights), achieved)


def max_directivity(geom: ArrayGeometry, direction: Direction) -> DirectivityResult:
    return optimal_excitation(geom, direction).achieved


def power_iteration(apply, start, tol=1e-12, max_iter=10_000, floor=0.0):
    """Dominant eigenpair of a Hermitian positive semidefinite operator.

    Stops when successive Rayleigh quotients agree to ``tol`` relative to
    ``max(|estimate|, floor)``. Returns ``(eigenvalue, unit vector, iterations)``.
    """
    x = np.asarray(start, dtype=complex)
    x = x / np.linalg.norm(x)
    estimate = None
    for it in range(1, max_iter + 1):
        y = apply(x)
        value = np.vdot(x, y).real
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return 0.0, x, it
        if estimate is not None and abs(value - estimate) <= tol * max(abs(value), floor):
            return value, y / norm, it
        estimate = value
        x = y / norm
    raise PowerIterationStalled(f"no convergence after {max_iter} iterations (last estimate {estimate})")


def eigen_crosscheck(geom: ArrayGeometry, direction: Direction, tol: float = 1e-12, max_iter: int = 10_000) -> EigenCheck:
    """Top generalized eigenpair of ``(a a^H, C)`` by power iteration.

    Works on ``B = L^{-1} A L^{-T}`` with ``A x`` applied as ``a (a^H x)``,
    then maps the eigenvector back through ``L^{-T}``. One deflation step
    estimates the second eigenvalue, which should vanish for rank-one ``A``.
    """
    cm = coupling_matrix(geom)
    steer = steering_vector(geom, direction)

    def apply(x):
        u = cm.unwhiten(x)
        return cm.whiten(steer * np.vdot(steer, u))

    lambda0, u0, iterations = power_iteration(apply, cm.whiten(steer), tol, max_iter)

    def deflated(x):
        return apply(x) - lambda0 * u0 * np.vdot(u0, x)

    rng = np.random.default_rng(0)
    start = rng.standard_normal(geom.size) + 1j * rng.standard_normal(geom.size)
    start -= u0 * np.vdot(u0, start)
    if geom.size == 1 or np.linalg.norm(start) == 0.0:
        lambda1 = 0.0
    else:
        lambda1, _, more = power_iteration(deflated, start, 1e-6, max_iter, floor=lambda0)
        iterations += more
    return EigenCheck(lambda0, normalize_weights(cm.unwhiten(u0)), abs(lambda1), iterations)


def average_max_directivity(geom: ArrayGeometry, quad_order: int = DEFAULT_ORDER, tol: float = 1e-6) -> float:
    """Half-space mean of the maximum directivity, ``(1/2pi) int int G* sin(theta)``."""
    cm = coupling_matrix(geom)

    def mean(order):
        phi, theta, weights = half_space_rule(order)
        values = gstar_grid(cm.chol, geom.rows, geom.cols, geom.dx, geom.dz, phi, theta)
        return float(np.sum(values * weights) / (2.0 * np.pi))

    return converged(mean, quad_order, tol, relative=True, what="half-space mean of G*")
