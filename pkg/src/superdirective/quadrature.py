"""Tensor-product Gauss-Legendre rules on the half space [0, pi] x [0, pi]."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import QuadratureNotConverged

DEFAULT_ORDER = 64


@lru_cache(maxsize=16)
def gauss_legendre_0_pi(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of an ``order``-point rule mapped to [0, pi]."""
    if order < 1:
        raise ValueError("quadrature order must be positive")
    x, w = np.polynomial.legendre.leggauss(order)
    nodes = 0.5 * np.pi * (x + 1.0)
    weights = 0.5 * np.pi * w
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def half_space_rule(order: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(phi, theta, weights)`` with ``weights[i, k]`` including sin(theta_k).

    Summing ``f(phi_i, theta_k) * weights[i, k]`` approximates
    ``int_0^pi int_0^pi f sin(theta) dphi dtheta``.
    """
    nodes, w = gauss_legendre_0_pi(order)
    weights = np.outer(w, w * np.sin(nodes))
    return nodes, nodes, weights


def converged(evaluate, order: int, tol: float, relative: bool = False, what: str = "integral"):
    """Evaluate at ``order`` and ``2 * order``; return the finer value.

    Raises QuadratureNotConverged if the two differ by more than ``tol``
    (absolute, or relative to the finer value when ``relative`` is set).
    """
    if order < 8:
        raise ValueError("quadrature order must be at least 8")
    coarse = evaluate(order)
    fine = evaluate(2 * order)
    change = abs(fine - coarse)
    if relative:
        change /= abs(fine)
    if not change <= tol:
        raise QuadratureNotConverged(
            f"{what}: order {order} -> {2 * order} changed the result by {change:.3e} (tol {tol:.1e})"
        )
    return fine
