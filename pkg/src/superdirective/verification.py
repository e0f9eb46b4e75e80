"""Cross-checks of each closed form against its independent numerical route."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .array_model import ArrayGeometry, Direction
from .coupling import coupling_entries, coupling_entry_oracle, coupling_matrix
from .directivity import (
    average_max_directivity,
    directivity,
    directivity_quadrature_oracle,
    eigen_crosscheck,
    max_directivity,
)
from .errors import FactorizationFailure, SuperdirectivityError
from .quadrature import DEFAULT_ORDER

COUPLING_TOL = 1e-6
DIRECTIVITY_TOL = 1e-6
EIGEN_TOL = 1e-8
RANK_ONE_TOL = 1e-8


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float
    error: str = ""

    @property
    def passed(self) -> bool:
        return not self.error and bool(self.residual < self.tolerance)


def mean_tolerance(geom: ArrayGeometry) -> float:
    """Relative tolerance on the half-space mean: 0.1 %, or 1 % below 0.3 wavelengths."""
    return 1e-3 if min(geom.dx, geom.dz) >= 0.3 else 1e-2


def random_direction(rng: np.random.Generator) -> Direction:
    return Direction(rng.uniform(0.0, math.pi), rng.uniform(0.0, math.pi))


def random_excitation(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def check_coupling(geom: ArrayGeometry, quad_order: int = DEFAULT_ORDER) -> CheckResult:
    closed = coupling_entries(geom)
    worst = 0.0
    for i in range(geom.size):
        for k in range(geom.size):
            worst = max(worst, abs(coupling_entry_oracle(geom, i, k, quad_order) - closed[i, k]))
    return CheckResult("coupling entries vs half-space quadrature", worst, COUPLING_TOL)


def check_directivity(geom, quad_order=DEFAULT_ORDER, samples=10, rng=None) -> CheckResult:
    rng = rng if rng is not None else np.random.default_rng(0)
    worst = 0.0
    for _ in range(samples):
        j = random_excitation(rng, geom.size)
        direction = random_direction(rng)
        closed = directivity(j, geom, direction).linear
        oracle = directivity_quadrature_oracle(j, geom, direction, quad_order)
        worst = max(worst, abs(closed - oracle) / oracle)
    return CheckResult("directivity ratio vs radiated-power quadrature", worst, DIRECTIVITY_TOL)


def check_eigen(geom, samples=10, rng=None) -> list[CheckResult]:
    rng = rng if rng is not None else np.random.default_rng(0)
    worst = 0.0
    rank = 0.0
    for _ in range(samples):
        direction = random_direction(rng)
        eig = eigen_crosscheck(geom, direction)
        closed = max_directivity(geom, direction).linear
        worst = max(worst, abs(eig.lambda0 - closed) / eig.lambda0)
        rank = max(rank, eig.lambda1 / eig.lambda0)
    return [
        CheckResult("power-iteration eigenvalue vs closed form", worst, EIGEN_TOL),
        CheckResult("second generalized eigenvalue / first", rank, RANK_ONE_TOL),
    ]


def check_mean(geom, quad_order=DEFAULT_ORDER) -> tuple[CheckResult, float]:
    mean = average_max_directivity(geom, quad_order)
    result = CheckResult("half-space mean of G* vs MN", abs(mean - geom.size) / geom.size, mean_tolerance(geom))
    return result, mean


def _guarded(name, tolerance, run):
    try:
        return run()
    except FactorizationFailure:
        raise
    except (SuperdirectivityError, ArithmeticError) as exc:
        return CheckResult(name, float("inf"), tolerance, f"{type(exc).__name__}: {exc}")


def run_checks(geom: ArrayGeometry, quad_order: int = DEFAULT_ORDER, samples: int = 10, seed: int = 0):
    """Run every check; returns ``(results, mean)`` with ``mean`` None if it failed.

    A check that raises is reported as failed with the error attached.
    FactorizationFailure propagates since every check after the first needs
    the factor.
    """
    rng = np.random.default_rng(seed)
    results = [_guarded("coupling entries vs half-space quadrature", COUPLING_TOL, lambda: check_coupling(geom, quad_order))]
    coupling_matrix(geom)
    results.append(
        _guarded(
            "directivity ratio vs radiated-power quadrature",
            DIRECTIVITY_TOL,
            lambda: check_directivity(geom, quad_order, samples, rng),
        )
    )
    eig = _guarded("power-iteration eigenvalue vs closed form", EIGEN_TOL, lambda: check_eigen(geom, samples, rng))
    results.extend(eig if isinstance(eig, list) else [eig])
    mean_check = _guarded("half-space mean of G* vs MN", mean_tolerance(geom), lambda: check_mean(geom, quad_order))
    if isinstance(mean_check, CheckResult):
        results.append(mean_check)
        return results, None
    results.append(mean_check[0])
    return results, mean_check[1]
