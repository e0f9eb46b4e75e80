"""Directivity patterns over angular grids, endfire-plane cuts and spacing sweeps."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .array_model import ArrayGeometry, Direction, as_excitation
from .coupling import coupling_matrix
from .directivity import directivity, to_db
from .errors import ConfigError, FactorizationFailure
from .kernels import gstar_grid

DEFAULT_COUNT = 181
# Ties closer than this are resolved toward the first node in phi-major order.
ARGMAX_TIE_DB = 1e-9


def uniform_angles(count: int) -> np.ndarray:
    if count < 2:
        raise ConfigError(f"sample count must be at least 2, got {count}")
    angles = np.linspace(0.0, np.pi, count)
    angles[-1] = np.pi
    return angles


@dataclass(frozen=True, eq=False)
class PatternGrid:
    geom: ArrayGeometry
    phi: np.ndarray
    theta: np.ndarray
    values_db: np.ndarray
    kind: str = "max_directivity"
    excitation: Optional[np.ndarray] = None

    def peak(self) -> tuple[float, Direction]:
        """Peak value in dB and where it is attained."""
        flat = self.values_db.ravel()
        idx = int(np.flatnonzero(flat >= flat.max() - ARGMAX_TIE_DB)[0])
        p, t = divmod(idx, self.theta.size)
        return float(flat[idx]), Direction(self.phi[p], self.theta[t])


def pattern_grid(geom: ArrayGeometry, phi_count: int = DEFAULT_COUNT, theta_count: int = DEFAULT_COUNT) -> PatternGrid:
    """Maximum directivity (dB) on a uniform grid over [0, pi] x [0, pi]."""
    phi, theta = uniform_angles(phi_count), uniform_angles(theta_count)
    cm = coupling_matrix(geom)
    linear = gstar_grid(cm.chol, geom.rows, geom.cols, geom.dx, geom.dz, phi, theta)
    return PatternGrid(geom, phi, theta, to_db(linear))


def fixed_excitation_grid(j, geom: ArrayGeometry, phi_count: int = DEFAULT_COUNT, theta_count: int = DEFAULT_COUNT) -> PatternGrid:
    """Directivity (dB) of a fixed excitation on a uniform grid."""
    j = as_excitation(j, geom)
    phi, theta = uniform_angles(phi_count), uniform_angles(theta_count)
    cm = coupling_matrix(geom)
    values = np.empty((phi.size, theta.size))
    for p, ph in enumerate(phi):
        for t, th in enumerate(theta):
            values[p, t] = directivity(j, geom, Direction(ph, th), cm).db
    return PatternGrid(geom, phi, theta, values, "fixed_excitation", j.copy())


def endfire_plane_cut(geom: ArrayGeometry, theta_count: int = DEFAULT_COUNT) -> tuple[np.ndarray, np.ndarray]:
    """Maximum directivity (dB) along phi = 0, theta uniform over [0, pi]."""
    theta = uniform_angles(theta_count)
    cm = coupling_matrix(geom)
    linear = gstar_grid(cm.chol, geom.rows, geom.cols, geom.dx, geom.dz, [0.0], theta)[0]
    return theta, to_db(linear)


@dataclass
class SweepResult:
    rows: int
    cols: int
    spacings: list
    theta: np.ndarray
    cuts: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    plane_phi: float = 0.0

    def peak(self, spacing: float) -> float:
        return float(np.max(self.cuts[spacing]))


def spacing_sweep(rows: int, cols: int, spacings, theta_count: int = DEFAULT_COUNT) -> SweepResult:
    """Endfire-plane cuts for each spacing (dx = dz); failures are recorded, not raised."""
    spacings = [float(s) for s in spacings]
    if not spacings:
        raise ConfigError("spacing list is empty")
    geoms = [ArrayGeometry(rows, cols, s, s) for s in spacings]
    result = SweepResult(rows, cols, spacings, uniform_angles(theta_count))
    for s, geom in zip(spacings, geoms):
        try:
            _, result.cuts[s] = endfire_plane_cut(geom, theta_count)
        except FactorizationFailure as exc:
            result.failures[s] = str(exc)
    return result


def uncoupled_reference_db(geom: ArrayGeometry) -> float:
    """``10 log10(MN)``: directivity of the matched excitation when coupling is ignored."""
    return to_db(geom.size)
