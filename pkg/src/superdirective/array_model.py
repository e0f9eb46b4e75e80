"""Uniform rectangular array geometry, steering vectors and array output.

Elements lie in the xz-plane. Row ``m`` runs along z, column ``n`` along x,
and the flat element index is ``m * cols + n`` (x index fastest). Spacings are
stored in wavelengths, angles in radians.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConfigError, DimensionMismatch

MAX_SPACING = 10.0


@dataclass(frozen=True)
class ArrayGeometry:
    """M x N array with spacings ``dx``, ``dz`` given in wavelengths."""

    rows: int
    cols: int
    dx: float
    dz: float

    def __post_init__(self):
        for name in ("rows", "cols"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}", name)
            object.__setattr__(self, name, int(value))
        for name in ("dx", "dz"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0:
                raise ConfigError(f"{name} must be a positive spacing in wavelengths, got {value!r}", name)
            if value > MAX_SPACING:
                raise ConfigError(f"{name}={value} exceeds {MAX_SPACING} wavelengths", name)
            object.__setattr__(self, name, value)

    @property
    def size(self) -> int:
        return self.rows * self.cols

    def row_index(self) -> np.ndarray:
        return np.arange(self.size) // self.cols

    def col_index(self) -> np.ndarray:
        return np.arange(self.size) % self.cols


@dataclass(frozen=True)
class Direction:
    """Azimuth ``phi`` and zenith ``theta`` in radians, both in [0, pi]."""

    phi: float
    theta: float

    def __post_init__(self):
        for name in ("phi", "theta"):
            value = float(getattr(self, name))
            if not 0.0 <= value <= math.pi:
                raise ConfigError(f"{name}={value!r} outside [0, pi]", name)
            object.__setattr__(self, name, value)

    @classmethod
    def from_degrees(cls, phi_deg: float, theta_deg: float) -> "Direction":
        return cls(math.radians(phi_deg), math.radians(theta_deg))


BROADSIDE = Direction(math.pi / 2, math.pi / 2)


class ElementIndex(NamedTuple):
    m: int
    n: int
    flat: int


def element_index(flat: int, geom: ArrayGeometry) -> ElementIndex:
    if not 0 <= flat < geom.size:
        raise ConfigError(f"flat index {flat} outside [0, {geom.size - 1}]")
    m, n = divmod(int(flat), geom.cols)
    return ElementIndex(m, n, int(flat))


def flat_index(m: int, n: int, geom: ArrayGeometry) -> int:
    if not (0 <= m < geom.rows and 0 <= n < geom.cols):
        raise ConfigError(f"element ({m}, {n}) outside a {geom.rows}x{geom.cols} array")
    return m * geom.cols + n


def spatial_frequencies(geom: ArrayGeometry, direction: Direction) -> tuple[float, float]:
    """Discrete spatial frequencies ``(fx, fz)`` along the x and z axes."""
    fx = geom.dx * math.sin(direction.theta) * math.cos(direction.phi)
    fz = geom.dz * math.cos(direction.theta)
    return fx, fz


def steering_vector(geom: ArrayGeometry, direction: Direction) -> np.ndarray:
    fx, fz = spatial_frequencies(geom, direction)
    phase = 2.0 * np.pi * (geom.col_index() * fx + geom.row_index() * fz)
    return np.exp(1j * phase)


def as_excitation(j, geom: ArrayGeometry) -> np.ndarray:
    j = np.asarray(j, dtype=complex)
    if j.ndim != 1 or j.shape[0] != geom.size:
        raise DimensionMismatch(
            f"excitation of shape {j.shape} does not match a {geom.rows}x{geom.cols} array"
        )
    return j


def array_output(j, geom: ArrayGeometry, direction: Direction) -> complex:
    """Far-field output ``a^H j`` in the given direction."""
    j = as_excitation(j, geom)
    return complex(np.vdot(steering_vector(geom, direction), j))
