"""Uniform sinc-DVR grid, kinetic matrix and double-well potential samples."""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .validation import check_finite, check_grid_spec

DEFAULT_N = 61
DEFAULT_H = 0.16
MAP_N = 81
MAP_H = 0.14


@dataclass(frozen=True)
class Grid:
    """Odd, centred 1D mesh ``x_i = (i - (N-1)/2) h``.

    Because N is odd, ``x = 0`` is a grid point and inversion ``x -> -x`` is
    the index reversal ``i -> N-1-i``.
    """

    n_points: int
    spacing: float
    points: np.ndarray = field(repr=False, compare=False)

    @property
    def span(self):
        """Largest |x| on the mesh."""
        return 0.5 * (self.n_points - 1) * self.spacing

    @property
    def spec(self):
        return (self.n_points, self.spacing)


@dataclass(frozen=True)
class PotentialSamples:
    values: np.ndarray = field(repr=False)
    kappa: float


def make_grid(n_points=DEFAULT_N, spacing=DEFAULT_H):
    n_points, spacing = check_grid_spec(n_points, spacing)
    offsets = np.arange(n_points) - (n_points - 1) // 2
    points = offsets * spacing
    points.flags.writeable = False
    return Grid(n_points, spacing, points)


def kinetic_matrix(grid):
    """Colbert-Miller matrix of ``-1/2 d^2/dx^2`` on the infinite uniform grid.

    ``T_ii = pi^2 / (6 h^2)`` and ``T_ij = (-1)^(i-j) / (h^2 (i-j)^2)``.
    """
    n, h = grid.n_points, grid.spacing
    diff = np.subtract.outer(np.arange(n), np.arange(n))
    with np.errstate(divide="ignore"):
        t = np.where(diff % 2 == 0, 1.0, -1.0) / (h * h * diff.astype(float) ** 2)
    np.fill_diagonal(t, np.pi**2 / (6.0 * h * h))
    return t


def double_well(x, kappa):
    """``V(x) = x^4 - kappa x^2`` in scaled units."""
    x = np.asarray(x, dtype=float)
    x2 = x * x
    return x2 * x2 - kappa * x2


def potential_vector(grid, kappa):
    kappa = check_finite(kappa, "kappa")
    values = double_well(grid.points, kappa)
    # exact parity on the symmetric mesh
    values = 0.5 * (values + values[::-1])
    values.flags.writeable = False
    return PotentialSamples(values, kappa)


def well_geometry(kappa):
    """Return ``(x_min, v_min)`` for the double well.

    For ``kappa <= 0`` the potential has a single minimum at the origin and
    ``(0.0, 0.0)`` is returned.
    """
    kappa = check_finite(kappa, "kappa")
    if kappa < 0:
        warnings.warn(f"kappa={kappa} < 0 gives a single well", stacklevel=2)
    if kappa <= 0:
        return 0.0, 0.0
    return float(np.sqrt(kappa / 2.0)), -kappa * kappa / 4.0
