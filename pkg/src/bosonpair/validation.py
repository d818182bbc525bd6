"""Input validation helpers shared by the functional API and the estimators."""

import numbers

import numpy as np

from .exceptions import InvalidGridError, InvalidParameterError, PreconditionError


def check_positive(value, name):
    """Return ``value`` as float, raising if it is not finite and > 0."""
    if not isinstance(value, numbers.Real) or not np.isfinite(value) or value <= 0:
        raise InvalidParameterError(f"{name} must be a finite positive number, got {value!r}")
    return float(value)


def check_finite(value, name):
    if not isinstance(value, numbers.Real) or not np.isfinite(value):
        raise InvalidParameterError(f"{name} must be a finite real number, got {value!r}")
    return float(value)


def check_grid_spec(n_points, spacing):
    """Validate a (N, h) pair and return it as (int, float)."""
    if isinstance(n_points, bool) or not isinstance(n_points, numbers.Integral):
        raise InvalidGridError(f"n_points must be an integer, got {n_points!r}")
    n_points = int(n_points)
    if n_points < 3 or n_points % 2 == 0:
        raise InvalidGridError(f"n_points must be odd and >= 3, got {n_points}")
    try:
        spacing = check_positive(spacing, "spacing")
    except InvalidParameterError as exc:
        raise InvalidGridError(str(exc)) from None
    return n_points, spacing


def check_n_states(n_states, upper, name="n_states"):
    if isinstance(n_states, bool) or not isinstance(n_states, numbers.Integral) or n_states < 1:
        raise InvalidParameterError(f"{name} must be a positive integer, got {n_states!r}")
    if n_states > upper:
        raise InvalidParameterError(f"{name}={n_states} exceeds the available {upper} states")
    return int(n_states)


def check_square_state(psi, n_points):
    """Ensure a two-body coefficient array has shape (N, N)."""
    psi = np.asarray(psi, dtype=float)
    if psi.shape != (n_points, n_points):
        raise PreconditionError(
            f"state has shape {psi.shape}, expected ({n_points}, {n_points})"
        )
    return psi


def check_same_grid(grid_a, grid_b):
    if grid_a.n_points != grid_b.n_points or not np.isclose(grid_a.spacing, grid_b.spacing, rtol=0, atol=1e-15):
        raise PreconditionError("states live on different grids")
