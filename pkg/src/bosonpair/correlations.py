"""One-body reduced density matrix, natural orbitals, momentum distribution, entropy."""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConvergenceError
from .validation import check_square_state

OCCUPATION_FLOOR = 1e-14


@dataclass(frozen=True)
class Rspdm:
    """``rho(x_i, x_j)`` on the grid; ``h * trace(rho) = 1``."""

    matrix: np.ndarray = field(repr=False)
    band_index: object = None


@dataclass(frozen=True)
class SpectralDecomposition:
    """Natural occupations (descending, summing to one) and h-orthonormal orbitals.

    ``orbitals[:, j]`` is the j-th natural orbital.
    """

    occupations: np.ndarray
    orbitals: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class MomentumDistribution:
    k: np.ndarray
    n: np.ndarray

    def integral(self):
        return float(np.trapezoid(self.n, self.k))


def rspdm(state, grid):
    """Quadrature of ``rho(x, x') = int Psi(x, y) Psi(x', y) dy``."""
    psi = check_square_state(state.psi, grid.n_points)
    rho = grid.spacing * psi @ psi.T
    return Rspdm(0.5 * (rho + rho.T), getattr(state, "band_index", None))


def natural_orbitals(rho, grid):
    """Diagonalise the h-weighted kernel ``h * rho``.

    Its eigenvalues are the dimensionless populations; eigenvectors are
    rescaled by ``1/sqrt(h)`` so orbitals satisfy ``h sum phi^2 = 1``.
    Populations below ``1e-14`` in magnitude are clamped to zero.
    """
    kernel = grid.spacing * np.asarray(rho.matrix)
    try:
        lam, vecs = np.linalg.eigh(kernel)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"natural-orbital diagonalisation failed: {exc}") from exc
    order = np.argsort(lam)[::-1]
    lam = lam[order]
    lam[np.abs(lam) < OCCUPATION_FLOOR] = 0.0
    return SpectralDecomposition(lam, vecs[:, order] / np.sqrt(grid.spacing))


def default_k_grid(grid, factor=4):
    """Uniform ``k`` over the Nyquist band ``[-pi/h, pi/h]`` with ``factor*N + 1`` points."""
    kmax = np.pi / grid.spacing
    return np.linspace(-kmax, kmax, factor * grid.n_points + 1)


def _fourier_matrix(grid, k):
    return np.exp(-1j * np.outer(k, grid.points))


def momentum_distribution(decomp, grid, k=None):
    """``n(k) = sum_j lambda_j |mu_j(k)|^2`` from the natural orbitals."""
    k = default_k_grid(grid) if k is None else np.asarray(k, dtype=float)
    keep = decomp.occupations > 0
    mu = grid.spacing / np.sqrt(2 * np.pi) * (_fourier_matrix(grid, k) @ decomp.orbitals[:, keep])
    n = np.abs(mu) ** 2 @ decomp.occupations[keep]
    return MomentumDistribution(k, n)


def momentum_distribution_direct(rho, grid, k=None):
    """``n(k) = (2 pi)^-1 h^2 sum_ij rho_ij exp(-i k (x_i - x_j))``."""
    k = default_k_grid(grid) if k is None else np.asarray(k, dtype=float)
    phase = _fourier_matrix(grid, k)
    n = np.einsum("ki,ij,kj->k", phase, np.asarray(rho.matrix), phase.conj()).real
    return MomentumDistribution(k, grid.spacing**2 / (2 * np.pi) * n)


def von_neumann_entropy(decomp):
    """Base-2 entropy of the natural occupations."""
    lam = np.asarray(decomp.occupations if hasattr(decomp, "occupations") else decomp, dtype=float)
    lam = lam[lam > OCCUPATION_FLOOR]
    return float(-np.sum(lam * np.log2(lam))) + 0.0


def schmidt_number(decomp, threshold=1e-6):
    """Number of occupations above ``threshold``."""
    if not 0 < threshold < 1:
        raise ValueError("threshold must lie in (0, 1)")
    return int(np.count_nonzero(np.asarray(decomp.occupations) > threshold))


def state_entropy(state, grid):
    """Shortcut: entropy of a two-body state's natural occupations."""
    return von_neumann_entropy(natural_orbitals(rspdm(state, grid), grid))
