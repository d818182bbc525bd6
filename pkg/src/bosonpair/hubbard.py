"""Two bosons on two sites: the exactly solvable Bose-Hubbard dimer.

Fock basis order is ``(|20>, |11>, |02>)``. The hopping enters with ``+J``
and the on-site term is ``U n (n - 1)``, which puts ``2U`` on the doubly
occupied diagonal entries.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import UndefinedGroundError
from .validation import check_finite

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class HubbardParams:
    J: float
    U: float
    eps: float = 0.0

    def __post_init__(self):
        for name in ("J", "U", "eps"):
            check_finite(getattr(self, name), name)


@dataclass(frozen=True)
class DimerEigensystem:
    """Energies ``E_minus <= E_mid <= E_plus`` (for U, J >= 0) and unit Fock vectors.

    ``degenerate`` flags the J = 0 limit, where basis vectors are returned.
    """

    E_minus: float
    E_mid: float
    E_plus: float
    v_minus: np.ndarray
    v_mid: np.ndarray
    v_plus: np.ndarray
    degenerate: bool = False

    @property
    def energies(self):
        return np.array([self.E_minus, self.E_mid, self.E_plus])


def hamiltonian_matrix(p):
    d = 2 * p.eps + 2 * p.U
    t = SQRT2 * p.J
    return np.array([[d, t, 0.0], [t, 2 * p.eps, t], [0.0, t, d]])


def _root(p):
    return np.hypot(p.U, 2 * p.J)


def _u_minus_root(p):
    # U - sqrt(U^2 + 4J^2) without cancellation
    r = _root(p)
    return p.U - r if p.U <= 0 else -4 * p.J**2 / (p.U + r)


def analytic_eigensystem(p):
    r = _root(p)
    e_minus = 2 * p.eps + p.U - r
    e_mid = 2 * p.eps + 2 * p.U
    e_plus = 2 * p.eps + p.U + r
    v_mid = np.array([1.0, 0.0, -1.0]) / SQRT2
    if p.J == 0:
        # decoupled sites; |11> is the ground state for U > 0
        v_11 = np.array([0.0, 1.0, 0.0])
        v_sym = np.array([1.0, 0.0, 1.0]) / SQRT2
        v_minus, v_plus = (v_11, v_sym) if p.U >= 0 else (v_sym, v_11)
        return DimerEigensystem(e_minus, e_mid, e_plus, v_minus, v_mid, v_plus, degenerate=True)
    vecs = []
    for denom in (_u_minus_root(p), p.U + r):
        v = np.array([1.0, 2 * SQRT2 * p.J / denom, 1.0])
        vecs.append(v / np.linalg.norm(v))
    return DimerEigensystem(e_minus, e_mid, e_plus, vecs[0], v_mid, vecs[1])


def ground_rspdm_occupations(p):
    """Closed-form ``(lambda_1, lambda_2)`` of the ground-state one-body density."""
    if p.J == 0 and p.U == 0:
        raise UndefinedGroundError("ground state is degenerate for J = U = 0")
    if p.J == 0:
        return 0.5, 0.5
    d = _u_minus_root(p)
    norm2 = 1.0 / (2.0 + 8 * p.J**2 / d**2)
    common = 1.0 + 4 * p.J**2 / d**2
    lam1 = norm2 * (common - 4 * p.J / d)
    lam2 = norm2 * (common + 4 * p.J / d)
    return float(lam1), float(lam2)


def dimer_entropy(p):
    lam = np.clip(ground_rspdm_occupations(p), 0.0, 1.0)
    lam = lam[lam > 0]
    return float(max(0.0, -np.sum(lam * np.log2(lam)))) + 0.0


def entropy_surface(J_grid, U_grid, eps=0.0):
    """Ground-state entropy ``S[i, j]`` at ``(J_grid[i], U_grid[j])``.

    Points where the ground state is undefined are NaN.
    """
    J_grid = np.atleast_1d(np.asarray(J_grid, dtype=float))
    U_grid = np.atleast_1d(np.asarray(U_grid, dtype=float))
    if J_grid.size == 0 or U_grid.size == 0:
        raise ValueError("J and U grids must be non-empty")
    surface = np.full((J_grid.size, U_grid.size), np.nan)
    for i, J in enumerate(J_grid):
        for j, U in enumerate(U_grid):
            try:
                surface[i, j] = dimer_entropy(HubbardParams(J, U, eps))
            except UndefinedGroundError:
                pass
    return surface
