"""Estimator-style front ends over the functional solvers.

Physical parameters are constructor hyperparameters; ``fit`` runs the solve
and stores results in trailing-underscore attributes. The functional core in
:mod:`bosonpair.single`, :mod:`bosonpair.two_body`, :mod:`bosonpair.correlations`
and :mod:`bosonpair.hubbard` remains the primary API.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .correlations import (
    momentum_distribution,
    natural_orbitals,
    rspdm,
    schmidt_number,
    von_neumann_entropy,
)
from .dvr import DEFAULT_H, DEFAULT_N, make_grid
from .exceptions import PreconditionError, UndefinedGroundError
from .hubbard import HubbardParams, dimer_entropy
from .single import solve_single
from .two_body import TwoBodyState, lowest_band, solve_band


class SingleParticleSolver(TransformerMixin, BaseEstimator):
    """Lowest single-particle states of ``x^4 - kappa x^2``.

    ``transform`` projects sampled functions (rows of ``X``) onto the fitted
    orbitals, returning expansion coefficients ``h sum u_n f``.
    """

    def __init__(self, n_points=DEFAULT_N, spacing=DEFAULT_H, kappa=0.0, n_states=4):
        self.n_points = n_points
        self.spacing = spacing
        self.kappa = kappa
        self.n_states = n_states

    def fit(self, X=None, y=None):
        self.grid_ = make_grid(self.n_points, self.spacing)
        self.states_ = solve_single(self.grid_, self.kappa, self.n_states)
        self.energies_ = np.array([s.energy for s in self.states_])
        self.orbitals_ = np.column_stack([s.orbital for s in self.states_])
        self.parities_ = [s.parity for s in self.states_]
        return self

    def transform(self, X):
        check_is_fitted(self, "orbitals_")
        X = check_array(X)
        if X.shape[1] != self.grid_.n_points:
            raise PreconditionError(f"expected {self.grid_.n_points} samples per row, got {X.shape[1]}")
        return self.grid_.spacing * X @ self.orbitals_


class TwoBosonSolver(BaseEstimator):
    """Lowest two-body states at one ``(kappa, g1d)``.

    After ``fit``: ``band_`` holds ``(Psi_0, .., Psi_3)`` in band order,
    ``states_`` the lowest ``n_states`` by energy, ``energies_`` the band
    energies. ``predict`` returns band energies for rows ``(kappa, g1d)``.
    """

    def __init__(self, n_points=DEFAULT_N, spacing=DEFAULT_H, kappa=0.0, g1d=0.0, n_states=4, solver="dense"):
        self.n_points = n_points
        self.spacing = spacing
        self.kappa = kappa
        self.g1d = g1d
        self.n_states = n_states
        self.solver = solver

    def fit(self, X=None, y=None):
        self.grid_ = make_grid(self.n_points, self.spacing)
        self.states_ = solve_band(self.grid_, self.kappa, self.g1d, self.n_states, self.solver)
        self.band_ = sorted((s for s in self.states_ if s.band_index is not None), key=lambda s: s.band_index)
        if len(self.band_) < 4:
            # part of the band sits above the requested window
            self.band_ = lowest_band(self.grid_, self.kappa, self.g1d, self.solver)
        self.energies_ = np.array([s.energy for s in self.band_])
        return self

    def predict(self, X):
        X = check_array(X)
        if X.shape[1] != 2:
            raise PreconditionError("predict expects rows of (kappa, g1d)")
        grid = make_grid(self.n_points, self.spacing)
        return np.array([[s.energy for s in lowest_band(grid, k, g, self.solver)] for k, g in X])


class BandSpectrum(TransformerMixin, BaseEstimator):
    """Stateless transformer: rows ``(kappa, g1d)`` to the four band energies."""

    def __init__(self, n_points=DEFAULT_N, spacing=DEFAULT_H, solver="dense"):
        self.n_points = n_points
        self.spacing = spacing
        self.solver = solver

    def fit(self, X=None, y=None):
        self.grid_ = make_grid(self.n_points, self.spacing)
        return self

    def transform(self, X):
        check_is_fitted(self, "grid_")
        X = check_array(X)
        if X.shape[1] != 2:
            raise PreconditionError("transform expects rows of (kappa, g1d)")
        return np.array([[s.energy for s in lowest_band(self.grid_, k, g, self.solver)] for k, g in X])


class RSPDMAnalyzer(TransformerMixin, BaseEstimator):
    """One-body density analysis of a two-body state.

    ``fit`` accepts a :class:`TwoBodyState` or an ``N x N`` sampled
    wavefunction normalised to ``h^2 sum psi^2 = 1``. ``transform(k)``
    returns the momentum distribution at the wave numbers ``k``.
    """

    def __init__(self, n_points=DEFAULT_N, spacing=DEFAULT_H, schmidt_threshold=1e-6):
        self.n_points = n_points
        self.spacing = spacing
        self.schmidt_threshold = schmidt_threshold

    def fit(self, X, y=None):
        self.grid_ = make_grid(self.n_points, self.spacing)
        if not isinstance(X, TwoBodyState):
            X = TwoBodyState(np.nan, check_array(X), "", "")
        self.rspdm_ = rspdm(X, self.grid_)
        decomp = natural_orbitals(self.rspdm_, self.grid_)
        self.decomposition_ = decomp
        self.occupations_ = decomp.occupations
        self.orbitals_ = decomp.orbitals
        self.entropy_ = von_neumann_entropy(decomp)
        self.schmidt_number_ = schmidt_number(decomp, self.schmidt_threshold)
        return self

    def transform(self, X):
        check_is_fitted(self, "decomposition_")
        k = np.asarray(X, dtype=float).ravel()
        return momentum_distribution(self.decomposition_, self.grid_, k).n


class BoseHubbardDimer(TransformerMixin, BaseEstimator):
    """Ground-state entropy of the two-site model for rows ``(J, U)``.

    Rows with an undefined ground state (``J = U = 0``) give NaN.
    """

    def __init__(self, eps=0.0):
        self.eps = eps

    def fit(self, X=None, y=None):
        self.eps_ = float(self.eps)
        return self

    def transform(self, X):
        check_is_fitted(self, "eps_")
        X = check_array(X)
        if X.shape[1] != 2:
            raise PreconditionError("transform expects rows of (J, U)")
        out = np.full(len(X), np.nan)
        for i, (J, U) in enumerate(X):
            try:
                out[i] = dimer_entropy(HubbardParams(J, U, self.eps_))
            except UndefinedGroundError:
                pass
        return out
