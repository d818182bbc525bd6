import numpy as np
import pytest
from conftest import band_for, grid_for
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from bosonpair.estimators import BandSpectrum, BoseHubbardDimer, RSPDMAnalyzer, SingleParticleSolver, TwoBosonSolver
from bosonpair.exceptions import PreconditionError


def test_get_params_and_clone():
    est = TwoBosonSolver(kappa=2.0, g1d=1.0)
    params = est.get_params()
    assert params["kappa"] == 2.0 and params["solver"] == "dense"
    assert clone(est).get_params() == params


def test_single_particle_projection():
    est = SingleParticleSolver(kappa=2.0).fit()
    coeff = est.transform(est.orbitals_.T)
    np.testing.assert_allclose(coeff, np.eye(4), atol=1e-12)
    with pytest.raises(PreconditionError):
        est.transform(np.zeros((1, 5)))


def test_two_boson_solver_matches_functional():
    est = TwoBosonSolver(kappa=5.0, g1d=1.0, n_states=4).fit()
    np.testing.assert_allclose(est.energies_, [s.energy for s in band_for(5.0, 1.0)], atol=1e-12)
    assert [s.band_index for s in est.band_] == [0, 1, 2, 3]


def test_band_spectrum_transform():
    out = BandSpectrum(n_points=21, spacing=0.3).fit().transform([[0.0, 0.0], [1.0, 2.0]])
    assert out.shape == (2, 4)
    with pytest.raises(PreconditionError):
        BandSpectrum().fit().transform([[1.0, 2.0, 3.0]])


def test_rspdm_analyzer():
    state = band_for(0.0, 0.0)[1]
    est = RSPDMAnalyzer().fit(state)
    assert est.entropy_ == pytest.approx(1.0, abs=1e-10)
    assert est.schmidt_number_ == 2
    n = est.transform(np.linspace(-3, 3, 7))
    np.testing.assert_allclose(n, n[::-1], atol=1e-12)
    raw = RSPDMAnalyzer().fit(state.psi)
    assert raw.entropy_ == pytest.approx(est.entropy_)


def test_unfitted_raises():
    with pytest.raises(NotFittedError):
        RSPDMAnalyzer().transform([0.0])


def test_dimer_transform():
    out = BoseHubbardDimer().fit().transform([[1.0, 0.0], [0.0, 0.0], [1e-6, 1.0]])
    assert out[0] == 0.0 and np.isnan(out[1]) and out[2] == pytest.approx(1.0, abs=1e-6)
