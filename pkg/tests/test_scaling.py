import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bosonpair.exceptions import InvalidParameterError, SingularityError
from bosonpair.scaling import (
    OLSHANII_C,
    PhysicalParams,
    g1d_from_3d,
    length_unit,
    scale_energy,
    to_scaled,
    unscale_energy,
    unscale_g1d,
    unscale_kappa,
)

positive = st.floats(1e-3, 1e3)


def test_unit_parameters_are_identity():
    p = PhysicalParams(1.0, 1.0, 1.0, 2.5, 3.0)
    s = to_scaled(p)
    assert (s.kappa, s.g1d, s.alpha) == pytest.approx((2.5, 3.0, 1.0), rel=1e-15)
    assert scale_energy(4.0, p) == pytest.approx(4.0)


def test_kappa_scales_with_cube_root_of_A():
    assert to_scaled(PhysicalParams(1.0, 1.0, 8.0, 1.0, 0.0)).kappa == pytest.approx(2.0, rel=1e-12)


def test_energy_unscaling():
    p = PhysicalParams(1.0, 1.0, 8.0, 0.0, 0.0)
    assert length_unit(p) == pytest.approx(2 ** -0.5)
    assert unscale_energy(3.0, p) == pytest.approx(6.0, rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(positive, positive, positive, st.floats(-50, 50), st.floats(-50, 50), st.floats(-100, 100))
def test_round_trip(mass, hbar, A, kappa, g1d, energy):
    p = PhysicalParams(mass, hbar, A, kappa, g1d)
    s = to_scaled(p)
    assert unscale_kappa(s.kappa, p) == pytest.approx(kappa, rel=1e-12, abs=1e-300)
    assert unscale_g1d(s.g1d, p) == pytest.approx(g1d, rel=1e-12, abs=1e-300)
    assert unscale_energy(scale_energy(energy, p), p) == pytest.approx(energy, rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("field", ["mass", "hbar", "A"])
@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan")])
def test_rejects_nonpositive(field, bad):
    kwargs = dict(mass=1.0, hbar=1.0, A=1.0, kappa=0.0, g1d=0.0)
    kwargs[field] = bad
    with pytest.raises(InvalidParameterError):
        PhysicalParams(**kwargs)


def test_zero_scattering_length_gives_zero():
    assert g1d_from_3d(0.0, 1.0, 1.0, 1.0) == 0.0


def test_resonance_raises():
    with pytest.raises(SingularityError):
        g1d_from_3d(1.0 / OLSHANII_C, 1.0, 1.0, 1.0)


def test_hand_evaluation():
    a, d = 0.01, 1.0
    a1d = -(d**2) / (2 * a) * (1 - 1.4603 * a / d)
    expected = -2.0 / a1d
    assert g1d_from_3d(a, d, 1.0, 1.0) == pytest.approx(expected, rel=1e-14)
    assert expected == pytest.approx(0.04 / (1 - 0.014603), rel=1e-14)


def test_odd_in_small_scattering_length():
    small = 1e-6
    plus, minus = g1d_from_3d(small, 1.0, 1.0, 1.0), g1d_from_3d(-small, 1.0, 1.0, 1.0)
    assert np.sign(plus) == -np.sign(minus)
    assert abs(plus) == pytest.approx(abs(minus), rel=1e-4)


def test_constant_is_configurable():
    assert g1d_from_3d(0.1, 1.0, 1.0, 1.0, C=0.0) == pytest.approx(0.4)
