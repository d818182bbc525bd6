import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bosonpair.exceptions import InvalidParameterError, UndefinedGroundError
from bosonpair.hubbard import (
    HubbardParams,
    analytic_eigensystem,
    dimer_entropy,
    entropy_surface,
    ground_rspdm_occupations,
    hamiltonian_matrix,
)
from bosonpair.oracle import dimer_partial_trace

coupling = st.floats(1e-3, 50)
interaction = st.floats(0, 50)


@settings(max_examples=200, deadline=None)
@given(coupling, interaction, st.floats(-10, 10))
def test_eigenvectors_solve_matrix(J, U, eps):
    p = HubbardParams(J, U, eps)
    es = analytic_eigensystem(p)
    ham = hamiltonian_matrix(p)
    scale = max(1.0, abs(U), abs(J), abs(eps))
    for e, v in zip(es.energies, (es.v_minus, es.v_mid, es.v_plus)):
        np.testing.assert_allclose(ham @ v, e * v, atol=1e-11 * scale)


@settings(max_examples=200, deadline=None)
@given(coupling, interaction)
def test_entropy_bounds(J, U):
    s = dimer_entropy(HubbardParams(J, U))
    assert 0.0 <= s <= 1.0 + 1e-12


def test_limits():
    assert dimer_entropy(HubbardParams(1.0, 0.0)) == 0.0
    assert dimer_entropy(HubbardParams(1e-6, 1.0)) == pytest.approx(1.0, abs=1e-6)
    assert ground_rspdm_occupations(HubbardParams(0.0, 2.0)) == (0.5, 0.5)


def test_degenerate_ground_raises():
    with pytest.raises(UndefinedGroundError):
        ground_rspdm_occupations(HubbardParams(0.0, 0.0))


def test_rejects_nonfinite():
    with pytest.raises(InvalidParameterError):
        HubbardParams(float("inf"), 1.0)


def test_surface_nan_at_undefined_point():
    s = entropy_surface([0.0, 1.0], [0.0, 1.0])
    assert np.isnan(s[0, 0])
    assert s[1, 0] == 0.0
    assert s[0, 1] == 1.0


def test_entropy_decreases_with_hopping():
    s = entropy_surface(np.linspace(0.1, 2, 20), [1.0])[:, 0]
    assert np.all(np.diff(s) < 0)


def test_partial_trace_examples():
    assert dimer_partial_trace([0, 1, 0]) == pytest.approx((0.5, 0.5))
    assert dimer_partial_trace([1, 0, 0]) == pytest.approx((1.0, 0.0))


@settings(max_examples=100)
@given(st.lists(st.floats(-1, 1), min_size=3, max_size=3).filter(lambda v: np.linalg.norm(v) > 1e-3))
def test_partial_trace_preserves_trace(v):
    v = np.asarray(v) / np.linalg.norm(v)
    assert sum(dimer_partial_trace(v)) == pytest.approx(1.0, abs=1e-14)
