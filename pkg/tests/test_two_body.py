import numpy as np
import pytest
from conftest import band_for, grid_for, single_for

from bosonpair.dvr import make_grid
from bosonpair.exceptions import PreconditionError
from bosonpair.two_body import (
    ANTISYMMETRIC,
    BAND_LABELS,
    build_hamiltonian,
    energy_expectation,
    exchange_label,
    fermi_bose_map,
    lowest_band,
    noninteracting_reference,
    overlap,
    parity_label,
    solve_band,
    symmetry_basis,
    transition_moments,
)


def test_hamiltonian_symmetric_and_sparse():
    g = make_grid(21, 0.3)
    ham = build_hamiltonian(g, 2.0, 1.0)
    assert abs(ham - ham.T).max() < 1e-12
    assert ham.shape == (441, 441)


@pytest.mark.parametrize("exchange", ["symmetric", "antisymmetric"])
def test_symmetry_basis_orthonormal(exchange):
    for parity in ("even", "odd"):
        b = symmetry_basis(11, exchange, parity).toarray()
        np.testing.assert_allclose(b.T @ b, np.eye(b.shape[1]), atol=1e-14)


def test_block_dimensions_cover_space():
    n = 11
    total = sum(symmetry_basis(n, e, p).shape[1] for e in ("symmetric", "antisymmetric") for p in ("even", "odd"))
    assert total == n * n


def test_band_labels():
    band = band_for(5.0, 1.0)
    for state, (exchange, parity, _) in zip(band, BAND_LABELS):
        assert exchange_label(state.psi) == state.exchange == exchange
        assert parity_label(state.psi) == state.parity == parity


def test_normalisation():
    g = grid_for()
    for s in band_for(2.0, 1.0):
        assert overlap(s.psi, s.psi, g) == pytest.approx(1.0, abs=1e-12)


def test_energy_expectation_matches_eigenvalue():
    g = grid_for()
    s = band_for(2.0, 2.0)[0]
    assert energy_expectation(s, g, 2.0, 2.0) == pytest.approx(s.energy, abs=1e-10)


def test_noninteracting_reference_matches_solver():
    g = grid_for()
    u = single_for(2.0)
    ref = noninteracting_reference(u[0], u[1], g)
    for a, b in zip(ref, band_for(2.0, 0.0)):
        assert a.energy == pytest.approx(b.energy, abs=1e-9)
        assert abs(overlap(a.psi, b.psi, g)) == pytest.approx(1.0, abs=1e-9)


def test_repulsion_raises_symmetric_energies():
    free, strong = band_for(0.0, 0.0), band_for(0.0, 10.0)
    for i in (0, 2, 3):
        assert strong[i].energy > free[i].energy


def test_solve_band_window():
    g = grid_for()
    states = solve_band(g, 5.0, 1.0, 6)
    energies = [s.energy for s in states]
    assert energies == sorted(energies)
    assert sorted(s.band_index for s in states if s.band_index is not None) == [0, 1, 2, 3]


def test_solve_band_needs_four():
    with pytest.raises(PreconditionError):
        solve_band(grid_for(), 0.0, 0.0, 3)


def test_fermi_bose_map_rejects_symmetric():
    with pytest.raises(PreconditionError):
        fermi_bose_map(band_for(0.0, 0.0)[0], grid_for())


def test_fermi_bose_map_output():
    s = band_for(0.0, 0.0)[1]
    assert s.exchange == ANTISYMMETRIC
    mapped = fermi_bose_map(s, grid_for())
    assert exchange_label(mapped.psi) == "symmetric"
    assert overlap(mapped.psi, mapped.psi, grid_for()) == pytest.approx(1.0)


def test_transition_moments_self_parity():
    band = band_for(5.0, 1.0)
    dip, _ = transition_moments(band[0], band[0], grid_for())
    assert abs(dip) < 1e-10


def test_moments_reject_other_grid():
    other = lowest_band(make_grid(21, 0.3), 0.0, 0.0)
    with pytest.raises(PreconditionError):
        transition_moments(other[0], other[1], grid_for())


def test_lanczos_agrees_with_dense():
    g = make_grid(81, 0.14)
    dense = lowest_band(g, 5.0, 5.0, solver="dense")
    lanczos = lowest_band(g, 5.0, 5.0, solver="lanczos")
    for a, b in zip(dense, lanczos):
        assert a.energy == pytest.approx(b.energy, abs=1e-9)


def _swap(v, n):
    return v.reshape(n, n).T.ravel()


def test_exchange_commutes_with_hamiltonian():
    g = make_grid(21, 0.3)
    ham = build_hamiltonian(g, 3.0, 2.0)
    rng = np.random.default_rng(7)
    for sign in (1, -1):
        m = rng.normal(size=(21, 21))
        v = (m + sign * m.T).ravel()
        w = ham @ v
        np.testing.assert_allclose(_swap(w, 21), sign * w, atol=1e-10)


def test_contact_vanishes_on_antisymmetric_vectors():
    g = make_grid(21, 0.3)
    m = np.random.default_rng(3).normal(size=(21, 21))
    v = (m - m.T).ravel()
    diff = (build_hamiltonian(g, 1.0, 7.5) - build_hamiltonian(g, 1.0, 0.0)) @ v
    assert np.all(diff == 0.0)


def test_free_spectrum_is_all_pair_sums():
    from bosonpair.single import solve_single

    g = make_grid(15, 0.4)
    e = np.array([s.energy for s in solve_single(g, 2.0, 15)])
    pairs = np.sort(np.add.outer(e, e).ravel())
    full = np.linalg.eigvalsh(build_hamiltonian(g, 2.0, 0.0).toarray())
    np.testing.assert_allclose(full, pairs, atol=1e-9)


def test_noninteracting_reference_properties():
    g = grid_for()
    u = single_for(5.0)
    ref = noninteracting_reference(u[0], u[1], g)
    np.testing.assert_array_equal(ref[1].psi, -ref[1].psi.T)
    assert ref[1].energy == ref[2].energy == u[0].energy + u[1].energy
    assert abs(overlap(ref[0].psi, band_for(5.0, 0.0)[0].psi, g)) > 1 - 1e-8


def test_mapped_state_energy_is_informational():
    # the kink on x1 = x2 makes this grid sensitive; only a loose bound is meaningful
    g = grid_for()
    s = band_for(0.0, 0.0)[1]
    mapped = fermi_bose_map(s, g)
    np.testing.assert_array_equal(mapped.psi, mapped.psi.T)
    e = energy_expectation(mapped, g, 0.0, 0.0)
    assert s.energy <= e < s.energy + 1.0
