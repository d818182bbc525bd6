import numpy as np
import pytest
import scipy.linalg
from conftest import FIXTURES

from bosonpair.exceptions import InvalidParameterError
from bosonpair.oracle import (
    TWO_BODY_SPAN,
    OracleReport,
    fd_single_spectrum,
    fd_two_body_band,
    fixture_tables,
    read_fixture,
)


def test_harmonic_hook():
    e = fd_single_spectrum(0.0, potential=lambda x: 0.5 * x**2)
    np.testing.assert_allclose(e, np.arange(4) + 0.5, atol=1e-4)


def test_second_order_convergence():
    e = [fd_single_spectrum(0.0, n_fine=n, n_states=1)[0] for n in (1001, 2001, 4001)]
    assert (e[0] - e[1]) / (e[1] - e[2]) == pytest.approx(4.0, rel=0.05)


def test_refuses_coarse_single_grid():
    with pytest.raises(InvalidParameterError):
        fd_single_spectrum(0.0, n_fine=401)


@pytest.mark.parametrize("n_fine", [100, 151])
def test_refuses_bad_two_body_grid(n_fine):
    with pytest.raises(InvalidParameterError):
        fd_two_body_band(0.0, 0.0, n_fine=n_fine)


def test_separable_pair_sums():
    band = [v for v, _ in fd_two_body_band(2.0, 0.0, n_fine=61)]
    # single-particle FD on the identical box
    x = np.linspace(-TWO_BODY_SPAN, TWO_BODY_SPAN, 61)[1:-1]
    h = x[1] - x[0]
    e = scipy.linalg.eigh_tridiagonal(1 / h**2 + x**4 - 2 * x**2, np.full(len(x) - 1, -0.5 / h**2), eigvals_only=True)
    pairs = sorted([2 * e[0], e[0] + e[1], e[0] + e[1], 2 * e[1], e[0] + e[2]])[:4]
    np.testing.assert_allclose(band, pairs, atol=1e-10)


def test_antisymmetric_blind_to_contact():
    a0 = [v for v, lab in fd_two_body_band(2.0, 0.0, n_fine=61) if lab == "antisymmetric"][0]
    a10 = [v for v, lab in fd_two_body_band(2.0, 10.0, n_fine=61) if lab == "antisymmetric"][0]
    assert a0 == pytest.approx(a10, abs=1e-10)


def test_report_diffs():
    r = OracleReport("E0", 1.001, 1.0, "N=61", "n_fine=101")
    assert r.abs_diff == pytest.approx(1e-3)
    assert r.as_dict()["rel_diff"] == pytest.approx(1e-3)


def test_fixture_provenance():
    for name in ("fd_single.csv", "fd_two_body.csv", "fd_two_body_richardson.csv"):
        meta, rows = read_fixture(FIXTURES / name)
        assert "span" in meta and "n_fine" in meta
        assert rows


def test_band_ordering_fixture():
    _, rows = read_fixture(FIXTURES / "fd_two_body.csv")
    labels = [r["exchange"] for r in rows if float(r["kappa"]) == 5.0 and float(r["g1d"]) == 1.0]
    assert labels == ["symmetric", "antisymmetric", "symmetric", "symmetric"]


@pytest.mark.slow
def test_fixtures_regenerate_identically():
    for name, text in fixture_tables().items():
        assert (FIXTURES / name).read_text(encoding="utf-8") == text, name
