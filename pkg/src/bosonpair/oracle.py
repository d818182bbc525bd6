"""Brute-force reference calculations, independent of the DVR code path.

Nothing here imports the DVR kinetic matrix or the symmetry-blocked solver:
the finite-difference Hamiltonians are assembled from scratch on Dirichlet
boxes so that their discretisation error has a different character.
"""

import os
from dataclasses import asdict, dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import __version__
from .exceptions import InvalidParameterError
from .hubbard import HubbardParams, analytic_eigensystem

SINGLE_N_FINE = 2001
SINGLE_SPAN = 10.0
TWO_BODY_N_FINE = 101
TWO_BODY_SPAN = 4.8


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    main_value: float
    oracle_value: float
    main_grid: str
    oracle_grid: str

    @property
    def abs_diff(self):
        return abs(self.main_value - self.oracle_value)

    @property
    def rel_diff(self):
        scale = abs(self.oracle_value)
        return self.abs_diff / scale if scale else float("inf")

    def as_dict(self):
        out = asdict(self)
        out.update(abs_diff=self.abs_diff, rel_diff=self.rel_diff)
        return out


def _box(span, n_fine):
    x = np.linspace(-span, span, n_fine)
    return x, x[1] - x[0]


def fd_single_spectrum(kappa, span=SINGLE_SPAN, n_fine=SINGLE_N_FINE, n_states=4, potential=None):
    """Lowest eigenvalues of the 3-point finite-difference Hamiltonian.

    ``potential`` is an optional callable ``V(x)`` replacing ``x^4 - kappa x^2``.
    """
    if n_fine < 801:
        raise InvalidParameterError("single-particle oracle needs n_fine >= 801")
    x, h = _box(span, n_fine)
    x = x[1:-1]  # Dirichlet walls at +-span
    v = potential(x) if potential is not None else x**4 - kappa * x**2
    diag = 1.0 / h**2 + v
    off = np.full(len(x) - 1, -0.5 / h**2)
    return scipy.linalg.eigh_tridiagonal(diag, off, select="i", select_range=(0, n_states - 1), eigvals_only=True)


def _fd_product(kappa, g1d, span, n_fine):
    x, h = _box(span, n_fine)
    x = x[1:-1]
    n = len(x)
    lap = sp.diags([np.full(n - 1, -0.5), np.ones(n), np.full(n - 1, -0.5)], [-1, 0, 1]) / h**2
    lap = lap + sp.diags(x**4 - kappa * x**2)
    eye = sp.identity(n)
    ham = sp.kron(lap, eye) + sp.kron(eye, lap)
    contact = np.zeros(n * n)
    contact[np.arange(n) * (n + 1)] = g1d / h
    return (ham + sp.diags(contact)).tocsr(), n


def _exchange_projector(n, sign):
    rows, cols, data = [], [], []
    col = 0
    for i in range(n):
        for j in range(i, n):
            if i == j:
                if sign > 0:
                    rows.append(i * n + i)
                    cols.append(col)
                    data.append(1.0)
                    col += 1
                continue
            rows += [i * n + j, j * n + i]
            cols += [col, col]
            data += [np.sqrt(0.5), sign * np.sqrt(0.5)]
            col += 1
    return sp.csc_matrix((data, (rows, cols)), shape=(n * n, col))


def fd_two_body_band(kappa, g1d, n_fine=TWO_BODY_N_FINE, span=TWO_BODY_SPAN, n_states=4):
    """Lowest two-body energies from a product-grid finite-difference model.

    Returns
    -------
    list of (energy, exchange) pairs sorted by energy, ``exchange`` being
    ``"symmetric"`` or ``"antisymmetric"``.
    """
    if n_fine % 2 == 0 or n_fine > 121:
        raise InvalidParameterError("two-body oracle needs odd n_fine <= 121")
    ham, n = _fd_product(kappa, g1d, span, n_fine)
    # shift below the spectrum: twice the box ground energy, minus any attraction
    x, h = _box(span, n_fine)
    x = x[1:-1]
    e0 = scipy.linalg.eigh_tridiagonal(
        1.0 / h**2 + x**4 - kappa * x**2, np.full(n - 1, -0.5 / h**2),
        select="i", select_range=(0, 0), eigvals_only=True,
    )[0]
    floor = 2 * e0 - 1.0 - max(0.0, -g1d) / h
    found = []
    for sign, label in ((1, "symmetric"), (-1, "antisymmetric")):
        proj = _exchange_projector(n, sign)
        block = (proj.T @ ham @ proj).tocsc()
        # fixed start vector keeps regenerated fixtures bit-identical
        start = np.ones(block.shape[0])
        vals = spla.eigsh(block, k=n_states, sigma=floor, which="LM", v0=start, return_eigenvectors=False)
        found += [(float(v), label) for v in vals]
    found.sort()
    return found[:n_states]


def dimer_partial_trace(ground_vector):
    """One-particle density eigenvalues of a dimer state in the (|20>, |11>, |02>) basis.

    The state is rewritten on the product basis ``{|L>, |R>}^2`` and one
    particle is traced out.
    """
    c20, c11, c02 = np.asarray(ground_vector, dtype=float)
    coeff = np.array([[c20, c11 / np.sqrt(2.0)], [c11 / np.sqrt(2.0), c02]])
    rho = coeff @ coeff.T
    lam = np.linalg.eigvalsh(rho)[::-1]
    return float(lam[0]), float(lam[1])


def richardson_two_body_ground(kappa, g1d, n_fine=TWO_BODY_N_FINE, span=TWO_BODY_SPAN):
    """Second-order Richardson estimate ``(4 E(h_f) - E(2 h_f)) / 3`` of the ground energy.

    Returns ``(extrapolated, fine, coarse)``. ``n_fine`` must be odd with
    ``(n_fine + 1) / 2`` also odd so that the coarse box shares the walls.
    """
    coarse_n = (n_fine + 1) // 2
    if coarse_n % 2 == 0:
        raise InvalidParameterError("n_fine must satisfy (n_fine + 1) / 2 odd")
    fine = fd_two_body_band(kappa, g1d, n_fine, span, n_states=1)[0][0]
    coarse = fd_two_body_band(kappa, g1d, coarse_n, span, n_states=1)[0][0]
    return (4 * fine - coarse) / 3, fine, coarse


# --- fixtures ------------------------------------------------------------------

FIXTURE_SINGLE_KAPPAS = (0.0, 2.0, 5.0)
FIXTURE_TWO_BODY_POINTS = ((0.0, 0.0), (0.0, 2.0), (5.0, 0.0), (5.0, 1.0), (5.0, 2.0), (0.0, 100.0))
FIXTURE_DIMER_POINTS = ((1.0, 0.0), (1.0, 1.0), (0.5, 2.0), (1.0, 10.0), (1e-6, 1.0))


def _fixture_text(name, columns, rows, **provenance):
    lines = [f"# fixture: {name}", f"# generator: bosonpair.oracle {__version__}"]
    lines += [f"# {key}: {value}" for key, value in provenance.items()]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def fixture_tables():
    """All oracle fixtures as ``{filename: csv text}``; deterministic, no timestamps."""
    tables = {}
    rows = []
    for kappa in FIXTURE_SINGLE_KAPPAS:
        for i, e in enumerate(fd_single_spectrum(kappa, n_states=6)):
            rows.append((kappa, str(i), e))
    tables["fd_single.csv"] = _fixture_text(
        "fd_single", ("kappa", "level", "energy"), rows,
        n_fine=SINGLE_N_FINE, span=f"+-{SINGLE_SPAN}", boundary="dirichlet",
    )

    rows = []
    for kappa, g1d in FIXTURE_TWO_BODY_POINTS:
        for level, (e, label) in enumerate(fd_two_body_band(kappa, g1d)):
            rows.append((kappa, g1d, str(level), e, label))
    tables["fd_two_body.csv"] = _fixture_text(
        "fd_two_body", ("kappa", "g1d", "level", "energy", "exchange"), rows,
        n_fine=TWO_BODY_N_FINE, span=f"+-{TWO_BODY_SPAN}", boundary="dirichlet",
    )

    rows = []
    for kappa, g1d in FIXTURE_TWO_BODY_POINTS[:5]:
        extrap, fine, coarse = richardson_two_body_ground(kappa, g1d)
        rows.append((kappa, g1d, fine, coarse, extrap))
    tables["fd_two_body_richardson.csv"] = _fixture_text(
        "fd_two_body_richardson", ("kappa", "g1d", "e_fine", "e_coarse", "e_extrapolated"), rows,
        n_fine=TWO_BODY_N_FINE, n_coarse=(TWO_BODY_N_FINE + 1) // 2, span=f"+-{TWO_BODY_SPAN}",
    )

    rows = []
    for J, U in FIXTURE_DIMER_POINTS:
        ground = analytic_eigensystem(HubbardParams(J, U)).v_minus
        rows.append((J, U, *dimer_partial_trace(ground)))
    tables["dimer_partial_trace.csv"] = _fixture_text(
        "dimer_partial_trace", ("J", "U", "lambda1", "lambda2"), rows, eps=0.0,
    )
    return tables


def write_fixtures(out_dir):
    """Write every oracle fixture into ``out_dir``; returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for name, text in fixture_tables().items():
        path = os.path.join(out_dir, name)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        paths.append(path)
    return paths


def read_fixture(path):
    """Parse a fixture CSV into ``(provenance dict, list of row dicts)``."""
    meta, rows, columns = {}, [], None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, _, value = line[1:].partition(":")
                meta[key.strip()] = value.strip()
            elif columns is None:
                columns = line.split(",")
            elif line:
                rows.append(dict(zip(columns, line.split(","))))
    return meta, rows
