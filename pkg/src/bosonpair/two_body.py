"""Two contact-interacting bosons in the double well on the product DVR grid.

The Hamiltonian commutes with particle exchange ``(i, j) -> (j, i)`` and with
inversion ``(i, j) -> (N-1-i, N-1-j)``. It is solved in the four blocks of
that symmetry group, so every eigenstate comes out with exact labels and
near-degenerate levels from different blocks never mix.
"""

from dataclasses import dataclass, field, replace

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .dvr import kinetic_matrix, potential_vector
from .exceptions import ClassificationError, ConvergenceError, PreconditionError
from .single import fix_sign
from .validation import check_finite, check_n_states, check_same_grid, check_square_state

SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"
EVEN = "even"
ODD = "odd"
LABEL_TOL = 1e-8

BLOCKS = (
    (SYMMETRIC, EVEN),
    (SYMMETRIC, ODD),
    (ANTISYMMETRIC, EVEN),
    (ANTISYMMETRIC, ODD),
)

# (exchange, parity, rank within that block) for Psi_0 .. Psi_3
BAND_LABELS = (
    (SYMMETRIC, EVEN, 0),
    (ANTISYMMETRIC, ODD, 0),
    (SYMMETRIC, ODD, 0),
    (SYMMETRIC, EVEN, 1),
)


@dataclass(frozen=True)
class TwoBodyState:
    """Two-body eigenstate sampled as ``psi[i, j] = Psi(x_i, x_j)``.

    Normalised so that ``h^2 sum psi^2 = 1``. ``band_index`` is 0..3 for the
    members of the lowest band and ``None`` otherwise.
    """

    energy: float
    psi: np.ndarray = field(repr=False)
    exchange: str
    parity: str
    band_index: object = None
    grid: object = field(default=None, repr=False, compare=False)


def _sign(label):
    return 1 if label in (SYMMETRIC, EVEN) else -1


def exchange_label(psi, tol=LABEL_TOL):
    if np.max(np.abs(psi - psi.T)) <= tol:
        return SYMMETRIC
    if np.max(np.abs(psi + psi.T)) <= tol:
        return ANTISYMMETRIC
    return None


def parity_label(psi, tol=LABEL_TOL):
    mirrored = psi[::-1, ::-1]
    if np.max(np.abs(psi - mirrored)) <= tol:
        return EVEN
    if np.max(np.abs(psi + mirrored)) <= tol:
        return ODD
    return None


def symmetry_basis(n_points, exchange, parity=None):
    """Sparse orthonormal basis (N^2 x d) of one symmetry block.

    With ``parity=None`` only exchange symmetry is imposed.
    """
    n = n_points
    se = _sign(exchange)
    idx = np.arange(n * n)
    i, j = np.divmod(idx, n)
    images = [idx, j * n + i]
    signs = [1.0, float(se)]
    if parity is not None:
        sp_ = _sign(parity)
        images += [(n - 1 - i) * n + (n - 1 - j), (n - 1 - j) * n + (n - 1 - i)]
        signs += [float(sp_), float(se * sp_)]
    orbit_rep = np.min(np.stack(images), axis=0)
    reps = np.unique(orbit_rep)

    rows = np.concatenate([img[reps] for img in images])
    cols = np.tile(np.arange(len(reps)), len(images))
    data = np.repeat(signs, len(reps))
    basis = sp.csc_matrix((data, (rows, cols)), shape=(n * n, len(reps)))
    basis.sum_duplicates()
    basis.eliminate_zeros()
    norms = np.sqrt(np.asarray(basis.multiply(basis).sum(axis=0)).ravel())
    keep = np.flatnonzero(norms > 0.5)
    basis = basis[:, keep] @ sp.diags(1.0 / norms[keep])
    return basis.tocsc()


def build_hamiltonian(grid, kappa, g1d):
    """Sparse N^2 x N^2 Hamiltonian with row-major index ``i*N + j``.

    ``H = T x 1 + 1 x T + V(x1) + V(x2) + (g1d / h) delta_ij``; the last term
    is the quadrature of the contact interaction against DVR functions.
    """
    g1d = check_finite(g1d, "g1d")
    n = grid.n_points
    t = sp.csr_matrix(kinetic_matrix(grid))
    eye = sp.identity(n, format="csr")
    v = potential_vector(grid, kappa).values
    diag = (v[:, None] + v[None, :]).ravel()
    diag[np.arange(n) * (n + 1)] += g1d / grid.spacing
    return (sp.kron(t, eye) + sp.kron(eye, t) + sp.diags(diag)).tocsr()


def block_hamiltonian(grid, kappa, g1d, exchange, parity=None, hamiltonian=None):
    """Dense projection of H onto one symmetry block, plus its basis."""
    if hamiltonian is None:
        hamiltonian = build_hamiltonian(grid, kappa, g1d)
    basis = symmetry_basis(grid.n_points, exchange, parity)
    block = (basis.T @ (hamiltonian @ basis)).toarray()
    return 0.5 * (block + block.T), basis


def _eigen_lowest(block, count, solver, tol):
    count = min(count, block.shape[0])
    if solver == "dense":
        try:
            return scipy.linalg.eigh(block, subset_by_index=[0, count - 1], driver="evr")
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"dense eigensolver failed: {exc}") from exc
    if solver == "lanczos":
        ncv = min(block.shape[0], max(4 * count, 40))
        try:
            vals, vecs = spla.eigsh(block, k=count, which="SA", tol=tol, ncv=ncv, maxiter=20 * block.shape[0])
        except spla.ArpackNoConvergence as exc:
            raise ConvergenceError(f"Lanczos did not converge: {exc}", iterations=20 * block.shape[0]) from exc
        order = np.argsort(vals)
        vals, vecs = vals[order], vecs[:, order]
        resid = np.linalg.norm(block @ vecs - vecs * vals, axis=0)
        if np.any(resid > 1e-9 * max(1.0, np.max(np.abs(vals)))):
            raise ConvergenceError(f"Lanczos residual {resid.max():.2e} above 1e-9")
        return vals, vecs
    raise ValueError(f"unknown solver {solver!r}")


def _to_state(grid, energy, vec, exchange, parity, band_index=None):
    n = grid.n_points
    psi = fix_sign(np.asarray(vec).reshape(n, n) / grid.spacing)
    if exchange_label(psi) != exchange or parity_label(psi) != parity:
        raise ClassificationError(
            f"eigenvector from block ({exchange}, {parity}) fails its symmetry check"
        )
    return TwoBodyState(float(energy), psi, exchange, parity, band_index, grid)


def solve_blocks(grid, kappa, g1d, counts, solver="dense", tol=1e-12):
    """Lowest states of selected symmetry blocks.

    Parameters
    ----------
    counts : dict
        Maps ``(exchange, parity)`` to the number of states wanted.

    Returns
    -------
    dict mapping ``(exchange, parity)`` to a list of TwoBodyState sorted by energy.
    """
    ham = build_hamiltonian(grid, kappa, g1d)
    out = {}
    for key, count in counts.items():
        if count <= 0:
            continue
        block, basis = block_hamiltonian(grid, kappa, g1d, *key, hamiltonian=ham)
        vals, vecs = _eigen_lowest(block, count, solver, tol)
        full = basis @ vecs
        out[key] = [_to_state(grid, e, full[:, k], *key) for k, e in enumerate(vals)]
    return out


def _assign_band(blocks):
    band = []
    for index, (exchange, parity, rank) in enumerate(BAND_LABELS):
        members = blocks.get((exchange, parity), [])
        if len(members) <= rank:
            raise ClassificationError(f"no {exchange}/{parity} state of rank {rank} for band slot {index}")
        band.append(replace(members[rank], band_index=index))
    return band


def lowest_band(grid, kappa, g1d, solver="dense"):
    """The four band states ``(Psi_0, Psi_1, Psi_2, Psi_3)`` in band order.

    Assignment is by symmetry, not raw energy order: ground = lowest
    symmetric-even, first = lowest antisymmetric, second = lowest
    symmetric-odd, third = second symmetric-even.
    """
    counts = {(SYMMETRIC, EVEN): 2, (ANTISYMMETRIC, ODD): 1, (SYMMETRIC, ODD): 1}
    return _assign_band(solve_blocks(grid, kappa, g1d, counts, solver))


def solve_band(grid, kappa, g1d, n_states=4, solver="dense"):
    """Lowest ``n_states`` two-body states sorted by energy, labelled.

    Members of the lowest band carry ``band_index`` 0..3; any other state in
    the returned window has ``band_index=None``.
    """
    n_states = check_n_states(n_states, grid.n_points**2)
    if n_states < 4:
        raise PreconditionError("solve_band needs n_states >= 4")
    blocks = solve_blocks(grid, kappa, g1d, {key: n_states for key in BLOCKS}, solver)
    _assign_band(blocks)  # raises if a band slot is missing
    slots = {(ex, par, rank): index for index, (ex, par, rank) in enumerate(BAND_LABELS)}
    merged = sorted(
        ((s.energy, key, rank, s) for key, states in blocks.items() for rank, s in enumerate(states)),
        key=lambda item: item[0],
    )
    return [replace(s, band_index=slots.get((*key, rank))) for _, key, rank, s in merged[:n_states]]


def overlap(a, b, grid):
    """Quadrature inner product ``h^2 sum a * b``."""
    return float(grid.spacing**2 * np.sum(np.asarray(a) * np.asarray(b)))


def noninteracting_reference(u0, u1, grid):
    """Exchange-symmetrised products of the two lowest orbitals.

    Returns the four states in band order ``(Psi_0, Psi_1, Psi_2, Psi_3)``.
    """
    a, b = np.asarray(u0.orbital), np.asarray(u1.orbital)
    mixed = np.outer(a, b)
    e0, e1 = u0.energy, u1.energy
    return [
        TwoBodyState(2 * e0, np.outer(a, a), SYMMETRIC, EVEN, 0, grid),
        TwoBodyState(e0 + e1, (mixed - mixed.T) / np.sqrt(2.0), ANTISYMMETRIC, ODD, 1, grid),
        TwoBodyState(e0 + e1, (mixed + mixed.T) / np.sqrt(2.0), SYMMETRIC, ODD, 2, grid),
        TwoBodyState(2 * e1, np.outer(b, b), SYMMETRIC, EVEN, 3, grid),
    ]


def fermi_bose_map(state, grid=None):
    """Bosonic Tonks-Girardeau state ``|Psi_A|`` from an antisymmetric state."""
    grid = grid if grid is not None else state.grid
    if state.exchange != ANTISYMMETRIC or exchange_label(state.psi) != ANTISYMMETRIC:
        raise PreconditionError("Fermi-Bose mapping needs an antisymmetric state")
    mapped = np.abs(state.psi)
    mapped = mapped / np.sqrt(overlap(mapped, mapped, grid))
    return TwoBodyState(float("nan"), mapped, SYMMETRIC, EVEN, 0, grid)


def energy_expectation(state, grid, kappa, g1d):
    """``<Psi|H|Psi>`` evaluated with the DVR Hamiltonian."""
    psi = check_square_state(state.psi, grid.n_points)
    ham = build_hamiltonian(grid, kappa, g1d)
    vec = psi.ravel() * grid.spacing
    return float(vec @ (ham @ vec) / (vec @ vec))


def transition_moments(a, b, grid):
    """Dipole ``<a|x1+x2|b>`` and quadrupole ``<a|x1^2+x2^2|b>`` matrix elements."""
    for state in (a, b):
        if state.grid is not None:
            check_same_grid(state.grid, grid)
    pa = check_square_state(a.psi, grid.n_points)
    pb = check_square_state(b.psi, grid.n_points)
    x = grid.points
    dipole = x[:, None] + x[None, :]
    quadrupole = (x * x)[:, None] + (x * x)[None, :]
    h2 = grid.spacing**2
    return float(h2 * np.sum(pa * dipole * pb)), float(h2 * np.sum(pa * quadrupole * pb))
