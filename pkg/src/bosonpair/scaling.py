"""Conversion between physical trap parameters and dimensionless units.

Lengths are measured in ``alpha = (hbar^2 / (A m))^(1/6)`` and energies in
``hbar^2 / (m alpha^2)``. Everything downstream of this module works in the
scaled units only.
"""

from dataclasses import dataclass
from typing import Optional

from .exceptions import InvalidParameterError, SingularityError
from .validation import check_finite, check_positive

OLSHANII_C = 1.4603
RESONANCE_RTOL = 1e-12


@dataclass(frozen=True)
class PhysicalParams:
    mass: float
    hbar: float
    A: float
    kappa: float
    g1d: float
    a3d: Optional[float] = None
    d_perp: Optional[float] = None
    omega_perp: Optional[float] = None

    def __post_init__(self):
        check_positive(self.mass, "mass")
        check_positive(self.hbar, "hbar")
        check_positive(self.A, "A")
        check_finite(self.kappa, "kappa")
        check_finite(self.g1d, "g1d")
        if self.d_perp is not None:
            check_positive(self.d_perp, "d_perp")


@dataclass(frozen=True)
class ScaledParams:
    kappa: float
    g1d: float
    alpha: float


def length_unit(p):
    return (p.hbar**2 / (p.A * p.mass)) ** (1.0 / 6.0)


def energy_unit(p):
    """Physical energy corresponding to one scaled unit."""
    return p.hbar**2 / (p.mass * length_unit(p) ** 2)


def to_scaled(p):
    if not isinstance(p, PhysicalParams):
        raise InvalidParameterError("to_scaled expects PhysicalParams")
    alpha = length_unit(p)
    kappa = (p.A * p.mass / p.hbar**2) ** (1.0 / 3.0) * p.kappa
    g1d = p.mass / p.hbar**2 * alpha * p.g1d
    return ScaledParams(kappa, g1d, alpha)


def scale_energy(E, p):
    return E / energy_unit(p)


def unscale_energy(E_bar, p):
    return E_bar * energy_unit(p)


def unscale_kappa(kappa_bar, p):
    return kappa_bar * length_unit(p) ** 2


def unscale_g1d(g_bar, p):
    return g_bar * p.hbar**2 / (p.mass * length_unit(p))


def g1d_from_3d(a3d, d_perp, mass, hbar, C=OLSHANII_C):
    """Quasi-1D contact strength from the 3D scattering length.

    ``a1D = -d_perp^2 / (2 a3D) * (1 - C a3D / d_perp)`` and
    ``g1D = -2 hbar^2 / (m a1D)``.
    """
    d_perp = check_positive(d_perp, "d_perp")
    check_positive(mass, "mass")
    check_positive(hbar, "hbar")
    a3d = check_finite(a3d, "a3d")
    if a3d == 0:
        return 0.0
    factor = 1.0 - C * a3d / d_perp
    if abs(factor) <= RESONANCE_RTOL:
        raise SingularityError(f"a3d={a3d} sits on the confinement-induced resonance")
    a1d = -(d_perp**2) / (2.0 * a3d) * factor
    return -2.0 * hbar**2 / (mass * a1d)
