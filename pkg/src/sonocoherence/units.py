"""
Natural-unit conversions (hbar = c = k_B = 1).

Everything inside the package is computed in eV and eV^-1; laboratory units
(cm, nm, s, ps) appear only at the API boundary. Conversion scales are fixed
rather than pulled from a live CODATA table so that every derived number is
reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    """Conversion scales between natural and laboratory units."""

    hbar_c: float = 197.327          # eV nm
    ev_seconds: float = 6.58212e-16  # hbar in eV s
    joule_per_ev: float = 1.602176634e-19

    def __post_init__(self):
        if self.hbar_c <= 0 or self.ev_seconds <= 0 or self.joule_per_ev <= 0:
            raise DomainError("conversion constants must be positive")

    @property
    def hbar_c_cm(self) -> float:
        """hbar*c in eV cm."""
        return self.hbar_c * 1e-7

    @property
    def ev_per_inverse_cm(self) -> float:
        """Energy carried by one inverse centimetre, in eV."""
        return self.hbar_c_cm

    @property
    def two_pi_hbar_c(self) -> float:
        """h*c in eV nm (~1239.84)."""
        return 2.0 * math.pi * self.hbar_c


CONSTANTS = PhysicalConstants()

NM_PER_CM = 1e7
ANGSTROM_PER_CM = 1e8
UM_PER_CM = 1e4
PS_PER_S = 1e12


def _positive(x, what):
    if not x > 0:
        raise DomainError(f"{what} must be positive, got {x!r}")


def length_to_inverse_energy(x_cm: float, c: PhysicalConstants = CONSTANTS) -> float:
    """Length in cm -> natural length in eV^-1."""
    _positive(x_cm, "length")
    return x_cm / c.hbar_c_cm


def inverse_energy_to_length(x: float, c: PhysicalConstants = CONSTANTS) -> float:
    """Natural length in eV^-1 -> cm."""
    _positive(x, "inverse energy")
    return x * c.hbar_c_cm


def time_from_inverse_energy(x: float, c: PhysicalConstants = CONSTANTS) -> float:
    """Natural time in eV^-1 -> seconds."""
    _positive(x, "inverse energy")
    return x * c.ev_seconds


def time_to_inverse_energy(t_s: float, c: PhysicalConstants = CONSTANTS) -> float:
    """Seconds -> natural time in eV^-1."""
    _positive(t_s, "time")
    return t_s / c.ev_seconds


def wavelength_to_energy(lam_nm, c: PhysicalConstants = CONSTANTS):
    """
    Photon energy in eV for a vacuum wavelength in nm.

    Accepts scalars or arrays; every element must be positive.
    """
    lam = np.asarray(lam_nm, dtype=float)
    if lam.size == 0 or not np.all(lam > 0):
        raise DomainError("wavelength must be positive")
    out = c.two_pi_hbar_c / lam
    return float(out) if out.ndim == 0 else out


def energy_to_wavelength(e_ev, c: PhysicalConstants = CONSTANTS):
    """Photon wavelength in nm for an energy in eV (inverse of wavelength_to_energy)."""
    return wavelength_to_energy(e_ev, c)


def ev_to_joule(e_ev: float, c: PhysicalConstants = CONSTANTS) -> float:
    return e_ev * c.joule_per_ev
