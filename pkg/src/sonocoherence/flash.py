"""Coherence-domain bookkeeping and the flash-duration estimate."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import units
from .errors import DomainError
from .geometry import CollapseState

# Quoted number of coherence domains contributing to the flash. Kept for
# side-by-side reporting only; it does not follow from the shell geometry.
REFERENCE_CD_COUNT = 150


@dataclass(frozen=True)
class FlashParams:
    fluctuation_scale: float = 1e-5  # cm, about one CD wavelength
    interface_speed: float = 1.5e5   # cm/s, wall speed at R*

    def __post_init__(self):
        if not (self.fluctuation_scale > 0 and self.interface_speed > 0):
            raise DomainError("fluctuation_scale and interface_speed must be positive")


def cd_radius(omega0: float = 12.06) -> float:
    """Coherence-domain radius pi/omega0, in cm."""
    if not omega0 > 0:
        raise DomainError("omega0 must be positive")
    return units.inverse_energy_to_length(math.pi / omega0)


def cd_wavelength(omega0: float = 12.06) -> float:
    """Wavelength 2 pi / omega0 of the coherent mode, in cm."""
    return 2.0 * cd_radius(omega0)


def flash_width(f: FlashParams = FlashParams()) -> float:
    """
    Flash duration in ps.

    Parts of a non-spherical wall reach the condensation density at
    different times; the spread is the fluctuation size over the wall speed.
    """
    return f.fluctuation_scale / f.interface_speed * units.PS_PER_S


def cd_count_in_shell(state: CollapseState, omega0: float = 12.06) -> float:
    """Geometric number of CDs fitting in the condensing shell volume 4 pi R*^2 T."""
    shell = 4.0 * math.pi * state.R_star**2 * state.shell_thickness
    r = cd_radius(omega0)
    return shell / (4.0 * math.pi / 3.0 * r**3)
