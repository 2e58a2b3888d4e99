"""
Frozen-molecule collapse geometry.

Once the bubble wall turns supersonic at radius R0 the vapour molecules are
swept inward without re-equilibrating: the layer spacing stays at the liquid
value a while the transverse spacing shrinks with the radius,
a_T = a0 * R / R0. Condensation triggers when the density in the compressed
layers, 1 / (a * a_T^2), reaches one third of the liquid density, i.e. when
a_T = sqrt(3) * a.

Lengths are in cm internally; BubbleParams takes micrometres and angstroms.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from . import units
from .errors import DomainError

SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class BubbleParams:
    """
    Bubble state at the onset of supersonic collapse.

    Parameters
    ----------
    R0_um : float
        Radius at supersonic onset, in micrometres.
    rho0 : float
        Vapour number density at onset, in cm^-3. The onset spacing a0 is
        always derived from it.
    a_liquid_A : float
        Intermolecular spacing of liquid water, in angstroms.
    ambient_pressure_atm, vapour_temperature_K : float
        Context only; not used in any formula.
    """

    R0_um: float = 4.5
    rho0: float = 3e19
    a_liquid_A: float = 3.2
    ambient_pressure_atm: float = 1.4
    vapour_temperature_K: float = 383.0

    def __post_init__(self):
        for name in ("R0_um", "rho0", "a_liquid_A"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be a positive finite number, got {v!r}")
        if not self.a0 > self.a_liquid:
            raise DomainError("vapour spacing a0 = rho0^(-1/3) must exceed the liquid spacing")

    @property
    def R0(self) -> float:
        return self.R0_um / units.UM_PER_CM

    @property
    def a_liquid(self) -> float:
        return self.a_liquid_A / units.ANGSTROM_PER_CM

    @property
    def a0(self) -> float:
        return spacing_from_density(self.rho0)


@dataclass(frozen=True)
class CollapseState:
    a0: float               # cm
    R_star: float           # cm
    a_T_star: float         # cm
    rho_star: float         # cm^-3
    shell_thickness: float  # cm
    N_molecules: float
    N_shell: float

    UNITS = {
        "a0": "cm", "R_star": "cm", "a_T_star": "cm", "rho_star": "cm^-3",
        "shell_thickness": "cm", "N_molecules": "1", "N_shell": "1",
    }

    def as_dict(self):
        return asdict(self)


def spacing_from_density(rho: float) -> float:
    """Mean intermolecular spacing rho^(-1/3) in cm for a density in cm^-3."""
    if not rho > 0:
        raise DomainError(f"density must be positive, got {rho!r}")
    return rho ** (-1.0 / 3.0)


def transverse_spacing(R: float, b: BubbleParams) -> float:
    """Transverse spacing a0 * R / R0 at radius R (cm), valid for 0 < R <= R0."""
    if not 0 < R <= b.R0:
        raise DomainError(f"radius {R!r} cm outside (0, R0={b.R0!r}]")
    return b.a0 * R / b.R0


def molecule_count(b: BubbleParams) -> float:
    """Number of vapour molecules in the bubble at onset, (4 pi / 3) R0^3 rho0."""
    return 4.0 * math.pi / 3.0 * b.R0**3 * b.rho0


def critical_density(a_liquid: float) -> float:
    """Condensation density (1/3) a^-3 for a liquid spacing a in cm."""
    if not a_liquid > 0:
        raise DomainError("liquid spacing must be positive")
    return 1.0 / (3.0 * a_liquid**3)


def critical_radius(b: BubbleParams) -> float:
    """
    Radius (cm) at which the transverse spacing has shrunk to sqrt(3) * a.

    Raises
    ------
    DomainError
        If sqrt(3) * a_liquid exceeds a0, i.e. the onset vapour is already
        at or beyond the condensation density.
    """
    a_t_star = SQRT3 * b.a_liquid
    if a_t_star > b.a0 * (1 + 1e-12):
        raise DomainError(
            "critical_radius precondition violated: sqrt(3)*a_liquid "
            f"= {a_t_star:.6g} cm exceeds a0 = {b.a0:.6g} cm")
    return min(b.R0 * a_t_star / b.a0, b.R0)


def shell_thickness(b: BubbleParams) -> float:
    """
    Thickness (cm) of the condensing shell at R*.

    Obtained by equating the molecules originally between R* and R0 with
    those packed at the condensation density into a thin shell of radius R*.
    """
    R0, Rs = b.R0, critical_radius(b)
    return R0**3 / Rs**2 * (b.a_liquid / b.a0) ** 3 * (1.0 - (Rs / R0) ** 3)


def collapse_state(b: BubbleParams) -> CollapseState:
    Rs = critical_radius(b)
    T = shell_thickness(b)
    rho_star = critical_density(b.a_liquid)
    return CollapseState(
        a0=b.a0,
        R_star=Rs,
        a_T_star=SQRT3 * b.a_liquid,
        rho_star=rho_star,
        shell_thickness=T,
        N_molecules=molecule_count(b),
        N_shell=4.0 * math.pi * Rs**2 * T * rho_star,
    )
