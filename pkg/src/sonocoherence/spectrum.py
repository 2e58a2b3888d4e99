"""
Emission spectrum of the condensing vapour.

The classical current of the coherently oscillating two-level molecules
radiates with spectral shape

    shape(w) = |F(w)|^2 * w^2 / ((w - wR)^2 + Gamma^2 / 4),
    |F(w)|   = exp(-1.4 (w / w0)^2),

a Lorentzian around the Rabi frequency wR cut off at high frequency by the
coherence-domain form factor. The absolute scale is fixed by requiring the
radiated energy per molecule to equal the latent-heat release delta_E; the
literal volume prefactor 3 w0^3 |c1|^2 / (16 pi^3) falls short of that budget
by about six orders of magnitude and is only reported (`raw_prefactor`).

All energies are in eV. Per-molecule spectral densities are dimensionless
(eV per eV); wavelength densities are eV per nm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize, special

from . import units
from .errors import DomainError, QuadratureError

TAIL_RTOL = 1e-10


@dataclass(frozen=True)
class SpectrumParams:
    omega0: float = 12.06
    omegaR: float = 1.1 * 12.06
    gamma: float = 1.5 * 12.06
    c1_squared: float = 1.8
    form_factor_coeff: float = 1.4
    delta_E: float = 0.26
    opacity_cutoff: float = 5.0

    def __post_init__(self):
        for name, v in self.__dict__.items():
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be a positive finite number, got {v!r}")


@dataclass
class SpectrumTable:
    omega: np.ndarray            # eV
    s: np.ndarray                # eV per eV per molecule
    normalization_K: float
    total_energy: float          # eV per molecule
    detected_energy: float       # eV per molecule
    peak_omega: float            # eV
    upper_bound: float = field(default=float("nan"))


def spectral_shape(omega, p: SpectrumParams = SpectrumParams()):
    """Unnormalized line shape; accepts scalars or arrays with omega >= 0."""
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0) or np.any(np.isnan(w)):
        raise DomainError("omega must be non-negative")
    ff2 = np.exp(-2.0 * p.form_factor_coeff * (w / p.omega0) ** 2)
    out = ff2 * w**2 / ((w - p.omegaR) ** 2 + p.gamma**2 / 4.0)
    return float(out) if out.ndim == 0 else out


def tail_bound(w_max: float, p: SpectrumParams) -> float:
    """
    Upper bound on the integral of the shape beyond w_max (> omegaR).

    Past the resonance w^2 / ((w - wR)^2 + Gamma^2/4) is decreasing and at
    most its value at w_max, leaving a pure Gaussian tail.
    """
    if w_max <= p.omegaR:
        return math.inf
    lorentz_max = w_max**2 / ((w_max - p.omegaR) ** 2 + p.gamma**2 / 4.0)
    b = 2.0 * p.form_factor_coeff / p.omega0**2
    return lorentz_max * 0.5 * math.sqrt(math.pi / b) * special.erfc(math.sqrt(b) * w_max)


def _quad(p, lo, hi, rtol):
    val, err, info = integrate.quad(
        spectral_shape, lo, hi, args=(p,), epsabs=0.0, epsrel=rtol,
        limit=200, full_output=1)[:3]
    if err > rtol * abs(val) and err > 1e-300:
        raise QuadratureError(
            f"quadrature on [{lo}, {hi}] reached only {err / abs(val):.2e} relative",
            achieved=err / abs(val))
    return val


def integration_upper_bound(p: SpectrumParams, rtol: float = 1e-10) -> float:
    """
    Upper limit of the energy integral: 3 omega0, pushed out in steps of
    omega0 while the Gaussian tail bound exceeds TAIL_RTOL of the integral.
    """
    w_max = 3.0 * p.omega0
    for _ in range(50):
        if tail_bound(w_max, p) < TAIL_RTOL * _quad(p, 0.0, w_max, rtol):
            return w_max
        w_max += p.omega0
    raise QuadratureError("Gaussian tail bound never dropped below tolerance")


def shape_integral(p: SpectrumParams = SpectrumParams(), rtol: float = 1e-10,
                   upper=None) -> float:
    """Integral of spectral_shape from 0 to `upper` (default: the calibrated bound)."""
    w_max = integration_upper_bound(p, rtol)
    hi = w_max if upper is None else min(float(upper), w_max)
    if hi <= 0:
        return 0.0
    return _quad(p, 0.0, hi, rtol)


def calibrate_normalization(p: SpectrumParams = SpectrumParams(), rtol: float = 1e-10) -> float:
    """
    Amplitude K such that K * integral(shape) equals delta_E per molecule.

    Raises
    ------
    DomainError
        If rtol is outside (0, 1e-4].
    QuadratureError
        If the adaptive quadrature does not converge to rtol.
    """
    if not 0 < rtol <= 1e-4:
        raise DomainError("quadrature tolerance must lie in (0, 1e-4]")
    return p.delta_E / shape_integral(p, rtol)


def detected_energy(p: SpectrumParams = SpectrumParams(), cutoff=None, rtol: float = 1e-10) -> float:
    """Energy per molecule (eV) emitted below the water-opacity cutoff."""
    cutoff = p.opacity_cutoff if cutoff is None else cutoff
    if not cutoff > 0:
        raise DomainError("opacity cutoff must be positive")
    K = calibrate_normalization(p, rtol)
    return K * shape_integral(p, rtol, upper=cutoff)


def peak_omega(p: SpectrumParams = SpectrumParams()) -> float:
    """Location of the spectral maximum, refined from a coarse scan."""
    w_max = 3.0 * p.omega0
    w = np.linspace(0.0, w_max, 3001)
    k = int(np.argmax(spectral_shape(w, p)))
    lo, hi = w[max(k - 1, 0)], w[min(k + 1, len(w) - 1)]
    res = optimize.minimize_scalar(lambda x: -spectral_shape(x, p), bounds=(lo, hi),
                                   method="bounded", options={"xatol": 1e-10})
    return float(res.x)


def per_molecule_spectrum(grid, p: SpectrumParams = SpectrumParams(), rtol: float = 1e-10) -> SpectrumTable:
    """Calibrated per-molecule spectrum dE/domega sampled on `grid` (eV)."""
    w = np.asarray(grid, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise DomainError("grid must be a non-empty 1-d sequence")
    if np.any(np.diff(w) <= 0):
        raise DomainError("grid must be strictly increasing")
    K = calibrate_normalization(p, rtol)
    return SpectrumTable(
        omega=w,
        s=K * spectral_shape(w, p),
        normalization_K=K,
        total_energy=K * shape_integral(p, rtol),
        detected_energy=K * shape_integral(p, rtol, upper=p.opacity_cutoff),
        peak_omega=peak_omega(p),
        upper_bound=integration_upper_bound(p, rtol),
    )


def spectrum_in_wavelength(lambda_grid, p: SpectrumParams = SpectrumParams(), rtol: float = 1e-10):
    """
    Per-molecule dE/dlambda (eV/nm) on a wavelength grid in nm.

    Returns
    -------
    (lam, dE_dlam) : tuple of ndarray
    """
    lam = np.asarray(lambda_grid, dtype=float)
    if lam.ndim != 1 or lam.size == 0 or np.any(lam <= 0):
        raise DomainError("wavelengths must be positive")
    if np.any(np.diff(lam) <= 0):
        raise DomainError("wavelength grid must be strictly increasing")
    K = calibrate_normalization(p, rtol)
    w = np.atleast_1d(units.wavelength_to_energy(lam))
    return lam, K * spectral_shape(w, p) * w**2 / units.CONSTANTS.two_pi_hbar_c


def raw_prefactor(p: SpectrumParams = SpectrumParams()) -> float:
    """Literal volume prefactor 3 w0^3 |c1|^2 / (16 pi^3), in eV^3."""
    return 3.0 * p.omega0**3 * p.c1_squared / (16.0 * math.pi**3)


def raw_energy_per_molecule(p: SpectrumParams = SpectrumParams(), density_cm3: float = 1 / (3.2e-8) ** 3) -> float:
    """
    Energy per molecule (eV) implied by the literal prefactor at a given
    molecular density (default: liquid water, a = 3.2 angstrom).
    """
    density_ev3 = density_cm3 * units.CONSTANTS.hbar_c_cm**3
    return raw_prefactor(p) * shape_integral(p) / density_ev3


def flash_energy_budget(N_shell: float, p: SpectrumParams = SpectrumParams()) -> dict:
    """Total and detected flash energy for N_shell condensing molecules, in eV and J."""
    if not N_shell > 0:
        raise DomainError("molecule count must be positive")
    total = N_shell * p.delta_E
    detected = N_shell * detected_energy(p)
    return {
        "total_eV": total,
        "detected_eV": detected,
        "total_J": units.ev_to_joule(total),
        "detected_J": units.ev_to_joule(detected),
    }
