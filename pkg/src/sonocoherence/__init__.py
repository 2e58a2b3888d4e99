"""Coherent vapour-liquid condensation model of single-bubble sonoluminescence."""

from .coherence import (
    CoherenceParams,
    StabilityReport,
    characteristic_roots,
    critical_mu,
    integrate_amplitude,
    mu_of_density,
    transition_time,
)
from .errors import BracketError, DomainError, QuadratureError
from .flash import FlashParams, cd_count_in_shell, cd_radius, flash_width
from .geometry import BubbleParams, CollapseState, collapse_state
from .spectrum import (
    SpectrumParams,
    calibrate_normalization,
    detected_energy,
    per_molecule_spectrum,
    spectrum_in_wavelength,
)

__version__ = "0.1.0"
