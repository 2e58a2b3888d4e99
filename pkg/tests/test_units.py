import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sonocoherence import units
from sonocoherence.errors import DomainError

positive = st.floats(min_value=1e-30, max_value=1e30, allow_nan=False, allow_infinity=False)


def test_length_to_inverse_energy():
    assert units.length_to_inverse_energy(1.9733e-5) == pytest.approx(1.0, rel=1e-4)
    assert units.length_to_inverse_energy(2 * 1.9733e-5) == pytest.approx(2.0, rel=1e-4)


@pytest.mark.parametrize("bad", [0.0, -1.0])
def test_length_rejects_non_positive(bad):
    with pytest.raises(DomainError):
        units.length_to_inverse_energy(bad)


@pytest.mark.parametrize("lam, energy", [(1239.84, 1.0), (200.0, 6.2), (413.3, 3.0)])
def test_wavelength_to_energy(lam, energy):
    assert units.wavelength_to_energy(lam) == pytest.approx(energy, rel=2e-3)


def test_wavelength_exact_scale():
    assert units.wavelength_to_energy(2 * math.pi * 197.327) == pytest.approx(1.0, rel=1e-15)
    assert units.wavelength_to_energy(1239.84) == pytest.approx(1.0, rel=2e-6)
    with pytest.raises(DomainError):
        units.wavelength_to_energy(0.0)


def test_time_from_inverse_energy():
    assert units.time_from_inverse_energy(1.0) == pytest.approx(6.582e-16, rel=1e-3)
    assert units.time_from_inverse_energy(2.0) == 2 * units.time_from_inverse_energy(1.0)
    t = units.time_from_inverse_energy(100 / 12.06)
    assert t == pytest.approx(5.5e-15, rel=0.01)
    with pytest.raises(DomainError):
        units.time_from_inverse_energy(-1.0)


@given(positive)
def test_length_round_trip(x):
    back = units.inverse_energy_to_length(units.length_to_inverse_energy(x))
    assert back == pytest.approx(x, rel=1e-12)


@given(positive)
def test_time_round_trip(x):
    back = units.time_from_inverse_energy(units.time_to_inverse_energy(x))
    assert back == pytest.approx(x, rel=1e-12)


@given(st.floats(min_value=1e-3, max_value=1e6))
def test_wavelength_round_trip(lam):
    assert units.energy_to_wavelength(units.wavelength_to_energy(lam)) == pytest.approx(lam, rel=1e-12)


def test_wavelength_strictly_decreasing():
    lam = np.linspace(50, 2000, 500)
    assert np.all(np.diff(units.wavelength_to_energy(lam)) < 0)


def test_cd_radius_in_angstrom():
    r = units.inverse_energy_to_length(math.pi / 12.06) * units.ANGSTROM_PER_CM
    assert r == pytest.approx(514.0, abs=0.5)
    assert abs(r - 500) / 500 < 0.05
