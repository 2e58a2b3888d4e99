import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import g0_roots
from sonocoherence.coherence import (
    CoherenceParams,
    characteristic_roots,
    critical_mu,
    integrate_amplitude,
    max_growth_rate,
    mu_of_density,
    transition_time,
)
from sonocoherence.errors import BracketError, DomainError


def roots_close(got, want, tol):
    got = sorted(got, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    want = sorted(want, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    return all(abs(a - b) < tol for a, b in zip(got, want))


class TestCharacteristicRoots:
    def test_mu_zero(self):
        rep = characteristic_roots(CoherenceParams(mu=0.0))
        assert roots_close(rep.roots, [0, 0, 2j], 1e-12)
        assert rep.max_growth_rate == 0.0
        assert not rep.is_runaway

    def test_marginal_double_root(self):
        rep = characteristic_roots(CoherenceParams(mu=-0.5))
        assert roots_close(rep.roots, [0, 1j, 1j], 1e-12)
        assert rep.max_growth_rate == 0.0
        assert not rep.is_runaway

    def test_runaway(self):
        rep = characteristic_roots(CoherenceParams(mu=-0.625))
        assert rep.max_growth_rate == pytest.approx(0.5, abs=1e-12)
        assert rep.is_runaway

    def test_analytic_oracle_50_mu(self):
        for mu in np.linspace(-1.0, 0.0, 50):
            rep = characteristic_roots(CoherenceParams(mu=mu))
            assert roots_close(rep.roots, g0_roots(mu), 1e-10), mu

    @pytest.mark.parametrize("g2", [0.0, 1e-4, 1e-2, 0.3])
    @pytest.mark.parametrize("mu", [-1.0, -0.7, -0.5, -0.3, 0.0, 0.4])
    def test_residuals(self, mu, g2):
        p = CoherenceParams(mu=mu, g_squared=g2)
        rep = characteristic_roots(p)
        assert max(rep.residuals) < 1e-10
        coeffs = [0.5j, 1.0, 1j * mu, g2]
        for a in rep.roots:
            assert abs(np.polyval(coeffs, a)) < 1e-10 * max(1, abs(a) ** 3)

    def test_runaway_flag_matches_growth(self):
        for mu in np.linspace(-1, 0.2, 61):
            for g2 in (0, 1e-3, 0.05):
                rep = characteristic_roots(CoherenceParams(mu=mu, g_squared=g2))
                assert rep.is_runaway == (rep.max_growth_rate > 1e-12)

    def test_threshold_sharpness(self):
        for mu in np.linspace(-0.5, 0.0, 100):
            assert max_growth_rate(mu) == 0.0
        for mu in np.linspace(-1.0, -0.5, 101)[:-1]:
            assert max_growth_rate(mu) > 0.0

    @given(st.floats(-2, 1), st.floats(0, 0.5))
    @settings(max_examples=200, deadline=None)
    def test_roots_symmetric_about_imaginary_axis(self, mu, g2):
        # alpha -> -conj(alpha) maps roots to roots
        rep = characteristic_roots(CoherenceParams(mu=mu, g_squared=g2))
        mirrored = [-r.conjugate() for r in rep.roots]
        assert roots_close(rep.roots, mirrored, 1e-7)


class TestCriticalMu:
    def test_g0(self):
        assert critical_mu(0.0, (-1.0, 0.0)) == pytest.approx(-0.5, abs=1e-8)

    def test_small_coupling(self):
        mu = critical_mu(1e-4, (-1.0, 0.0))
        assert abs(mu + 0.5) < 1e-2
        # the bisection result really is the boundary
        assert max_growth_rate(mu - 1e-6, 1e-4) > 0
        assert max_growth_rate(mu + 1e-6, 1e-4) == 0

    def test_no_sign_change(self):
        with pytest.raises(BracketError):
            critical_mu(0.0, (-0.4, 0.0))


class TestMuOfDensity:
    def test_anchor(self):
        assert mu_of_density(1e22) == -0.5

    def test_scaling(self):
        assert mu_of_density(4e22) == pytest.approx(-1.0, rel=1e-15)
        for rho in (1e18, 3e19, 7.7e21):
            assert mu_of_density(4 * rho) == 2 * mu_of_density(rho)

    def test_onset_vapour(self):
        assert mu_of_density(3e19) == pytest.approx(-0.5 * np.sqrt(3e-3), rel=1e-12)
        assert mu_of_density(3e19) == pytest.approx(-0.0274, abs=1e-4)

    def test_rejects_non_positive(self):
        with pytest.raises(DomainError):
            mu_of_density(0.0)


class TestIntegrateAmplitude:
    def test_runaway_rate(self):
        tr = integrate_amplitude(CoherenceParams(mu=-0.625), tau_max=60)
        assert tr.status == "ok"
        assert tr.fitted_growth_exponent == pytest.approx(0.5, abs=1e-3)

    def test_stable(self):
        tr = integrate_amplitude(CoherenceParams(mu=0.0), tau_max=60)
        assert tr.fitted_growth_exponent == pytest.approx(0.0, abs=1e-3)
        assert np.all(np.isfinite(tr.amplitude))

    def test_marginal_subexponential(self):
        tr = integrate_amplitude(CoherenceParams(mu=-0.5), tau_max=300)
        assert abs(tr.fitted_growth_exponent) < 1e-2

    def test_grid_increasing(self):
        tr = integrate_amplitude(CoherenceParams(mu=-0.7), tau_max=5, step=0.05)
        assert np.all(np.diff(tr.tau_grid) > 0)
        assert tr.tau_grid[-1] == pytest.approx(5.0)

    def test_overflow_truncates(self):
        tr = integrate_amplitude(CoherenceParams(mu=-200.0), tau_max=40, step=0.001)
        assert tr.status == "overflow"
        assert np.all(np.isfinite(tr.amplitude))
        assert tr.tau_grid[-1] < 40

    def test_step_warning(self):
        tr = integrate_amplitude(CoherenceParams(mu=-0.625), tau_max=10, step=0.5)
        assert tr.status == "step_warning"

    def test_bad_step(self):
        with pytest.raises(DomainError):
            integrate_amplitude(CoherenceParams(), step=0)
        with pytest.raises(DomainError):
            integrate_amplitude(CoherenceParams(), tau_max=0.05, step=0.01)

    @pytest.mark.parametrize("g2", [0.0, 1e-4, 1e-2])
    @pytest.mark.parametrize("mu", [-1.0, -0.8, -0.6, -0.55, -0.51])
    def test_matches_roots(self, mu, g2):
        growth = max_growth_rate(mu, g2)
        assert growth > 0.05
        tr = integrate_amplitude(CoherenceParams(mu=mu, g_squared=g2), tau_max=max(60.0, 30.0 / growth))
        assert tr.fitted_growth_exponent == pytest.approx(growth, abs=1e-3)


@pytest.mark.parametrize("w0, t", [(12.06, 5.46e-15), (6.03, 1.09e-14), (1.0, 6.58e-14)])
def test_transition_time(w0, t):
    assert transition_time(CoherenceParams(omega0=w0)) == pytest.approx(t, rel=2e-3)
