"""
Short-time dynamics of the coherent field amplitude inside a coherence domain.

The complex amplitude A(tau), tau = omega0 * t, obeys the third-order linear
equation

    (i/2) A''' + A'' + i mu A' + g^2 A = 0.

Substituting A ~ exp(alpha tau) gives the characteristic cubic

    (i/2) alpha^3 + alpha^2 + i mu alpha + g^2 = 0,

and with alpha = i beta this becomes the *real* cubic

    beta^3 / 2 - beta^2 - mu beta + g^2 = 0.

Growth rates are Re(alpha) = -Im(beta), so the amplitude runs away exactly
when the real cubic has a complex-conjugate pair, which its discriminant
decides without any rounding-level ambiguity at the double root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import units
from .errors import BracketError, DomainError

RUNAWAY_TOL = 1e-12
OVERFLOW = 1e250

# Seed fluctuation: |A| = 1e-6 plus a small free-field (mu = g = 0) oscillation
# at frequency 2. A constant alone is an exact solution at g^2 = 0 and would
# never excite the run-away mode.
DEFAULT_SEED = (1e-6, 1e-8j, -2e-8)


@dataclass(frozen=True)
class CoherenceParams:
    omega0: float = 12.06         # eV
    g_squared: float = 0.0
    mu: float = 0.0
    mu_critical: float = -0.5
    rho_critical: float = 1e22    # cm^-3

    def __post_init__(self):
        if not self.omega0 > 0:
            raise DomainError("omega0 must be positive")
        if not self.g_squared >= 0:
            raise DomainError("g_squared must be non-negative")
        if not self.rho_critical > 0:
            raise DomainError("rho_critical must be positive")


@dataclass(frozen=True)
class StabilityReport:
    roots: tuple            # three complex growth exponents alpha (per tau)
    max_growth_rate: float
    is_runaway: bool
    residuals: tuple        # relative residual of each root


@dataclass
class AmplitudeTrajectory:
    tau_grid: np.ndarray
    amplitude: np.ndarray
    fitted_growth_exponent: float
    status: str = "ok"      # "ok" | "overflow" | "step_warning"
    messages: list = field(default_factory=list)


def _real_cubic(mu, g_squared):
    # coefficients of beta^3/2 - beta^2 - mu beta + g^2, highest first
    return np.array([0.5, -1.0, -float(mu), float(g_squared)])


def _discriminant(c):
    a, b, cc, d = c
    return (18 * a * b * cc * d - 4 * b**3 * d + b**2 * cc**2
            - 4 * a * cc**3 - 27 * a**2 * d**2)


def _companion_eigvals(c):
    c = np.asarray(c, dtype=float)
    monic = c[1:] / c[0]
    n = len(monic)
    comp = np.zeros((n, n))
    comp[0, :] = -monic
    comp[1:, :-1] = np.eye(n - 1)
    return np.linalg.eigvals(comp)


def _polish(c, x, iters=8):
    """Guarded Newton refinement: a step is kept only if it lowers |p(x)|."""
    dc = np.polyder(c)
    px = np.polyval(c, x)
    for _ in range(iters):
        d = np.polyval(dc, x)
        if d == 0:
            break
        xn = x - px / d
        pn = np.polyval(c, xn)
        if abs(pn) >= abs(px):
            break
        x, px = xn, pn
        if px == 0:
            break
    return x


def _real_cubic_roots(c):
    """Roots of a real cubic, classified by the sign of its discriminant."""
    eig = _companion_eigvals(c)
    if _discriminant(c) >= 0:
        # three real roots (possibly repeated)
        return np.array([_polish(c, float(r.real)) for r in np.sort_complex(eig)],
                        dtype=complex)
    # one real root and a conjugate pair: deflate on the real one
    k = int(np.argmin(np.abs(eig.imag)))
    r = _polish(c, float(eig[k].real))
    a = c[0]
    b = c[1] + a * r
    cq = c[2] + b * r
    disc = b * b - 4 * a * cq
    q = math.sqrt(max(-disc, 0.0)) / (2 * a)
    p = -b / (2 * a)
    pair = [_polish(c, complex(p, q)), None]
    pair[1] = pair[0].conjugate()
    return np.array([r, pair[0], pair[1]], dtype=complex)


def characteristic_polynomial(p: CoherenceParams):
    """Complex coefficients of the cubic in alpha, highest power first."""
    return np.array([0.5j, 1.0, 1j * p.mu, p.g_squared], dtype=complex)


def characteristic_roots(p: CoherenceParams) -> StabilityReport:
    """
    Growth exponents of the amplitude equation and the run-away verdict.

    Roots are computed from the companion matrix of the equivalent real cubic,
    refined by Newton steps and mapped back through alpha = i beta.
    """
    c = _real_cubic(p.mu, p.g_squared)
    beta = _real_cubic_roots(c)
    alpha = 1j * beta
    order = np.argsort(-alpha.real, kind="stable")
    alpha = alpha[order]

    poly = characteristic_polynomial(p)
    residuals = []
    for a in alpha:
        scale = max(abs(poly[k]) * abs(a) ** (3 - k) for k in range(4))
        res = abs(np.polyval(poly, a))
        residuals.append(res / scale if scale > 0 else res)

    growth = float(alpha.real.max())
    if abs(growth) <= RUNAWAY_TOL:
        growth = 0.0
    return StabilityReport(
        roots=tuple(complex(a) for a in alpha),
        max_growth_rate=growth,
        is_runaway=growth > RUNAWAY_TOL,
        residuals=tuple(float(r) for r in residuals),
    )


def max_growth_rate(mu: float, g_squared: float = 0.0) -> float:
    return characteristic_roots(CoherenceParams(mu=mu, g_squared=g_squared)).max_growth_rate


def critical_mu(g_squared: float = 0.0, bracket=(-1.0, 0.0), tol: float = 1e-8) -> float:
    """
    Locate the run-away threshold in mu by bisection.

    The bracket must contain exactly one switch between a run-away and a
    stable end point; the returned value is the boundary to within `tol`.

    Raises
    ------
    BracketError
        If both bracket ends are on the same side of the threshold.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise BracketError(f"empty bracket [{lo}, {hi}]")

    def runaway(mu):
        return max_growth_rate(mu, g_squared) > RUNAWAY_TOL

    f_lo, f_hi = runaway(lo), runaway(hi)
    if f_lo == f_hi:
        raise BracketError(
            f"no run-away threshold in [{lo}, {hi}] for g^2={g_squared}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if runaway(mid) == f_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def mu_of_density(rho: float, p: CoherenceParams = CoherenceParams()) -> float:
    """mu scales as sqrt(N/V), anchored so that mu(rho_critical) = mu_critical."""
    if not rho > 0:
        raise DomainError(f"density must be positive, got {rho!r}")
    return p.mu_critical * math.sqrt(rho / p.rho_critical)


def _rk4(f, y0, tau):
    """Classical fixed-step RK4 on a uniform grid; stops at the first non-finite state."""
    y = np.empty((len(tau), len(y0)), dtype=complex)
    y[0] = y0
    h = tau[1] - tau[0]
    for n in range(len(tau) - 1):
        t, yn = tau[n], y[n]
        k1 = f(t, yn)
        k2 = f(t + h / 2, yn + h / 2 * k1)
        k3 = f(t + h / 2, yn + h / 2 * k2)
        k4 = f(t + h, yn + h * k3)
        y[n + 1] = yn + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y[n + 1])) or np.abs(y[n + 1]).max() > OVERFLOW:
            return y[: n + 1], False
    return y, True


def integrate_amplitude(p: CoherenceParams, A0=DEFAULT_SEED, tau_max: float = 60.0,
                        step: float = 0.01) -> AmplitudeTrajectory:
    """
    Integrate the amplitude equation as a first-order system in (A, A', A'').

    The growth exponent is the least-squares slope of log|A| over the last
    third of the run.
    """
    if not step > 0:
        raise DomainError("step must be positive")
    if not tau_max >= 10 * step:
        raise DomainError("tau_max must span at least 10 steps")
    n = int(round(tau_max / step))
    tau = np.linspace(0.0, n * step, n + 1)

    mu, g2 = p.mu, p.g_squared
    M = np.array([[0, 1, 0], [0, 0, 1], [2j * g2, -2 * mu, 2j]], dtype=complex)

    status, messages = "ok", []
    growth = characteristic_roots(p).max_growth_rate
    if growth * step > 0.1:
        status = "step_warning"
        messages.append(f"growth*step = {growth * step:.3g} > 0.1; accuracy degraded")

    y, finished = _rk4(lambda t, y: M @ y, np.asarray(A0, dtype=complex), tau)
    if not finished:
        status = "overflow"
        messages.append(f"|A| overflowed at tau = {tau[len(y)]:.6g}; trajectory truncated")
    tau = tau[: len(y)]
    amp = y[:, 0]

    start = 2 * len(tau) // 3
    logs = np.log(np.maximum(np.abs(amp[start:]), np.finfo(float).tiny))
    if len(logs) >= 2:
        slope = float(np.polyfit(tau[start:], logs, 1)[0])
    else:
        slope = float("nan")
    return AmplitudeTrajectory(tau, amp, slope, status, messages)


def transition_time(p: CoherenceParams = CoherenceParams()) -> float:
    """Condensation time scale 100/omega0, in seconds."""
    return units.time_from_inverse_energy(100.0 / p.omega0)
