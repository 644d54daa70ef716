"""Classical coherent resonator response to the drive.

The slowly-varying amplitude obeys the driven Duffing equation

    d(eta)/dt + i*Delta_cd*eta + i*alpha_c*|eta|^2*eta = -(i/2)*Omega_c(t)

in the drive rotating frame (all rates converted from cyclic MHz).  The
module provides the numerical response, the closed-form linear solution for
a Gaussian drive, the residual-photon leakage measure, and steady states.
"""

from __future__ import annotations

import dataclasses
import warnings

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline
from scipy.special import erf

from ripkit.errors import BistabilityWarning, StepSizeError
from ripkit.pulses import PulseSpec, complex_envelope
from ripkit.units import RAD_PER_MHZ_NS


@dataclasses.dataclass
class ResonatorTrajectory:
    """Sampled coherent response and the drive that produced it.

    t : sample times (ns); eta : complex amplitude; photon number is
    |eta|^2.  residual is the photon number at the end of the pulse.
    """

    t: np.ndarray
    eta: np.ndarray
    delta_cd: float
    alpha_c: float
    pulse: PulseSpec

    def __post_init__(self):
        self._spline_re = CubicSpline(self.t, self.eta.real)
        self._spline_im = CubicSpline(self.t, self.eta.imag)

    @property
    def photon(self) -> np.ndarray:
        return np.abs(self.eta) ** 2

    @property
    def residual(self) -> float:
        """Residual photon number at the pulse end t0 + tau."""
        return float(np.abs(self.at(self.pulse.t0 + self.pulse.tau)) ** 2)

    @property
    def peak_photon(self) -> float:
        return float(np.max(self.photon))

    def at(self, t) -> np.ndarray:
        """Cubic-interpolated eta(t)."""
        return self._spline_re(t) + 1j * self._spline_im(t)

    def eta_dot(self, t) -> np.ndarray:
        return self._spline_re(t, 1) + 1j * self._spline_im(t, 1)

    def envelope_at(self, t) -> np.ndarray:
        return complex_envelope(self.pulse, t)


def constant_trajectory(
    eta: complex, delta_cd: float, tau: float = 1000.0, n: int = 2001
) -> ResonatorTrajectory:
    """Flat trajectory for closed-form checks (constant |eta|^2 drive)."""
    t = np.linspace(0.0, tau, n)
    pulse = PulseSpec(kind="nested-cosine", omega_amp=0.0, tau=tau)
    return ResonatorTrajectory(t, np.full(n, eta, dtype=complex), delta_cd, 0.0, pulse)


def duffing_response(
    delta_cd: float,
    alpha_c: float,
    pulse: PulseSpec,
    horizon: float | None = None,
    n_samples: int = 4001,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> ResonatorTrajectory:
    """Integrate the Duffing response from a cold start eta(0) = 0."""
    t_end = pulse.t0 + pulse.tau if horizon is None else horizon
    if t_end < pulse.t0 + pulse.tau:
        warnings.warn("integration horizon shorter than the pulse", stacklevel=2)
    d = RAD_PER_MHZ_NS * delta_cd
    a = RAD_PER_MHZ_NS * alpha_c

    def rhs(t, y):
        eta = y[0]
        drive = RAD_PER_MHZ_NS * complex_envelope(pulse, t)
        return [
            -1j * d * eta
            - 1j * a * np.abs(eta) ** 2 * eta
            - 0.5j * drive
        ]

    t_eval = np.linspace(0.0, t_end, n_samples)
    sol = solve_ivp(
        rhs,
        (0.0, t_end),
        [0.0 + 0.0j],
        method="DOP853",
        t_eval=t_eval,
        rtol=rtol,
        atol=atol,
        max_step=pulse.tau / 50.0,
    )
    if not sol.success:
        raise StepSizeError(f"Duffing integration failed: {sol.message}", t=sol.t[-1])
    return ResonatorTrajectory(sol.t, sol.y[0], delta_cd, alpha_c, pulse)


def gaussian_linear_analytic(delta_cd, omega_amp, sigma, t_g, t):
    """Closed-form linear response to a non-truncated Gaussian drive.

    Complex-error-function solution with eta(0) = 0; alpha_c is treated
    as zero.
    """
    t = np.asarray(t, dtype=float)
    d = RAD_PER_MHZ_NS * delta_cd
    om = RAD_PER_MHZ_NS * omega_amp
    pref = (
        -0.5j
        * om
        * np.sqrt(np.pi / 2.0)
        * sigma
        * np.exp(-0.5 * d**2 * sigma**2)
        * np.exp(-1j * d * (t - t_g))
    )
    s2 = np.sqrt(2.0) * sigma
    return pref * (
        erf((t - t_g) / s2 - 1j * d * sigma / np.sqrt(2.0))
        + erf(t_g / s2 + 1j * d * sigma / np.sqrt(2.0))
    )


def leakage_measure(theta: float, theta_g: float) -> float:
    """Residual-to-peak photon ratio for a Gaussian drive.

    L = (pi/2) theta^2 exp(-theta^2) |1 + erf((i theta^2 + theta_g)/(sqrt2 theta))|^2
    with theta = Delta_cd*sigma and theta_g = Delta_cd*t_G as angular
    products; valid for theta_g >> theta > 0.
    """
    if theta <= 0:
        raise ValueError("theta must be positive")
    z = (1j * theta**2 + theta_g) / (np.sqrt(2.0) * theta)
    return float(
        0.5 * np.pi * theta**2 * np.exp(-(theta**2)) * np.abs(1.0 + erf(z)) ** 2
    )


def steady_state(delta_cd: float, alpha_c: float, omega_amp: float):
    """Exact and first-order steady states of the driven Kerr oscillator.

    The exact value solves Delta*eta + alpha*|eta|^2*eta = -Omega/2 on the
    branch continuously connected to zero drive; emits BistabilityWarning
    when the photon-number cubic has three positive roots.
    """
    if alpha_c == 0.0:
        eta = -omega_amp / (2.0 * delta_cd)
        return complex(eta), complex(eta)
    coeffs = [
        alpha_c**2,
        2.0 * alpha_c * delta_cd,
        delta_cd**2,
        -(omega_amp**2) / 4.0,
    ]
    roots = np.roots(coeffs)
    real = roots[np.abs(roots.imag) < 1e-9 * np.max(np.abs(roots))].real
    positive = np.sort(real[real >= 0.0])
    if positive.size == 3 and np.all(np.diff(positive) > 1e-12):
        warnings.warn(
            "three positive steady-state photon numbers (bistable regime)",
            BistabilityWarning,
            stacklevel=2,
        )
    n = float(positive[0])  # branch continuous from Omega = 0
    eta_exact = -omega_amp / (2.0 * (delta_cd + alpha_c * n))
    eta_approx = -omega_amp / (
        2.0 * (delta_cd + alpha_c * (omega_amp / (2.0 * delta_cd)) ** 2)
    )
    return complex(eta_exact), complex(eta_approx)
