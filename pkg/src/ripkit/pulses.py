"""Drive envelopes: nested cosine, truncated Gaussian, DRAG, and spectra.

The complex envelope convention is Omega_c(t) = Omega_cy(t) - i*Omega_cx(t),
with Omega_cy the main pulse and Omega_cx the DRAG quadrature.  The lab-frame
drive is -[Omega_cx cos(w_d t) + Omega_cy sin(w_d t)] * Y_c on the bare
resonator quadrature; that sign/phase convention is fixed here once and the
dynamics module reuses it.
"""

from __future__ import annotations

import dataclasses

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq
from scipy.special import erf, j0

from ripkit.units import RAD_PER_MHZ_NS

#: pulse-area ratio tau/sigma matching the nested-cosine and Gaussian areas
EQUAL_AREA_RATIO_REF = 7.182


@dataclasses.dataclass(frozen=True)
class PulseSpec:
    """Drive pulse: shape family, amplitude, carrier, and timing.

    omega_amp : peak amplitude Omega_c (cyclic MHz).
    omega_d : carrier frequency (cyclic MHz).
    tau : duration (ns); the envelope is zero outside [t0, t0 + tau].
    sigma : Gaussian standard deviation (ns), Gaussian kind only.
    drag_delta : DRAG coefficient Delta_D (cyclic MHz), or None for no DRAG.
    samples : (t, Omega_cy) arrays for the custom kind, cubic-interpolated.
    """

    kind: str = "nested-cosine"
    omega_amp: float = 0.0
    omega_d: float = 0.0
    tau: float = 100.0
    sigma: float | None = None
    t0: float = 0.0
    drag_delta: float | None = None
    samples: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("nested-cosine", "gaussian", "custom-samples"):
            raise ValueError(f"unknown pulse kind {self.kind!r}")
        if self.tau <= 0:
            raise ValueError("pulse duration must be positive")
        if self.kind == "gaussian" and self.sigma is None:
            object.__setattr__(self, "sigma", self.tau / EQUAL_AREA_RATIO_REF)
        if self.kind == "custom-samples":
            if self.samples is None:
                raise ValueError("custom-samples pulse needs samples")
            t, y = self.samples
            object.__setattr__(
                self, "_spline", CubicSpline(np.asarray(t), np.asarray(y))
            )
        if self.drag_delta == 0.0:
            raise ZeroDivisionError("DRAG coefficient Delta_D must be nonzero")

    def with_(self, **changes) -> "PulseSpec":
        return dataclasses.replace(self, **changes)


def _nested_cosine(x):
    return 0.5 * (np.cos(np.pi * np.cos(np.pi * x)) + 1.0)


def _nested_cosine_deriv(x, tau):
    # d/dt of the nested cosine, analytic
    return (
        0.5
        * np.sin(np.pi * np.cos(np.pi * x))
        * np.sin(np.pi * x)
        * np.pi**2
        / tau
    )


def _gaussian(t_rel, sigma, tau):
    # truncated Gaussian, forced to zero at t_rel = +-tau/2 (center t_rel=0)
    floor = np.exp(-(tau**2) / (8.0 * sigma**2))
    return (np.exp(-(t_rel**2) / (2.0 * sigma**2)) - floor) / (1.0 - floor)


def _gaussian_deriv(t_rel, sigma, tau):
    floor = np.exp(-(tau**2) / (8.0 * sigma**2))
    return (
        -(t_rel / sigma**2)
        * np.exp(-(t_rel**2) / (2.0 * sigma**2))
        / (1.0 - floor)
    )


def envelope(pulse: PulseSpec, t) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate (Omega_cy, Omega_cx) in cyclic MHz at times t (ns).

    Outside [t0, t0 + tau] both quadratures are zero.  The DRAG quadrature
    is Omega_c * dP/dt / (2*pi*1e-3 * Delta_D), using the analytic envelope
    derivative.
    """
    t = np.asarray(t, dtype=float)
    inside = (t >= pulse.t0) & (t <= pulse.t0 + pulse.tau)
    if pulse.kind == "nested-cosine":
        x = (t - pulse.t0) / pulse.tau
        p = _nested_cosine(np.where(inside, x, 0.0))
        dp = _nested_cosine_deriv(np.where(inside, x, 0.0), pulse.tau)
    elif pulse.kind == "gaussian":
        t_rel = t - pulse.t0 - pulse.tau / 2.0
        p = _gaussian(np.where(inside, t_rel, pulse.tau / 2.0), pulse.sigma, pulse.tau)
        dp = _gaussian_deriv(
            np.where(inside, t_rel, pulse.tau / 2.0), pulse.sigma, pulse.tau
        )
    else:
        spline = pulse._spline
        p = spline(t) / max(pulse.omega_amp, 1e-300)
        dp = spline(t, 1) / max(pulse.omega_amp, 1e-300)
    omega_cy = np.where(inside, pulse.omega_amp * p, 0.0)
    if pulse.drag_delta is None:
        omega_cx = np.zeros_like(omega_cy)
    else:
        omega_cx = np.where(
            inside,
            pulse.omega_amp * dp / (RAD_PER_MHZ_NS * pulse.drag_delta),
            0.0,
        )
    return omega_cy, omega_cx


def complex_envelope(pulse: PulseSpec, t) -> np.ndarray:
    """Omega_c(t) = Omega_cy - i*Omega_cx."""
    cy, cx = envelope(pulse, t)
    return cy - 1j * cx


def nested_cosine_area(tau: float) -> float:
    """Exact area of the nested cosine: tau * (1 + J0(pi)) / 2."""
    return tau * 0.5 * (1.0 + j0(np.pi))


def _gaussian_area(sigma: float, tau: float) -> float:
    floor = np.exp(-(tau**2) / (8.0 * sigma**2))
    raw = np.sqrt(2.0 * np.pi) * sigma * erf(tau / (2.0 * np.sqrt(2.0) * sigma))
    return float((raw - tau * floor) / (1.0 - floor))


def equal_area_sigma(tau: float) -> float:
    """Gaussian sigma whose truncated area equals the nested cosine's.

    Root of the equal-area condition; the ratio tau/sigma ~ 7.182 is
    duration independent.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    target = nested_cosine_area(tau)
    return brentq(
        lambda s: _gaussian_area(s, tau) - target,
        tau / 20.0,
        tau / 2.0,
        xtol=1e-12 * tau,
        rtol=8.9e-16,
    )


def spectrum(pulse: PulseSpec, f, n_samples: int = 8192) -> np.ndarray:
    """Fourier transform of the complex envelope at cyclic frequencies f (MHz).

    S(f) = integral Omega_c(t) exp(-i 2pi f t 1e-3) dt, integrated on a dense
    uniform grid.  S(0) is the pulse area; with DRAG at Delta_D the spectrum
    has a zero at f = -Delta_D.
    """
    f = np.atleast_1d(np.asarray(f, dtype=float))
    t = np.linspace(pulse.t0, pulse.t0 + pulse.tau, n_samples)
    env = complex_envelope(pulse, t)
    phases = np.exp(-1j * RAD_PER_MHZ_NS * np.outer(f, t))
    out = simpson(phases * env[None, :], x=t, axis=1)
    return out if out.size > 1 else out.reshape(())
