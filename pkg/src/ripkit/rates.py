"""Closed-form effective gate rates: dispersive JC, multilevel Kerr, and the
approximate ab-initio model, plus static ZZ, calibration and decoherence.

All models produce the effective Hamiltonian coefficients of

    H_eff = w_iz*IZ/2 + w_zi*ZI/2 + w_zz*ZZ/2,   Z = |0><0| - |1><1|,

in cyclic MHz along a resonator trajectory.  The "full ZZ" often quoted by
experiments is twice w_zz.  Second-order rates are built from the pole
response function evaluated at occupation-shifted detunings, which
reproduces the printed adiabatic forms algebraically and extends them to
the non-adiabatic (quadrature) case.
"""

from __future__ import annotations

import dataclasses
import warnings

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from ripkit.errors import (
    PoleError,
    SamplingError,
    UnreachableTargetError,
    ValidityWarning,
)
from ripkit.normal_modes import QuarticCoefficients
from ripkit.pulses import PulseSpec
from ripkit.response import ResonatorTrajectory, duffing_response
from ripkit.units import RAD_PER_MHZ_NS

POLE_GUARD_MHZ = 0.01


@dataclasses.dataclass(frozen=True)
class OperatorDetuning:
    """Occupation-dependent resonator-drive detuning (cyclic MHz).

    at(n_a, n_b, n_c) = delta_cd + 2chi_ac*n_a + 2chi_bc*n_b + alpha_c*n_c.
    """

    delta_cd: complex
    two_chi_ac: float = 0.0
    two_chi_bc: float = 0.0
    alpha_c: float = 0.0

    def at(self, n_a: int = 0, n_b: int = 0, n_c: int = 0) -> complex:
        return (
            self.delta_cd
            + self.two_chi_ac * n_a
            + self.two_chi_bc * n_b
            + self.alpha_c * n_c
        )


@dataclasses.dataclass
class EffectiveRates:
    """Gate-parameter traces along a trajectory, split by origin.

    parts maps e.g. "order1"/"order2"/"static" to (w_iz, w_zi, w_zz)
    triples; the top-level arrays are their sums.
    """

    t: np.ndarray
    omega_iz: np.ndarray
    omega_zi: np.ndarray
    omega_zz: np.ndarray
    model: str
    parts: dict

    @property
    def theta_zz(self) -> float:
        """Accumulated conditional angle (rad): integral of w_zz."""
        return float(RAD_PER_MHZ_NS * np.trapz(self.omega_zz, self.t))

    def theta(self, which: str = "zz") -> float:
        arr = {"iz": self.omega_iz, "zi": self.omega_zi, "zz": self.omega_zz}[which]
        return float(RAD_PER_MHZ_NS * np.trapz(arr, self.t))


def _project_two_qubit(energies: dict) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read off (w_iz, w_zi, w_zz) from computational-state energies.

    energies maps (n_a, n_b) -> array over t of the effective diagonal
    energy; Z = |0><0| - |1><1| fixes the signs.
    """
    e00, e01 = energies[(0, 0)], energies[(0, 1)]
    e10, e11 = energies[(1, 0)], energies[(1, 1)]
    w_iz = 0.5 * (e00 - e01 + e10 - e11)
    w_zi = 0.5 * (e00 + e01 - e10 - e11)
    w_zz = 0.5 * (e00 - e01 - e10 + e11)
    return w_iz, w_zi, w_zz


def _check_sampling(traj: ResonatorTrajectory, detuning: float):
    if detuning == 0.0:
        return
    dt = np.max(np.diff(traj.t))
    period = 1.0 / (abs(detuning) * 1e-3)  # ns per cyclic period
    if dt > period / 20.0:
        raise SamplingError(
            f"trajectory step {dt:.3g} ns too coarse for detuning "
            f"{detuning:.3g} MHz (need >= 20 points per period)"
        )


def _pole_integral(traj: ResonatorTrajectory, detuning: complex) -> np.ndarray:
    """I(t) = integral^t f(t') exp(i*Delta*(t-t')) dt' with f = conj(eta).

    Solved as dI/dt = i*Delta*I + f along the trajectory; a nonzero initial
    amplitude selects the ringdown-free (steady) initial condition.
    """
    d = RAD_PER_MHZ_NS * detuning

    def rhs(t, y):
        return [1j * d * y[0] + np.conj(traj.at(t))]

    f0 = np.conj(traj.eta[0])
    y0 = 1j * f0 / d if abs(f0) > 0 else 0.0 + 0.0j
    sol = solve_ivp(
        rhs,
        (traj.t[0], traj.t[-1]),
        [y0],
        method="DOP853",
        t_eval=traj.t,
        rtol=1e-10,
        atol=1e-12,
        max_step=(traj.t[-1] - traj.t[0]) / 100.0,
    )
    return sol.y[0]


def response_function(
    traj: ResonatorTrajectory,
    detuning,
    occupations: tuple[int, int, int] = (0, 0, 0),
    mode: str = "adiabatic-order-1",
) -> np.ndarray:
    """Drive response A_eta(t) at an occupation-shifted pole (1/MHz units).

    quadrature: Im{ integral eta(t) eta*(t') e^{i Delta (t-t')} dt' },
    evaluated by integrating the auxiliary linear ODE.  The adiabatic modes
    return |eta|^2/Delta and optionally the Im{eta deta*/dt}/Delta^2
    geometric correction.  With these units w_zz formulas keep cyclic MHz.
    """
    if isinstance(detuning, OperatorDetuning):
        delta = detuning.at(*occupations)
    else:
        delta = detuning
    if mode == "quadrature":
        _check_sampling(traj, abs(delta))
        integral = _pole_integral(traj, delta)
        return RAD_PER_MHZ_NS * np.imag(traj.at(traj.t) * integral)
    photon = np.abs(traj.at(traj.t)) ** 2
    a = photon / delta
    if mode == "adiabatic-order-2":
        geom = np.imag(traj.at(traj.t) * np.conj(traj.eta_dot(traj.t)))
        a = a + geom / (RAD_PER_MHZ_NS * delta**2)
    elif mode != "adiabatic-order-1":
        raise ValueError(f"unknown response mode {mode!r}")
    return a


def jc_rates(
    chi_ac: float,
    chi_bc: float,
    delta_cd: float,
    traj: ResonatorTrajectory,
    mode: str = "adiabatic-order-1",
) -> EffectiveRates:
    """Dispersive JC gate rates: scalar pole, two-level qubits.

    w_zz = -4*chi_ac*chi_bc*A_eta with the qubit-state-independent pole at
    delta_cd; first-order shifts are -2*chi_jc*|eta|^2.  chi's are half the
    full dispersive shift.
    """
    photon = np.abs(traj.at(traj.t)) ** 2
    peak = np.sqrt(np.max(photon))
    if max(abs(chi_ac), abs(chi_bc)) * peak >= abs(delta_cd):
        warnings.warn(
            "perturbative validity |chi*eta| < |Delta_cd| violated",
            ValidityWarning,
            stacklevel=2,
        )
    a_eta = response_function(traj, delta_cd, mode=mode)
    w_iz1 = -2.0 * chi_bc * photon
    w_zi1 = -2.0 * chi_ac * photon
    w_zz2 = -4.0 * chi_ac * chi_bc * a_eta
    zero = np.zeros_like(photon)
    return EffectiveRates(
        t=traj.t,
        omega_iz=w_iz1,
        omega_zi=w_zi1,
        omega_zz=w_zz2,
        model="jc",
        parts={
            "order1": (w_iz1, w_zi1, zero),
            "order2": (zero, zero, w_zz2),
        },
    )


def _kerr_energies(chi_ac, chi_bc, detuning: OperatorDetuning, traj, mode):
    photon = np.abs(traj.at(traj.t)) ** 2
    energies1, energies2 = {}, {}
    for occ in ((0, 0), (0, 1), (1, 0), (1, 1)):
        n_a, n_b = occ
        energies1[occ] = (2.0 * chi_ac * n_a + 2.0 * chi_bc * n_b) * photon
        a_occ = response_function(traj, detuning, (n_a, n_b, 0), mode=mode)
        coeff = (
            8.0 * chi_ac * chi_bc * n_a * n_b
            + 4.0 * chi_ac**2 * n_a**2
            + 4.0 * chi_bc**2 * n_b**2
        )
        energies2[occ] = -coeff * a_occ
    return energies1, energies2


def kerr_rates(
    chi_ac: float,
    chi_bc: float,
    delta_cd: float,
    traj: ResonatorTrajectory,
    kappa_c: float | None = None,
    mode: str = "adiabatic-order-1",
) -> EffectiveRates:
    """Multilevel Kerr gate rates with occupation-shifted poles.

    Evaluates the second-order rates at all four computational occupations
    (poles at delta_cd + {0, 2chi_ac, 2chi_bc, 2chi_ac+2chi_bc}); a finite
    kappa_c turns the detunings complex and the real part is returned.
    Raises PoleError within 10 kHz of any pole.
    """
    for pole in (0.0, 2 * chi_ac, 2 * chi_bc, 2 * (chi_ac + chi_bc)):
        if abs(delta_cd + pole) < POLE_GUARD_MHZ:
            raise PoleError(
                f"delta_cd = {delta_cd} MHz within 10 kHz of pole at {-pole} MHz"
            )
    delta = delta_cd - 0.5j * kappa_c if kappa_c else delta_cd
    if kappa_c and mode == "quadrature":
        raise ValueError("quadrature mode with kappa_c is not supported")
    detuning = OperatorDetuning(delta, 2.0 * chi_ac, 2.0 * chi_bc)
    e1, e2 = _kerr_energies(chi_ac, chi_bc, detuning, traj, mode)
    w1 = _project_two_qubit(e1)
    w2 = tuple(np.real(w) for w in _project_two_qubit(e2))
    return EffectiveRates(
        t=traj.t,
        omega_iz=w1[0] + w2[0],
        omega_zi=w1[1] + w2[1],
        omega_zz=w1[2] + w2[2],
        model="kerr",
        parts={"order1": w1, "order2": w2},
    )


# --- approximate ab-initio model -------------------------------------------

def _lambda_traces(coeffs: QuarticCoefficients, traj: ResonatorTrajectory):
    """Time-dependent couplings of the normal-ordered quartic interaction.

    Returns dicts keyed by mode index (0=a, 1=b, 2=c):
      lam_drive[j](t)     for the e^{i w_d t} j-hat terms (qubits only),
      lam_exch[(j,k)](t)  for j^dag k exchange,
      lam_nq[(j,k)](t)    for the e^{i w_d t} n_j k-hat terms.
    """
    t = traj.t
    eta = traj.at(t)
    eta_c = np.conj(eta)
    photon = np.abs(eta) ** 2
    omega_env = traj.envelope_at(t)
    lam_drive = {
        j: (
            coeffs.lambda_drive[j, 0] * omega_env
            + coeffs.lambda_drive[j, 1] * eta_c
            + coeffs.lambda_drive[j, 2] * photon * eta_c
        )
        for j in range(2)
    }
    lam_exch = {}
    for j in range(3):
        for k in range(3):
            if j == k:
                continue
            lam_exch[(j, k)] = (
                coeffs.lambda_exchange[j, k, 0]
                + coeffs.lambda_exchange[j, k, 1] * photon
            ) * np.ones_like(eta)
    lam_nq = {
        (j, k): coeffs.lambda_nq[j, k] * eta_c
        for j in range(3)
        for k in range(3)
    }
    return lam_drive, lam_exch, lam_nq


def _occ_frequencies(coeffs: QuarticCoefficients, occ):
    """Operator-valued mode frequencies evaluated at an occupation tuple."""
    n = np.asarray(occ, dtype=float)
    omega = coeffs.omega_dressed.copy()
    out = np.empty(3)
    for j in range(3):
        out[j] = omega[j] + coeffs.alpha[j] * n[j]
        for k in range(3):
            if k != j:
                out[j] += coeffs.chi2[j, k] * n[k]
    return out


def _abinitio_energy(coeffs, traj, occ, omega_d, mode):
    """Effective diagonal energy (MHz) of occupation occ along traj.

    Sums the first-order dynamic shifts and every second-order adiabatic
    mixing: direct drive, drive/number-quadrature, exchange, and
    number-quadrature pairs, all with operator-valued detunings evaluated
    at occ.  In quadrature mode the pole kernels are integrated along the
    trajectory instead of using 1/Delta.
    """
    n_a, n_b, n_c = occ
    n = (n_a, n_b, n_c)
    t = traj.t
    photon = np.abs(traj.at(t)) ** 2
    lam_drive, lam_exch, lam_nq = _lambda_traces(coeffs, traj)
    omega_occ = _occ_frequencies(coeffs, n)
    delta_d = {j: omega_occ[j] - omega_d for j in range(3)}
    alpha = coeffs.alpha
    chi2 = coeffs.chi2

    if mode == "quadrature":
        def plus(a_t, b_t, delta):
            kernel = _pole_integral_generic(traj, a_t, +delta)
            return -RAD_PER_MHZ_NS * np.imag(np.conj(b_t) * kernel)

        def minus(a_t, b_t, delta):
            kernel = _pole_integral_generic(traj, a_t, -delta)
            return -RAD_PER_MHZ_NS * np.imag(np.conj(b_t) * kernel)
    else:
        def plus(a_t, b_t, delta):
            return -np.real(a_t * np.conj(b_t)) / delta

        def minus(a_t, b_t, delta):
            return np.real(a_t * np.conj(b_t)) / delta

    energy = (
        coeffs.delta_d[0] * photon * n_a
        + coeffs.delta_d[1] * photon * n_b
        + coeffs.delta_d[2] * photon * n_c
    )

    # second-order dynamic frequency shifts delta_j^(2) * n_j
    def delta2(j, other):
        lj = lam_drive[j]
        out = plus(lj, lj, delta_d[j]) - plus(lj, lj, delta_d[j] - alpha[j])
        out += 2.0 * (
            plus(lj, lam_nq[(j, j)], delta_d[j])
            + plus(lj, lam_nq[(j, j)], delta_d[j] - alpha[j])
        )
        out += 2.0 * plus(lam_drive[other], lam_nq[(j, other)], delta_d[other])
        d_jo = omega_occ[j] - omega_occ[other]
        ex = lam_exch[(min(j, other), max(j, other))]
        if j < other:
            out += minus(ex, ex, d_jo - alpha[j] + chi2[j, other])
        else:
            out += minus(np.conj(ex), np.conj(ex), -(omega_occ[other] - omega_occ[j]) - alpha[j] + chi2[j, other])
        d_jc = omega_occ[j] - omega_occ[2]
        exc = lam_exch[(j, 2)]
        out += minus(exc, exc, d_jc - alpha[j] + chi2[j, 2])
        return out

    # resonator dynamic shift delta_c^(2) * n_c
    def delta2_c():
        out = 2.0 * plus(lam_drive[0], lam_nq[(2, 0)], delta_d[0])
        out += 2.0 * plus(lam_drive[1], lam_nq[(2, 1)], delta_d[1])
        for j in range(2):
            d_jc = omega_occ[j] - omega_occ[2]
            ex = lam_exch[(j, 2)]
            out += minus(np.conj(ex), np.conj(ex), -d_jc - alpha[2] + chi2[j, 2])
        return out

    # anharmonic shifts alpha_j^(2)/2 * n_j^2 and beta_j^(2) * n_j^3
    def alpha2(j):
        lj = lam_drive[j] if j < 2 else np.zeros_like(photon, dtype=complex)
        out = 4.0 * (
            plus(lj, lam_nq[(j, j)], delta_d[j])
            - plus(lj, lam_nq[(j, j)], delta_d[j] - alpha[j])
        )
        out += 2.0 * plus(lam_nq[(j, j)], lam_nq[(j, j)], delta_d[j])
        for k in range(3):
            if k != j:
                out += 2.0 * plus(lam_nq[(j, k)], lam_nq[(j, k)], delta_d[k])
        return out

    def beta2(j):
        return plus(lam_nq[(j, j)], lam_nq[(j, j)], delta_d[j]) - plus(
            lam_nq[(j, j)], lam_nq[(j, j)], delta_d[j] - alpha[j]
        )

    # chi_jk^(2) * 2 n_j n_k; j < k
    def chi2_ab():
        out = plus(lam_nq[(0, 2)], lam_nq[(1, 2)], delta_d[2])
        out += plus(lam_nq[(0, 0)], lam_nq[(1, 0)], delta_d[0]) + plus(
            lam_nq[(0, 0)], lam_nq[(1, 0)], delta_d[0] - alpha[0]
        )
        out += plus(lam_nq[(1, 1)], lam_nq[(0, 1)], delta_d[1]) + plus(
            lam_nq[(1, 1)], lam_nq[(0, 1)], delta_d[1] - alpha[1]
        )
        out += plus(lam_drive[0], lam_nq[(1, 0)], delta_d[0]) - plus(
            lam_drive[0], lam_nq[(1, 0)], delta_d[0] - alpha[0]
        )
        out += plus(lam_drive[1], lam_nq[(0, 1)], delta_d[1]) - plus(
            lam_drive[1], lam_nq[(0, 1)], delta_d[1] - alpha[1]
        )
        d_ab = omega_occ[0] - omega_occ[1]
        ex = lam_exch[(0, 1)]
        out += 0.5 * (
            minus(ex, ex, d_ab - alpha[0] + chi2[0, 1])
            - minus(ex, ex, d_ab + alpha[1] - chi2[0, 1])
        )
        return out

    def chi2_jc(j):
        other = 1 - j
        out = plus(lam_nq[(j, other)], lam_nq[(2, other)], delta_d[other])
        out += plus(lam_nq[(j, j)], lam_nq[(2, j)], delta_d[j]) + plus(
            lam_nq[(j, j)], lam_nq[(2, j)], delta_d[j] - alpha[j]
        )
        out += plus(lam_nq[(2, 2)], lam_nq[(j, 2)], delta_d[2]) + plus(
            lam_nq[(2, 2)], lam_nq[(j, 2)], delta_d[2] - alpha[2]
        )
        out += plus(lam_drive[j], lam_nq[(2, j)], delta_d[j]) - plus(
            lam_drive[j], lam_nq[(2, j)], delta_d[j] - alpha[j]
        )
        d_jc = omega_occ[j] - omega_occ[2]
        ex = lam_exch[(j, 2)]
        out += 0.5 * (
            minus(ex, ex, d_jc - alpha[j] + chi2[j, 2])
            - minus(ex, ex, d_jc + alpha[2] - chi2[j, 2])
        )
        return out

    # chi_jjk^(2) * n_j^2 n_k and the three-body chi_abc^(2) * n_a n_b n_c
    def chi2_jjk(j, k):
        out = 2.0 * (
            plus(lam_nq[(j, j)], lam_nq[(k, j)], delta_d[j])
            - plus(lam_nq[(j, j)], lam_nq[(k, j)], delta_d[j] - alpha[j])
        )
        out += plus(lam_nq[(j, k)], lam_nq[(j, k)], delta_d[k]) - plus(
            lam_nq[(j, k)], lam_nq[(j, k)], delta_d[k] - alpha[k]
        )
        return out

    def chi2_abc():
        out = 2.0 * (
            plus(lam_nq[(1, 0)], lam_nq[(2, 0)], delta_d[0])
            - plus(lam_nq[(1, 0)], lam_nq[(2, 0)], delta_d[0] - alpha[0])
        )
        out += 2.0 * (
            plus(lam_nq[(0, 1)], lam_nq[(2, 1)], delta_d[1])
            - plus(lam_nq[(0, 1)], lam_nq[(2, 1)], delta_d[1] - alpha[1])
        )
        out += 2.0 * (
            plus(lam_nq[(0, 2)], lam_nq[(1, 2)], delta_d[2])
            - plus(lam_nq[(0, 2)], lam_nq[(1, 2)], delta_d[2] - alpha[2])
        )
        return out

    if n_a:
        energy = energy + n_a * delta2(0, 1) + 0.5 * n_a**2 * alpha2(0) + n_a**3 * beta2(0)
    if n_b:
        energy = energy + n_b * delta2(1, 0) + 0.5 * n_b**2 * alpha2(1) + n_b**3 * beta2(1)
    if n_c:
        energy = energy + n_c * delta2_c() + 0.5 * n_c**2 * alpha2(2) + n_c**3 * beta2(2)
    if n_a and n_b:
        energy = energy + 2.0 * n_a * n_b * chi2_ab()
        energy = energy + n_a**2 * n_b * chi2_jjk(0, 1) + n_a * n_b**2 * chi2_jjk(1, 0)
    if n_a and n_c:
        energy = energy + 2.0 * n_a * n_c * chi2_jc(0)
        energy = energy + n_a**2 * n_c * chi2_jjk(0, 2) + n_a * n_c**2 * chi2_jjk(2, 0)
    if n_b and n_c:
        energy = energy + 2.0 * n_b * n_c * chi2_jc(1)
        energy = energy + n_b**2 * n_c * chi2_jjk(1, 2) + n_b * n_c**2 * chi2_jjk(2, 1)
    if n_a and n_b and n_c:
        energy = energy + n_a * n_b * n_c * chi2_abc()
    return energy


def _pole_integral_generic(traj, f_t, detuning):
    """integral^t f(t') exp(i*Delta*(t-t')) dt' for sampled complex f."""
    from scipy.interpolate import CubicSpline

    sp_re = CubicSpline(traj.t, np.real(f_t))
    sp_im = CubicSpline(traj.t, np.imag(f_t))
    d = RAD_PER_MHZ_NS * detuning

    def rhs(t, y):
        return [1j * d * y[0] + sp_re(t) + 1j * sp_im(t)]

    f0 = f_t[0]
    y0 = 1j * f0 / d if abs(f0) > 0 else 0.0 + 0.0j
    sol = solve_ivp(
        rhs,
        (traj.t[0], traj.t[-1]),
        [y0],
        method="DOP853",
        t_eval=traj.t,
        rtol=1e-10,
        atol=1e-12,
        max_step=(traj.t[-1] - traj.t[0]) / 100.0,
    )
    return sol.y[0]


def abinitio_rates(
    coeffs: QuarticCoefficients,
    traj: ResonatorTrajectory,
    occupations: tuple[int, int, int] | None = None,
    mode: str = "adiabatic",
) -> EffectiveRates | np.ndarray:
    """Approximate ab-initio gate rates from the quartic coefficients.

    The drive frequency is inferred from the trajectory detuning and the
    dressed resonator frequency.  With explicit occupations the raw
    effective energy trace is returned instead of projected rates.
    Raises PoleError when an operator-valued denominator vanishes.
    """
    omega_d = coeffs.omega_dressed[2] - traj.delta_cd
    eff_mode = "quadrature" if mode == "quadrature" else "adiabatic"
    ratio = _validity_ratio(coeffs, traj, omega_d)
    if ratio >= 1.0:
        warnings.warn(
            f"perturbative validity |lambda/Delta| < 1 violated (max {ratio:.2f})",
            ValidityWarning,
            stacklevel=2,
        )
    if occupations is not None:
        _guard_poles(coeffs, occupations, omega_d)
        return _abinitio_energy(coeffs, traj, occupations, omega_d, eff_mode)
    energies = {}
    for occ in ((0, 0), (0, 1), (1, 0), (1, 1)):
        _guard_poles(coeffs, occ + (0,), omega_d)
        energies[occ] = _abinitio_energy(
            coeffs, traj, (occ[0], occ[1], 0), omega_d, eff_mode
        )
    w_iz, w_zi, w_zz = _project_two_qubit(energies)
    return EffectiveRates(
        t=traj.t,
        omega_iz=w_iz,
        omega_zi=w_zi,
        omega_zz=w_zz,
        model="abinitio",
        parts={"total": (w_iz, w_zi, w_zz)},
    )


def _guard_poles(coeffs, occ, omega_d):
    omega_occ = _occ_frequencies(coeffs, occ)
    alpha = coeffs.alpha
    denominators = []
    for j in range(3):
        d = omega_occ[j] - omega_d
        denominators += [d, d - alpha[j]]
    for j in range(3):
        for k in range(j + 1, 3):
            d = omega_occ[j] - omega_occ[k]
            denominators += [
                d - alpha[j] + coeffs.chi2[j, k],
                d + alpha[k] - coeffs.chi2[j, k],
            ]
    for d in denominators:
        if abs(d) < POLE_GUARD_MHZ:
            raise PoleError(
                f"operator-valued denominator {d:.4g} MHz vanishes at occ {occ}"
            )


def _validity_ratio(coeffs, traj, omega_d):
    peak_eta = np.sqrt(traj.peak_photon)
    lam = max(
        abs(coeffs.lambda_nq[0, 2]) * peak_eta,
        abs(coeffs.lambda_nq[1, 2]) * peak_eta,
    )
    delta = abs(coeffs.omega_dressed[2] - omega_d)
    return lam / max(delta, 1e-12)


def static_zz(
    device,
    omega_dressed: tuple[float, float],
    alphas: tuple[float, float],
) -> tuple[float, float]:
    """Static qubit-qubit exchange J and zero-drive ZZ rate.

    J is built from bare harmonic frequencies and couplings; the ZZ rate
    uses dressed qubit frequencies and anharmonicities and vanishes for
    two-level qubits (alpha -> 0 limit) or decoupled devices.
    """
    if device.n_qubits != 2:
        raise ValueError("static ZZ needs a two-qubit device")
    wa, wb = (t.omega_bar for t in device.transmons)
    wc = device.omega_c
    ga, gb = device.g
    sum_ab, diff_ac, diff_bc = wa + wb, wa - wc, wb - wc
    sum_ac, sum_bc = wa + wc, wb + wc
    j_ex = (
        (sum_ab - 2.0 * wc) / (2.0 * diff_ac * diff_bc)
        - (sum_ab + 2.0 * wc) / (2.0 * sum_ac * sum_bc)
    ) * ga * gb
    delta_ab = omega_dressed[0] - omega_dressed[1]
    alpha_a, alpha_b = alphas
    for denom in (delta_ab - alpha_b, delta_ab + alpha_a):
        if abs(denom) < POLE_GUARD_MHZ:
            raise PoleError(
                f"straddling pole: qubit detuning {delta_ab:.3f} MHz against "
                f"anharmonicities ({alpha_a:.3f}, {alpha_b:.3f})"
            )
    w_zz0 = j_ex**2 / (delta_ab - alpha_b) - j_ex**2 / (delta_ab + alpha_a)
    return float(j_ex), float(w_zz0)


def calibrate_gate(
    rate_model,
    pulse: PulseSpec,
    theta_target: float,
    vary: str = "tau",
    alpha_c: float = 0.0,
    delta_cd: float | None = None,
    static_rate: float = 0.0,
    bounds: tuple[float, float] | None = None,
    tol: float = 1e-4,
) -> PulseSpec:
    """Tune tau or the amplitude so the conditional angle hits theta_target.

    rate_model maps a ResonatorTrajectory to EffectiveRates; the trajectory
    is recomputed per trial from the Duffing response at delta_cd (taken
    from the model pole when omitted).  static_rate (MHz) adds a constant
    static-ZZ contribution over the pulse.  Raises UnreachableTargetError
    when the target is outside the bracket.
    """
    if vary not in ("tau", "omega_amp"):
        raise ValueError("vary must be 'tau' or 'omega_amp'")
    if delta_cd is None:
        raise ValueError("delta_cd of the drive is required")
    if theta_target == 0.0:
        return pulse.with_(omega_amp=0.0, tau=1e-6)

    def angle(value):
        trial = pulse.with_(**{vary: value})
        traj = duffing_response(delta_cd, alpha_c, trial, horizon=trial.t0 + trial.tau)
        rates = rate_model(traj)
        theta = rates.theta_zz
        theta += RAD_PER_MHZ_NS * static_rate * trial.tau
        return theta - theta_target

    if bounds is None:
        bounds = (5.0, 4000.0) if vary == "tau" else (1e-3, 1e4)
    lo, hi = bounds
    f_lo, f_hi = angle(lo), angle(hi)
    if f_lo * f_hi > 0:
        raise UnreachableTargetError(
            f"conditional angle cannot reach {theta_target:.4f} rad for "
            f"{vary} in {bounds} (endpoint residuals {f_lo:.3g}, {f_hi:.3g})"
        )
    value = brentq(angle, lo, hi, xtol=1e-6, rtol=1e-10)
    # refine against the angle tolerance
    if abs(angle(value)) > tol:
        raise UnreachableTargetError(
            f"calibration converged to residual {angle(value):.3g} rad > {tol}"
        )
    return pulse.with_(**{vary: value})


@dataclasses.dataclass(frozen=True)
class DecoherenceReport:
    gamma_purcell: tuple[float, ...]      # cyclic MHz per qubit
    gamma_phi_avg: tuple[float, ...]      # pulse-averaged, cyclic MHz
    error_dephasing: float
    error_purcell: float
    error_t1: float

    @property
    def error_incoherent(self) -> float:
        return self.error_dephasing + self.error_purcell + self.error_t1


def decoherence_estimates(
    device,
    traj: ResonatorTrajectory,
    kappa_c: float,
    t1_us: tuple[float, ...],
    tau: float | None = None,
    chi: tuple[float, ...] | None = None,
) -> DecoherenceReport:
    """Purcell, measurement-induced dephasing, and the incoherent error sum.

    gamma_P = (g/Delta_bare)^2 kappa_c and gamma_phi(t) uses the standard
    dispersive expression with the drive detuning of the trajectory; chi
    (half the full shift, per qubit) defaults to the closed-form estimate.
    Error terms follow the 2/5 (dephasing, T1) and 1/5 (Purcell) weights
    of a two-qubit average error.
    """
    if kappa_c < 0:
        raise ValueError("kappa_c must be non-negative")
    tau = traj.pulse.tau if tau is None else tau
    from ripkit.transmon import asymptotics

    gammas_p = []
    chis = []
    for j, t in enumerate(device.transmons):
        w, a = asymptotics(t.e_c, t.e_j)
        delta = w - device.omega_c
        gammas_p.append((device.g[j] / delta) ** 2 * kappa_c)
        chis.append(a / (delta + a) * device.g[j] ** 2 / delta / 2.0)
    if chi is not None:
        chis = list(chi)
    photon = traj.photon
    gamma_phi_avg = []
    for c in chis:
        gamma_t = (
            2.0
            * c**2
            / (traj.delta_cd**2 + c**2 + (kappa_c / 2.0) ** 2)
            * photon
            * kappa_c
        )
        mask = (traj.t >= traj.pulse.t0) & (traj.t <= traj.pulse.t0 + tau)
        gamma_phi_avg.append(
            float(np.trapz(gamma_t[mask], traj.t[mask]) / tau)
        )
    # dimensionless errors: rate (MHz) * tau (ns) * 1e-3; T1 given in us
    err_phi = sum(0.4 * g * tau * 1e-3 for g in gamma_phi_avg)
    err_p = sum(0.2 * g * tau * 1e-3 for g in gammas_p)
    err_t1 = sum(0.4 * tau / (t1 * 1e3) for t1 in t1_us)
    return DecoherenceReport(
        gamma_purcell=tuple(gammas_p),
        gamma_phi_avg=tuple(gamma_phi_avg),
        error_dephasing=err_phi,
        error_purcell=err_p,
        error_t1=err_t1,
    )
