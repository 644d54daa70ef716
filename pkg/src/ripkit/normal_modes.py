"""Canonical (Bogoliubov) normal modes and normal-ordered quartic coefficients.

The harmonic part of the two-transmon-plus-resonator circuit is diagonalized
by a symplectic transformation built from scaling / orthogonal / scaling
steps.  The flux and charge hybridization matrices U and V (with U^T V = I)
then determine every quartic interaction rate: static and dynamic frequency
shifts, self- and cross-Kerr, drive projections, exchange and
number-quadrature couplings.
"""

from __future__ import annotations

import dataclasses
import warnings

import numpy as np

from ripkit.device import DeviceSpec
from ripkit.errors import RipkitError

MODE_NAMES = ("a", "b", "c")


@dataclasses.dataclass(frozen=True)
class HybridizationData:
    """Flux (U) and charge (V) hybridization matrices and mode frequencies.

    Rows/columns are ordered (qubit a, qubit b, resonator c); for a
    single-qubit device the b slot is a decoupled spectator with u = v = e_b.
    omega_tilde are the normal-mode harmonic frequencies in MHz.
    """

    u: np.ndarray
    v: np.ndarray
    omega_tilde: np.ndarray
    omega_bar: np.ndarray
    epsilon: np.ndarray

    def symplectic_defect(self) -> float:
        return float(np.max(np.abs(self.u.T @ self.v - np.eye(3))))


def _harmonic_matrices(device: DeviceSpec):
    """Bare harmonic flux/charge blocks; single-qubit devices get a dummy b."""
    omega_bar = np.empty(3)
    epsilon = np.empty(3)
    gs = np.zeros(2)
    for j, t in enumerate(device.transmons):
        omega_bar[j] = t.omega_bar
        epsilon[j] = t.epsilon
        gs[j] = device.g[j]
    if device.n_qubits == 1:
        # decoupled placeholder so the 3x3 structure is uniform
        omega_bar[1] = 0.731 * omega_bar[0]
        epsilon[1] = 0.0
    omega_bar[2] = device.omega_c
    epsilon[2] = 0.0
    h_x = np.diag(omega_bar)
    h_y = np.diag(omega_bar.copy())
    h_y[0, 2] = h_y[2, 0] = 2.0 * gs[0]
    h_y[1, 2] = h_y[2, 1] = 2.0 * gs[1]
    return h_x, h_y, omega_bar, epsilon


def bogoliubov(device: DeviceSpec) -> HybridizationData:
    """Normal-mode transformation of the harmonic circuit Hamiltonian.

    U = S_X O_Y S and V = S_X^-1 O_Y S^-1 with the scaling fixed by the
    geometric-mean frequency; columns of O_Y are sign-fixed (positive
    diagonal) and ordered by maximal overlap with the bare modes so the
    result is reproducible.  Raises RipkitError when the charge block is
    not positive definite (ultra-strong coupling).
    """
    _, h_y, omega_bar, epsilon = _harmonic_matrices(device)
    omega_prime = float(np.prod(omega_bar)) ** (1.0 / 3.0)
    s_x = np.sqrt(omega_prime / omega_bar)
    h_y_prime = h_y / np.outer(s_x, s_x)
    w2, o_y = np.linalg.eigh(h_y_prime)
    # match eigenvector order to the bare-mode order by max overlap
    order = np.full(3, -1, dtype=int)
    for col in np.argsort(-np.abs(o_y).max(axis=0)):
        ranked = np.argsort(-np.abs(o_y[:, col]))
        for row in ranked:
            if row not in order:
                order[row] = col
                break
    o_y = o_y[:, order]
    w2 = w2[order]
    if np.any(w2 <= 0):
        raise RipkitError(
            f"charge-block eigenvalues {w2} not positive: coupling too strong"
        )
    o_y = o_y * np.sign(np.diag(o_y))[None, :]
    s = (w2 / omega_prime) ** 0.25
    u = (s_x[:, None] * o_y) * s[None, :]
    v = (o_y / s_x[:, None]) / s[None, :]
    omega_tilde = np.sqrt(omega_prime * w2)
    return HybridizationData(u, v, omega_tilde, omega_bar, epsilon)


@dataclasses.dataclass(frozen=True)
class QuarticCoefficients:
    """Normal-ordered quartic interaction rates (all cyclic MHz).

    Unbalanced couplings are stored as the drive-independent prefactors of
    their time dependence: lambda_drive rows multiply (Omega_c(t), eta*(t),
    |eta|^2 eta*(t)); lambda_exchange rows multiply (1, |eta|^2); the
    number-quadrature lambdas multiply eta*(t).
    """

    omega_tilde: np.ndarray
    delta_s: np.ndarray            # static shifts per mode
    delta_d: np.ndarray            # dynamic shift per photon, per mode
    alpha: np.ndarray              # self-Kerr per mode
    chi2: np.ndarray               # full cross-Kerr 2*chi, symmetric 3x3
    lambda_drive: np.ndarray       # (2, 3): qubit rows a,b x patterns
    lambda_exchange: np.ndarray    # (3, 3, 2): [j, k] -> (const, |eta|^2)
    lambda_nq: np.ndarray          # (3, 3): [j, k] -> eta* prefactor of n_j k
    v_cc: float

    @property
    def omega_dressed(self) -> np.ndarray:
        """Normal-mode frequencies including static (Lamb) shifts."""
        return self.omega_tilde + self.delta_s


def quartic_coefficients(
    hyb: HybridizationData, device: DeviceSpec | None = None
) -> QuarticCoefficients:
    """Evaluate every quartic normal-ordered rate from the hybridization data.

    Only the qubit rows of U contribute (the resonator is linear); the
    per-qubit weight is epsilon_j * omega_bar_j = 4 E_Cj.
    """
    u = hyb.u
    weights = hyb.epsilon[:2] * hyb.omega_bar[:2]  # = 4 E_C per qubit
    row_norm = np.sum(u[:2, :] ** 2, axis=1)  # u_qa^2 + u_qb^2 + u_qc^2

    def qsum(values):
        return -float(np.dot(weights, values))

    delta_s = np.array(
        [qsum(0.25 * u[:2, j] ** 2 * row_norm) for j in range(3)]
    )
    delta_d = np.array(
        [qsum(0.5 * u[:2, j] ** 2 * u[:2, 2] ** 2) for j in range(3)]
    )
    alpha = np.array([qsum(0.25 * u[:2, j] ** 4) for j in range(3)])
    chi2 = np.zeros((3, 3))
    for j in range(3):
        for k in range(j + 1, 3):
            chi2[j, k] = chi2[k, j] = qsum(0.5 * u[:2, j] ** 2 * u[:2, k] ** 2)

    lambda_drive = np.zeros((2, 3))
    for j in range(2):
        lambda_drive[j, 0] = 0.5 * hyb.v[2, j]
        lambda_drive[j, 1] = qsum(0.25 * u[:2, j] * u[:2, 2] * row_norm)
        lambda_drive[j, 2] = qsum(0.25 * u[:2, j] * u[:2, 2] ** 3)

    lambda_exchange = np.zeros((3, 3, 2))
    for j in range(3):
        for k in range(3):
            if j == k:
                continue
            lambda_exchange[j, k, 0] = qsum(0.25 * u[:2, j] * u[:2, k] * row_norm)
            lambda_exchange[j, k, 1] = qsum(
                0.5 * u[:2, j] * u[:2, k] * u[:2, 2] ** 2
            )

    lambda_nq = np.zeros((3, 3))
    for j in range(3):
        for k in range(3):
            pref = 0.25 if j == k else 0.5
            lambda_nq[j, k] = qsum(pref * u[:2, j] ** 2 * u[:2, k] * u[:2, 2])

    if abs(alpha[2]) > 0.2 * min(abs(alpha[0]), abs(alpha[1]) or np.inf):
        warnings.warn(
            "resonator self-Kerr not small compared to qubit anharmonicity",
            stacklevel=2,
        )
    return QuarticCoefficients(
        omega_tilde=hyb.omega_tilde.copy(),
        delta_s=delta_s,
        delta_d=delta_d,
        alpha=alpha,
        chi2=chi2,
        lambda_drive=lambda_drive,
        lambda_exchange=lambda_exchange,
        lambda_nq=lambda_nq,
        v_cc=float(hyb.v[2, 2]),
    )


def duffing_parameters(coeffs: QuarticCoefficients) -> tuple[float, float, float]:
    """Dressed resonator frequency, its self-Kerr and the static shift."""
    return (
        float(coeffs.omega_tilde[2] + coeffs.delta_s[2]),
        float(coeffs.alpha[2]),
        float(coeffs.delta_s[2]),
    )


def coefficients_from_printed(
    u: np.ndarray,
    v: np.ndarray,
    omega_tilde,
    e_c: tuple[float, float],
    e_j: tuple[float, float],
) -> QuarticCoefficients:
    """Build coefficients from explicitly supplied U, V (oracle inputs)."""
    omega_bar = np.array(
        [np.sqrt(8 * e_c[0] * e_j[0]), np.sqrt(8 * e_c[1] * e_j[1]), 0.0]
    )
    epsilon = np.array(
        [np.sqrt(2 * e_c[0] / e_j[0]), np.sqrt(2 * e_c[1] / e_j[1]), 0.0]
    )
    hyb = HybridizationData(
        np.asarray(u, dtype=float),
        np.asarray(v, dtype=float),
        np.asarray(omega_tilde, dtype=float),
        omega_bar,
        epsilon,
    )
    return quartic_coefficients(hyb)


def coefficient_report(coeffs: QuarticCoefficients) -> dict:
    """Flat, JSON-friendly report of every coefficient (the CLI table)."""
    names = MODE_NAMES
    report = {
        "omega_tilde_mhz": dict(zip(names, coeffs.omega_tilde.tolist())),
        "omega_dressed_mhz": dict(zip(names, coeffs.omega_dressed.tolist())),
        "delta_s_mhz": dict(zip(names, coeffs.delta_s.tolist())),
        "delta_d_mhz_per_photon": dict(zip(names, coeffs.delta_d.tolist())),
        "alpha_mhz": dict(zip(names, coeffs.alpha.tolist())),
        "two_chi_mhz": {
            f"{names[j]}{names[k]}": coeffs.chi2[j, k]
            for j in range(3)
            for k in range(j + 1, 3)
        },
        "lambda_drive": {
            names[j]: {
                "omega_c": coeffs.lambda_drive[j, 0],
                "eta_conj": coeffs.lambda_drive[j, 1],
                "photon_eta_conj": coeffs.lambda_drive[j, 2],
            }
            for j in range(2)
        },
        "lambda_exchange": {
            f"{names[j]}*{names[k]}": {
                "const": coeffs.lambda_exchange[j, k, 0],
                "photon": coeffs.lambda_exchange[j, k, 1],
            }
            for j in range(3)
            for k in range(3)
            if j < k
        },
        "lambda_number_quadrature": {
            f"{names[j]}*{names[j]}{names[k]}": coeffs.lambda_nq[j, k]
            for j in range(3)
            for k in range(3)
        },
    }
    return report
