"""Single-transmon spectra in the charge basis, asymptotics, and inversion.

The transmon Hamiltonian is 4*E_C*(n - n_g)^2 - E_J*cos(phi), diagonalized
exactly in the charge basis so the gate-charge dependence of high levels is
kept.  Energies are cyclic MHz referenced to the ground state.
"""

from __future__ import annotations

import dataclasses

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import root

from ripkit.errors import ConvergenceError, NoSolutionError

#: transmon-regime guard on E_J/E_C (lower bound, configurable per call)
DEFAULT_MIN_RATIO = 10.0
#: search region for parameter inversion
RATIO_BOUNDS = (10.0, 1.0e4)


@dataclasses.dataclass(frozen=True)
class TransmonSpec:
    """Circuit parameters of one transmon.

    e_c, e_j : charging and Josephson energies as cyclic MHz (E/h).
    n_g : dimensionless gate charge.
    """

    e_c: float
    e_j: float
    n_g: float = 0.0
    min_ratio: float = DEFAULT_MIN_RATIO

    def __post_init__(self):
        if self.e_c <= 0 or self.e_j <= 0:
            raise ValueError("E_C and E_J must be positive")
        if self.e_j / self.e_c <= self.min_ratio:
            raise ValueError(
                f"E_J/E_C = {self.e_j / self.e_c:.3f} outside the transmon "
                f"regime (guard {self.min_ratio})"
            )

    @property
    def omega_bar(self) -> float:
        """Harmonic frequency sqrt(8*E_C*E_J)."""
        return float(np.sqrt(8.0 * self.e_c * self.e_j))

    @property
    def epsilon(self) -> float:
        """Unitless anharmonicity measure sqrt(2*E_C/E_J) = phi_zpf^2."""
        return float(np.sqrt(2.0 * self.e_c / self.e_j))

    @property
    def n_zpf(self) -> float:
        """Charge zero-point fluctuation (E_J/32E_C)^(1/4)."""
        return float((self.e_j / (32.0 * self.e_c)) ** 0.25)

    @property
    def y_g(self) -> float:
        """Unitless gate charge n_g/n_zpf."""
        return self.n_g / self.n_zpf


@dataclasses.dataclass(frozen=True)
class TransmonLevels:
    """Diagonalized transmon: energies, eigenvectors and charge elements.

    energies : eigenvalues (MHz), ground state pinned to zero.
    vectors : eigenvectors as columns in the charge basis.
    charge_elements : matrix of <i|(n - n_g)|j> over the retained levels.
    """

    spec: TransmonSpec
    energies: np.ndarray
    vectors: np.ndarray
    charge_elements: np.ndarray
    n_charge: int

    @property
    def y_matrix(self) -> np.ndarray:
        """Unitless charge quadrature (n - n_g)/n_zpf in the eigenbasis."""
        return self.charge_elements / self.spec.n_zpf

    def frequency01(self) -> float:
        return float(self.energies[1] - self.energies[0])

    def anharmonicity(self) -> float:
        return float(self.energies[2] - 2.0 * self.energies[1] + self.energies[0])


def _charge_basis_levels(spec: TransmonSpec, n_charge: int, n_keep: int):
    m = np.arange(-n_charge, n_charge + 1, dtype=float)
    diag = 4.0 * spec.e_c * (m - spec.n_g) ** 2
    off = np.full(2 * n_charge, -0.5 * spec.e_j)
    energies, vectors = eigh_tridiagonal(
        diag, off, select="i", select_range=(0, n_keep - 1)
    )
    # gauge: deterministic sign of each eigenvector
    for k in range(vectors.shape[1]):
        idx = np.argmax(np.abs(vectors[:, k]))
        if vectors[idx, k] < 0:
            vectors[:, k] *= -1.0
    return energies - energies[0], vectors, m


def transmon_spectrum(
    spec: TransmonSpec,
    n_charge: int = 30,
    n_keep: int = 10,
    check_convergence: bool = True,
) -> TransmonLevels:
    """Exact spectrum and charge matrix elements of an isolated transmon.

    Raises ConvergenceError when the highest retained eigenvalue moves by
    more than 1 kHz under n_charge -> n_charge + 5.
    """
    if n_charge < 20:
        raise ValueError("n_charge must be >= 20")
    if n_keep > 2 * n_charge + 1:
        raise ValueError("cannot keep more levels than the basis size")
    energies, vectors, m = _charge_basis_levels(spec, n_charge, n_keep)
    if check_convergence:
        energies_big, _, _ = _charge_basis_levels(spec, n_charge + 5, n_keep)
        drift = abs(energies[n_keep - 1] - energies_big[n_keep - 1])
        if drift > 1e-3:
            raise ConvergenceError(
                f"E_{n_keep - 1} moved by {drift:.3e} MHz under cutoff "
                f"increase {n_charge} -> {n_charge + 5}"
            )
    weighted = (m - spec.n_g)[:, None] * vectors
    charge_elements = vectors.T @ weighted
    return TransmonLevels(spec, energies, vectors, charge_elements, n_charge)


def asymptotics(e_c: float, e_j: float) -> tuple[float, float]:
    """Closed-form qubit frequency and anharmonicity up to O(E_C^2/E_J).

    omega ~ sqrt(8 E_J E_C) - E_C - (1/4) sqrt(2E_C/E_J) E_C
    alpha ~ -E_C - (9/16) sqrt(2E_C/E_J) E_C
    """
    if e_j / e_c <= DEFAULT_MIN_RATIO:
        raise ValueError("asymptotics require E_J/E_C > 10")
    eps = np.sqrt(2.0 * e_c / e_j)
    omega = np.sqrt(8.0 * e_j * e_c) - e_c - 0.25 * eps * e_c
    alpha = -e_c - (9.0 / 16.0) * eps * e_c
    return float(omega), float(alpha)


def invert_asymptotics(omega01: float, alpha: float) -> tuple[float, float]:
    """Invert the closed-form frequency/anharmonicity relations for (E_C, E_J).

    This reproduces quoted design ratios such as E_J/E_C ~ 103.29 at
    (5140, -200) MHz; the exact-spectrum inversion lands a few percent away
    because the closed forms are only accurate to O(E_C^2/E_J).
    """

    def eqs(x):
        e_c, e_j = x
        if e_c <= 0 or e_j <= 0:
            return [1e6, 1e6]
        w, a = asymptotics(abs(e_c), abs(e_j))
        return [w - omega01, a - alpha]

    e_c0 = -alpha
    e_j0 = (omega01 + e_c0) ** 2 / (8.0 * e_c0)
    sol = root(eqs, [e_c0, e_j0], method="hybr")
    if not sol.success:
        return e_c0, e_j0
    return float(sol.x[0]), float(sol.x[1])


def invert_parameters(
    omega01: float,
    alpha: float,
    n_g: float = 0.0,
    n_charge: int = 30,
    min_ratio: float = DEFAULT_MIN_RATIO,
) -> TransmonSpec:
    """Find (E_C, E_J) whose exact spectrum hits the target (omega01, alpha).

    The asymptotic closed forms seed a root search on the exact
    charge-basis spectrum.  Raises NoSolutionError when the search leaves
    E_J/E_C in [10, 1e4].
    """
    if alpha >= 0:
        raise ValueError("transmon anharmonicity must be negative")
    seed = invert_asymptotics(omega01, alpha)

    def eqs(x):
        e_c, e_j = x
        ratio = e_j / e_c if e_c > 0 else -1.0
        if e_c <= 0 or not (RATIO_BOUNDS[0] <= ratio <= RATIO_BOUNDS[1]):
            raise NoSolutionError(
                f"inversion left E_J/E_C in {RATIO_BOUNDS} at ratio {ratio:.2f}"
            )
        levels = transmon_spectrum(
            TransmonSpec(e_c, e_j, n_g, min_ratio=0.0),
            n_charge=n_charge,
            n_keep=3,
            check_convergence=False,
        )
        return [levels.frequency01() - omega01, levels.anharmonicity() - alpha]

    sol = root(eqs, seed, method="hybr", options={"xtol": 1e-12})
    if not sol.success or max(abs(sol.fun[0]), abs(sol.fun[1]) / 10.0) > 1e-3:
        raise NoSolutionError(
            f"inversion failed for omega01={omega01}, alpha={alpha}: {sol.message}"
        )
    return TransmonSpec(float(sol.x[0]), float(sol.x[1]), n_g, min_ratio=min_ratio)
