"""Coupled transmon(s)-resonator Hamiltonians with labeled exact eigenstates.

The system Hamiltonian is assembled in the product basis of single-transmon
eigenstates and bare resonator Fock states,

    H = sum_j E_j + omega_c * n_c + sum_j g_j * y_j * y_c,

with y_j = (n_j - n_g)/n_zpf built from charge matrix elements and
y_c = -i(c - c^dag).  Eigenstates are labeled by maximal overlap with the
product basis; the drive couples through the bare resonator quadrature Y_c.
"""

from __future__ import annotations

import dataclasses
import warnings

import numpy as np
from scipy.optimize import root

from ripkit.errors import (
    DegenerateLabelError,
    DispersiveRegimeWarning,
    LabelOverlapWarning,
    NoSolutionError,
)
from ripkit.transmon import TransmonSpec, TransmonLevels, transmon_spectrum

HERMITICITY_TOL = 1e-12


@dataclasses.dataclass(frozen=True)
class DeviceSpec:
    """One or two transmons capacitively coupled to a common bus resonator.

    omega_c is the bare resonator frequency and g the per-qubit coupling,
    both cyclic MHz.  kappa_c, when set, is the resonator linewidth used by
    the complex-detuning rate variants.
    """

    transmons: tuple[TransmonSpec, ...]
    omega_c: float
    g: tuple[float, ...]
    kappa_c: float | None = None

    def __post_init__(self):
        if len(self.transmons) not in (1, 2):
            raise ValueError("DeviceSpec supports one or two transmons")
        if len(self.g) != len(self.transmons):
            raise ValueError("need one coupling per transmon")
        if self.kappa_c is not None and self.kappa_c < 0:
            raise ValueError("kappa_c must be non-negative")
        for t, g in zip(self.transmons, self.g):
            w, _ = _rough_qubit_frequency(t)
            if abs(g) >= abs(w - self.omega_c):
                warnings.warn(
                    f"|g| = {abs(g):.1f} MHz not small against the "
                    f"qubit-resonator detuning {w - self.omega_c:.1f} MHz",
                    DispersiveRegimeWarning,
                    stacklevel=2,
                )

    @property
    def n_qubits(self) -> int:
        return len(self.transmons)


def _rough_qubit_frequency(t: TransmonSpec):
    from ripkit.transmon import asymptotics

    return asymptotics(t.e_c, t.e_j)


@dataclasses.dataclass(frozen=True)
class TruncationSpec:
    """Basis cutoffs: charge states per transmon, kept levels, Fock states."""

    n_charge: int = 30
    n_qubit_keep: int = 10
    n_photon: int = 48

    def __post_init__(self):
        if self.n_qubit_keep > 2 * self.n_charge + 1:
            raise ValueError("n_qubit_keep exceeds the charge-basis size")
        if self.n_photon < 2:
            raise ValueError("need at least two Fock states")


#: defaults used by the leakage studies
SINGLE_QUBIT_TRUNCATION = TruncationSpec(n_charge=30, n_qubit_keep=10, n_photon=48)
TWO_QUBIT_TRUNCATION = TruncationSpec(n_charge=30, n_qubit_keep=10, n_photon=22)


@dataclasses.dataclass(frozen=True)
class SystemOperators:
    """Assembled, diagonalized system.

    h_s : Hermitian Hamiltonian in the product basis (MHz).
    y_c : bare resonator charge quadrature -i(c - c^dag) in the same basis.
    energies : exact eigenvalues, ground state pinned to zero.
    eigvecs : columns are eigenvectors in the product basis.
    labels : per-eigenstate occupation tuple (n_1[, n_2], n_c).
    """

    device: DeviceSpec
    truncation: TruncationSpec
    h_s: np.ndarray
    y_c: np.ndarray
    energies: np.ndarray
    eigvecs: np.ndarray
    labels: tuple[tuple[int, ...], ...]
    label_overlaps: np.ndarray
    transmon_levels: tuple[TransmonLevels, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        n = (self.truncation.n_qubit_keep,) * self.device.n_qubits
        return n + (self.truncation.n_photon,)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    def index_of(self, label: tuple[int, ...]) -> int:
        try:
            return self._label_index[label]
        except AttributeError:
            index = {lab: i for i, lab in enumerate(self.labels)}
            object.__setattr__(self, "_label_index", index)
            return index[label]

    def energy_of(self, label: tuple[int, ...]) -> float:
        return float(self.energies[self.index_of(label)])

    def computational_labels(self) -> list[tuple[int, ...]]:
        """Zero-photon labels with every qubit in {0, 1}."""
        nq = self.device.n_qubits
        labels = []
        for occ in np.ndindex(*(2,) * nq):
            labels.append(tuple(occ) + (0,))
        return labels

    def low_warning_labels(self) -> list[tuple[int, ...]]:
        return [
            lab
            for lab, ov in zip(self.labels, self.label_overlaps)
            if ov < 0.5
        ]


def _fock_operators(n_photon: int):
    n = np.arange(1, n_photon)
    lower = np.diag(np.sqrt(n), k=1)  # annihilation
    y = -1j * (lower - lower.conj().T)
    num = np.diag(np.arange(n_photon, dtype=float))
    return y, num


def _assign_labels(
    eigvecs: np.ndarray, dims, degeneracy_tol: float = 1e-3
) -> tuple[list, np.ndarray]:
    """Greedy max-overlap labeling, processed in descending confidence.

    Each eigenstate takes its best still-available product label, which
    resolves argmax collisions among strongly mixed high-lying states
    deterministically.  A genuine degeneracy (two states tied on the same
    label to within degeneracy_tol) raises DegenerateLabelError since no
    deterministic choice exists.
    """
    overlaps = np.abs(eigvecs) ** 2
    dim = eigvecs.shape[1]
    best = np.argmax(overlaps, axis=0)
    confidence = overlaps[best, np.arange(dim)]
    preference = None  # built lazily, only needed when collisions occur
    taken: dict[int, int] = {}
    assigned = np.full(dim, -1, dtype=int)
    assigned_overlap = np.zeros(dim)
    for col in np.argsort(-confidence, kind="stable"):
        flat = best[col]
        if flat not in taken:
            taken[flat] = col
            assigned[col] = flat
            assigned_overlap[col] = overlaps[flat, col]
            continue
        rival = taken[flat]
        tie = abs(overlaps[flat, rival] - overlaps[flat, col]) < degeneracy_tol
        if tie and min(overlaps[flat, rival], overlaps[flat, col]) >= 0.25:
            raise DegenerateLabelError(
                tuple(int(x) for x in np.unravel_index(flat, dims)),
                (float(overlaps[flat, rival]), float(overlaps[flat, col])),
            )
        if preference is None:
            preference = np.argsort(-overlaps, axis=0, kind="stable")
        for candidate in preference[:, col]:
            if candidate not in taken:
                taken[int(candidate)] = col
                assigned[col] = int(candidate)
                assigned_overlap[col] = overlaps[candidate, col]
                break
    labels = [
        tuple(int(x) for x in np.unravel_index(flat, dims)) for flat in assigned
    ]
    n_weak = int(np.sum(assigned_overlap < 0.5))
    if n_weak:
        worst = float(np.min(assigned_overlap))
        warnings.warn(
            f"{n_weak} eigenstates labeled with overlap < 0.5 (worst {worst:.3f})",
            LabelOverlapWarning,
            stacklevel=3,
        )
    return labels, assigned_overlap


def assemble_system(
    device: DeviceSpec, trunc: TruncationSpec | None = None
) -> SystemOperators:
    """Build and exactly diagonalize the coupled-system Hamiltonian."""
    if trunc is None:
        trunc = (
            SINGLE_QUBIT_TRUNCATION
            if device.n_qubits == 1
            else TWO_QUBIT_TRUNCATION
        )
    levels = tuple(
        transmon_spectrum(t, trunc.n_charge, trunc.n_qubit_keep)
        for t in device.transmons
    )
    y_fock, num = _fock_operators(trunc.n_photon)
    h_res = device.omega_c * num

    ident = [np.eye(trunc.n_qubit_keep) for _ in levels] + [np.eye(trunc.n_photon)]

    def embed(op, slot):
        mats = list(ident)
        mats[slot] = op
        out = mats[0]
        for m in mats[1:]:
            out = np.kron(out, m)
        return out

    nq = device.n_qubits
    h = embed(h_res, nq).astype(complex)
    for j, lev in enumerate(levels):
        h += embed(np.diag(lev.energies), j)
    y_c = embed(y_fock, nq)
    for j, lev in enumerate(levels):
        mats = list(ident)
        mats[j] = lev.y_matrix
        mats[nq] = y_fock
        op = mats[0]
        for m in mats[1:]:
            op = np.kron(op, m)
        h += device.g[j] * op

    hermiticity = np.max(np.abs(h - h.conj().T))
    scale = max(np.max(np.abs(h)), 1.0)
    if hermiticity > HERMITICITY_TOL * scale:
        raise ValueError(f"assembled H not Hermitian: defect {hermiticity:.2e}")

    energies, eigvecs = np.linalg.eigh(h)
    energies = energies - energies[0]
    dims = (trunc.n_qubit_keep,) * nq + (trunc.n_photon,)
    labels, overlap = _assign_labels(eigvecs, dims)
    return SystemOperators(
        device=device,
        truncation=trunc,
        h_s=h,
        y_c=y_c,
        energies=energies,
        eigvecs=eigvecs,
        labels=tuple(labels),
        label_overlaps=overlap,
        transmon_levels=levels,
    )


def dispersive_shift_exact(system: SystemOperators) -> tuple[float, ...]:
    """Full dispersive shift 2*chi_jc per qubit from labeled exact energies.

    2*chi_jc = E(1_j, 1_c) - E(1_j, 0_c) - E(0, 1_c) + E(0, 0_c).
    """
    nq = system.device.n_qubits
    zero = (0,) * nq
    e00 = system.energy_of(zero + (0,))
    e01 = system.energy_of(zero + (1,))
    shifts = []
    for j in range(nq):
        one = tuple(1 if k == j else 0 for k in range(nq))
        e10 = system.energy_of(one + (0,))
        e11 = system.energy_of(one + (1,))
        shifts.append(e11 - e10 - e01 + e00)
    return tuple(shifts)


def resonator_frequency_exact(system: SystemOperators) -> float:
    """Dressed resonator frequency E(0..0,1_c) - E(0..0,0_c)."""
    nq = system.device.n_qubits
    zero = (0,) * nq
    return system.energy_of(zero + (1,)) - system.energy_of(zero + (0,))


def qubit_frequency_exact(system: SystemOperators, qubit: int = 0) -> float:
    nq = system.device.n_qubits
    one = tuple(1 if k == qubit else 0 for k in range(nq)) + (0,)
    return system.energy_of(one) - system.energy_of((0,) * (nq + 1))


def static_zz_exact(system: SystemOperators) -> float:
    """Zero-photon ZZ rate E11 - E10 - E01 + E00 (two-qubit devices)."""
    if system.device.n_qubits != 2:
        raise ValueError("static ZZ needs two qubits")
    return (
        system.energy_of((1, 1, 0))
        - system.energy_of((1, 0, 0))
        - system.energy_of((0, 1, 0))
        + system.energy_of((0, 0, 0))
    )


def invert_device(
    omega01,
    alpha,
    omega_c: float,
    two_chi,
    n_g=0.0,
    trunc: TruncationSpec | None = None,
    kappa_c: float | None = None,
) -> DeviceSpec:
    """Solve for circuit parameters that reproduce dressed-spectrum targets.

    Scalars describe a single-qubit device; sequences of length two a
    two-qubit device.  Holds (omega01, alpha) per qubit exactly via
    per-transmon inversion, then root-finds (omega_bar_c, g_j) so the
    labeled exact spectrum reproduces the dressed resonator frequency and
    the full dispersive shifts.
    """
    from ripkit.transmon import invert_parameters

    omega01 = np.atleast_1d(np.asarray(omega01, dtype=float))
    alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
    two_chi = np.atleast_1d(np.asarray(two_chi, dtype=float))
    n_gs = np.broadcast_to(np.atleast_1d(np.asarray(n_g, dtype=float)), omega01.shape)
    nq = omega01.size
    specs = tuple(
        invert_parameters(omega01[j], alpha[j], n_gs[j]) for j in range(nq)
    )
    if trunc is None:
        trunc = TruncationSpec(
            n_charge=30, n_qubit_keep=6, n_photon=5 if nq == 2 else 6
        )

    # dispersive seed for g: chi ~ alpha g^2 / (Delta (Delta + alpha))
    g_seed = []
    for j in range(nq):
        delta = omega01[j] - omega_c
        g2 = abs(two_chi[j] / 2.0 * delta * (delta + alpha[j]) / alpha[j])
        g_seed.append(np.sqrt(g2))

    def objective(x):
        omega_bar_c = x[0]
        gs = tuple(abs(v) for v in x[1:])
        device = DeviceSpec(specs, omega_bar_c, gs, kappa_c)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            system = assemble_system(device, trunc)
        resid = [resonator_frequency_exact(system) - omega_c]
        shifts = dispersive_shift_exact(system)
        for j in range(nq):
            resid.append(shifts[j] - two_chi[j])
        return resid

    x0 = np.array([omega_c + nq * 3.0] + g_seed)
    sol = root(objective, x0, method="hybr", options={"xtol": 1e-10})
    if not sol.success or np.max(np.abs(sol.fun)) > 1e-3:
        raise NoSolutionError(
            f"device inversion failed (residual {np.abs(sol.fun).max():.2e} MHz)"
        )
    return DeviceSpec(
        specs, float(sol.x[0]), tuple(abs(float(v)) for v in sol.x[1:]), kappa_c
    )
