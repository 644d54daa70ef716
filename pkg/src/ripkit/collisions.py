"""Frequency-collision prediction and exact-spectrum location.

Collisions are near-degeneracies between a computational state and a
high-excitation state that open leakage channels under the drive.  The
Kerr spectrum gives closed-form conditions linear in the (shared) qubit
anharmonicity; the exact scan re-solves device parameters on an
anharmonicity grid while holding the dressed frequencies and dispersive
shifts fixed, then tracks labeled eigenvalue differences to bracket roots.
"""

from __future__ import annotations

import dataclasses
import itertools
import warnings

import numpy as np

from ripkit.device import TruncationSpec, assemble_system, invert_device
from ripkit.errors import LabelLossError, RipkitError

CATEGORIES = ("qubit-qubit", "qubit-resonator", "three-body")


@dataclasses.dataclass(frozen=True)
class CollisionSpec:
    """A pair of colliding occupation tuples (n_a[, n_b], n_c)."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        if len(self.left) != len(self.right):
            raise ValueError("occupation tuples must have equal length")
        if len(self.left) not in (2, 3):
            raise ValueError("occupations are (n_a, n_c) or (n_a, n_b, n_c)")
        if self.left == self.right:
            raise ValueError("left and right states must differ")
        if any(n < 0 for n in self.left + self.right):
            raise ValueError("occupations must be non-negative")

    @property
    def n_qubits(self) -> int:
        return len(self.left) - 1

    @property
    def category(self) -> str:
        """Which subsystems change occupation between the two states."""
        changed = [l != r for l, r in zip(self.left, self.right)]
        qubits_changed = sum(changed[: self.n_qubits])
        if qubits_changed == 2:
            return "three-body" if changed[-1] else "qubit-qubit"
        if changed[-1]:
            return "qubit-resonator" if qubits_changed else "resonator"
        return "qubit-qubit"

    def photon_shift(self, n_c: int) -> "CollisionSpec":
        """Same collision with both photon numbers raised by n_c."""
        return CollisionSpec(
            self.left[:-1] + (self.left[-1] + n_c,),
            self.right[:-1] + (self.right[-1] + n_c,),
        )


@dataclasses.dataclass(frozen=True)
class KerrParams:
    """Kerr-spectrum inputs for collision conditions (cyclic MHz).

    omega are the dressed mode frequencies (omega_a[, omega_b], omega_c) and
    chi the half dispersive shifts (chi_ac[, chi_bc[, chi_ab]]); qubit
    anharmonicities are assumed equal (alpha_a = alpha_b = alpha).
    """

    omega: tuple[float, ...]
    chi: tuple[float, ...]

    def energy(self, occ: tuple[int, ...], alpha: float) -> float:
        nq = len(occ) - 1
        out = 0.0
        for j in range(nq):
            out += self.omega[j] * occ[j] + 0.5 * alpha * occ[j] * (occ[j] - 1)
        out += self.omega[nq] * occ[nq]
        out += 2.0 * self.chi[0] * occ[0] * occ[-1]
        if nq == 2:
            out += 2.0 * self.chi[1] * occ[1] * occ[-1]
            if len(self.chi) > 2:
                out += 2.0 * self.chi[2] * occ[0] * occ[1]
        return out

    def alpha_weight(self, occ: tuple[int, ...]) -> float:
        return sum(0.5 * n * (n - 1) for n in occ[: len(occ) - 1])


@dataclasses.dataclass(frozen=True)
class CollisionRecord:
    """Located collision: alpha* intercept and photon-number slope.

    For the Kerr model the condition is exactly linear, alpha*(n_c) =
    intercept + slope*n_c, multiplicity 1.  Exact records carry one root
    each with the total number of crossings found in the scanned range;
    intervals flag label-loss regions instead of roots.
    """

    spec: CollisionSpec
    model: str
    alpha_star: float
    slope: float | None
    multiplicity: int
    provenance: dict
    interval: tuple[float, float] | None = None


def kerr_collision(
    spec: CollisionSpec, params: KerrParams, n_c_ref: int = 0
) -> CollisionRecord:
    """Closed-form collision condition from the Kerr spectrum.

    Solves E_left(alpha, n_c) = E_right(alpha, n_c) for the shared qubit
    anharmonicity; the result is linear in the photon offset n_c measured
    from the spec's own photon numbers.
    """
    c_alpha = params.alpha_weight(spec.left) - params.alpha_weight(spec.right)
    if c_alpha == 0.0:
        raise RipkitError(
            f"collision {spec.left}~{spec.right} has no anharmonicity dependence"
        )
    e0 = params.energy(spec.left, 0.0) - params.energy(spec.right, 0.0)
    shifted = spec.photon_shift(1)
    e1 = params.energy(shifted.left, 0.0) - params.energy(shifted.right, 0.0)
    intercept = -e0 / c_alpha
    slope = -(e1 - e0) / c_alpha
    return CollisionRecord(
        spec=spec,
        model="kerr",
        alpha_star=intercept + slope * n_c_ref,
        slope=slope,
        multiplicity=1,
        provenance={"params": dataclasses.asdict(params)},
    )


def enumerate_candidates(
    params: KerrParams,
    alpha,
    max_level: int,
    max_photon: int,
    window: float,
    category: str | None = None,
) -> list[CollisionSpec]:
    """All occupation pairs within `window` MHz of degeneracy, deduplicated.

    alpha may be a number (fixed-anharmonicity window test) or a
    (low, high) interval, in which case a pair qualifies when its Kerr
    energy difference reaches the window anywhere in the interval.
    """
    if window < 0 or max_level < 1 or max_photon < 0:
        raise ValueError("bounds must be positive")
    nq = len(params.omega) - 1
    qubit_ranges = [range(max_level + 1)] * nq
    occs = [
        occ + (n_c,)
        for occ in itertools.product(*qubit_ranges)
        for n_c in range(max_photon + 1)
    ]
    alpha_lo, alpha_hi = (
        (float(alpha[0]), float(alpha[1]))
        if np.iterable(alpha)
        else (float(alpha), float(alpha))
    )
    out = []
    seen = set()
    for left, right in itertools.combinations(occs, 2):
        if left == right:
            continue
        spec = CollisionSpec(left, right)
        if category is not None and spec.category != category:
            continue
        key = frozenset((left, right))
        if key in seen:
            continue
        gap_lo = params.energy(left, alpha_lo) - params.energy(right, alpha_lo)
        gap_hi = params.energy(left, alpha_hi) - params.energy(right, alpha_hi)
        gap = (
            0.0
            if gap_lo * gap_hi <= 0
            else min(abs(gap_lo), abs(gap_hi))
        )
        if gap <= window:
            seen.add(key)
            out.append(spec)
    return out


@dataclasses.dataclass(frozen=True)
class ScanTargets:
    """Dressed-spectrum quantities held fixed while alpha is swept."""

    omega01: tuple[float, ...]
    omega_c: float
    two_chi: tuple[float, ...]
    n_g: float = 0.0


class _ScanCache:
    """Per-alpha device inversion and labeled spectrum, cached."""

    def __init__(self, targets: ScanTargets, trunc: TruncationSpec):
        self.targets = targets
        self.trunc = trunc
        self._cache: dict[float, dict] = {}

    def energies(self, alpha: float) -> dict:
        key = round(float(alpha), 6)
        if key not in self._cache:
            t = self.targets
            nq = len(t.omega01)
            device = invert_device(
                t.omega01,
                (alpha,) * nq,
                t.omega_c,
                t.two_chi,
                n_g=t.n_g,
            )
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                system = assemble_system(device, self.trunc)
            self._cache[key] = {
                "device": device,
                "labels": {
                    lab: (system.energies[i], system.label_overlaps[i])
                    for i, lab in enumerate(system.labels)
                },
            }
        return self._cache[key]

    def gap(self, alpha: float, spec: CollisionSpec, min_overlap=0.3) -> float:
        data = self.energies(alpha)
        try:
            e_l, ov_l = data["labels"][spec.left]
            e_r, ov_r = data["labels"][spec.right]
        except KeyError as exc:
            raise LabelLossError(
                f"state {exc} not labeled at alpha={alpha:.3f}"
            ) from exc
        if min(ov_l, ov_r) < min_overlap:
            raise LabelLossError(
                f"overlap {min(ov_l, ov_r):.2f} < {min_overlap} for "
                f"{spec.left}~{spec.right} at alpha={alpha:.3f}"
            )
        return float(e_l - e_r)


def exact_collision_scan(
    targets: ScanTargets,
    spec: CollisionSpec,
    alpha_range: tuple[float, float],
    step: float = 0.5,
    tol: float = 0.05,
    trunc: TruncationSpec | None = None,
) -> list[CollisionRecord]:
    """Locate collisions of the exact labeled spectrum over an alpha range.

    At every grid point the circuit parameters are re-solved to hold the
    targets fixed; sign changes of E_left - E_right are bisected to `tol`
    MHz.  Multiple roots between the same pair of states are possible (the
    sextic-and-higher bending of high levels); label-loss regions are
    reported as intervals rather than roots.
    """
    if trunc is None:
        needed_q = max(spec.left[0], spec.right[0]) + 2
        if spec.n_qubits == 2:
            needed_q = max(
                needed_q, spec.left[1] + 2, spec.right[1] + 2
            )
        needed_ph = max(spec.left[-1], spec.right[-1]) + 3
        trunc = TruncationSpec(
            n_charge=30,
            n_qubit_keep=max(needed_q, 6),
            n_photon=max(needed_ph, 4),
        )
    cache = _ScanCache(targets, trunc)
    lo, hi = min(alpha_range), max(alpha_range)
    grid = np.arange(lo, hi + 0.5 * step, step)
    gaps, ok = [], []
    for a in grid:
        try:
            gaps.append(cache.gap(a, spec))
            ok.append(True)
        except LabelLossError:
            gaps.append(np.nan)
            ok.append(False)
    records = []
    roots = []
    intervals = []
    for i in range(len(grid) - 1):
        if not (ok[i] and ok[i + 1]):
            if not ok[i]:
                intervals.append((float(grid[i] - step), float(grid[i] + step)))
            continue
        if gaps[i] == 0.0:
            roots.append(float(grid[i]))
            continue
        if gaps[i] * gaps[i + 1] < 0:
            a_lo, a_hi = float(grid[i]), float(grid[i + 1])
            g_lo = gaps[i]
            try:
                while a_hi - a_lo > tol:
                    mid = 0.5 * (a_lo + a_hi)
                    g_mid = cache.gap(mid, spec)
                    if g_lo * g_mid <= 0:
                        a_hi = mid
                    else:
                        a_lo, g_lo = mid, g_mid
                roots.append(0.5 * (a_lo + a_hi))
            except LabelLossError:
                intervals.append((a_lo, a_hi))
    provenance = {
        "targets": dataclasses.asdict(targets),
        "alpha_range": (lo, hi),
        "step": step,
        "truncation": dataclasses.asdict(trunc),
    }
    for r in roots:
        records.append(
            CollisionRecord(
                spec=spec,
                model="exact",
                alpha_star=r,
                slope=None,
                multiplicity=len(roots),
                provenance=provenance,
            )
        )
    for iv in intervals:
        records.append(
            CollisionRecord(
                spec=spec,
                model="exact",
                alpha_star=float(np.mean(iv)),
                slope=None,
                multiplicity=len(roots),
                provenance=provenance,
                interval=iv,
            )
        )
    return records


def collision_margin(
    alpha_device: float,
    specs: list[CollisionSpec],
    params: KerrParams,
    max_photon: int = 5,
) -> list[dict]:
    """Distance from the device anharmonicity to each collision cluster.

    The margin is min over photon offsets of |alpha_device - alpha*(n_c)|;
    records where the condition has no anharmonicity dependence are skipped.
    """
    report = []
    for spec in specs:
        try:
            record = kerr_collision(spec, params)
        except RipkitError:
            continue
        alphas = [
            record.alpha_star + record.slope * n for n in range(max_photon + 1)
        ]
        margins = [abs(alpha_device - a) for a in alphas]
        best = int(np.argmin(margins))
        report.append(
            {
                "spec": spec,
                "alpha_star": record.alpha_star,
                "slope": record.slope,
                "margin": margins[best],
                "at_photon_offset": best,
            }
        )
    return report
