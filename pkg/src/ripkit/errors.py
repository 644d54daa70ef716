"""Exception and warning types shared across the package."""


class RipkitError(Exception):
    """Base class for numerical/model failures (CLI exit code 3)."""


class ConfigError(Exception):
    """Invalid configuration or CLI input (CLI exit code 2)."""


class ConvergenceError(RipkitError):
    """Spectrum not converged with respect to a basis cutoff."""


class NoSolutionError(RipkitError):
    """Parameter inversion left the allowed search region."""


class DegenerateLabelError(RipkitError):
    """Two eigenstates claim the same product-basis label."""

    def __init__(self, label, overlaps):
        self.label = label
        self.overlaps = overlaps
        super().__init__(
            f"eigenstates with overlaps {overlaps} both claim label {label}"
        )


class LabelLossError(RipkitError):
    """Max-overlap labeling dropped below threshold near an avoided crossing."""


class PoleError(RipkitError):
    """Detuning sits on (or too close to) a pole of a closed-form rate."""


class NormDriftError(RipkitError):
    """State norm drifted beyond tolerance during time evolution."""


class StepSizeError(RipkitError):
    """ODE step size underflow, reported with the time stamp."""

    def __init__(self, message, t=None):
        self.t = t
        super().__init__(message if t is None else f"{message} (t = {t:.6g} ns)")


class SamplingError(RipkitError):
    """Trajectory sampling too sparse for the requested quadrature."""


class UnreachableTargetError(RipkitError):
    """Gate calibration target cannot be reached by the free parameter."""


class SchemaError(ConfigError):
    """CSV schema not recognized by the plotting front end."""


class DispersiveRegimeWarning(UserWarning):
    """Coupling comparable to detuning; dispersive assumptions degraded."""


class ValidityWarning(UserWarning):
    """Perturbative validity condition violated."""


class BistabilityWarning(UserWarning):
    """Driven Kerr steady-state cubic has three positive roots."""


class TruncationWarning(UserWarning):
    """Population reached the edge of the retained basis."""


class LabelOverlapWarning(UserWarning):
    """Assigned label has overlap below 0.5."""
