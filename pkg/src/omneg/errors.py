"""Exception types shared across the package."""

__all__ = [
    "OmnegError",
    "ConfigError",
    "PointFailure",
    "ThresholdSingularity",
    "DegenerateNormalMode",
    "UnstableSystem",
    "SingularSolve",
    "EigenFailure",
    "NonPhysicalState",
    "StepTooLarge",
    "NoEntanglementAtFloor",
    "NoDeathBelowCeiling",
]


class OmnegError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(OmnegError):
    """A config file or CLI argument violates the documented schema."""


class PointFailure(OmnegError):
    """Base for failures tied to a single parameter point.

    The sweep engine records these in the output row instead of aborting.
    """


class ThresholdSingularity(PointFailure):
    """Operation at or above the OPA parametric threshold.

    The linear steady state diverges when kappa^2 + Delta^2 - 4 C_g^2
    falls to (or below) zero.
    """


class DegenerateNormalMode(PointFailure):
    """omega_m1 * omega_m2 - lambda^2 <= 0.

    The coupled-oscillator potential is unbounded; no steady state exists.
    """


class UnstableSystem(PointFailure):
    """The drift matrix has an eigenvalue at or beyond the stability margin."""


class SingularSolve(PointFailure):
    """A linear solve met a pivot below the singularity threshold."""


class EigenFailure(PointFailure):
    """The eigenvalue iteration did not converge."""


class NonPhysicalState(PointFailure):
    """The reduced matrix is not a valid two-mode covariance matrix."""


class StepTooLarge(OmnegError):
    """Integrator step exceeds the accuracy bound dt <= 0.1 / ||M||."""


class NoEntanglementAtFloor(OmnegError):
    """Critical-temperature scan found no entanglement at its lower bound."""


class NoDeathBelowCeiling(OmnegError):
    """Entanglement persists at the scan's upper temperature bound."""
