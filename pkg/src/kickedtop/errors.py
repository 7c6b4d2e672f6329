"""Exception types raised by the kickedtop package."""


class KickedTopError(Exception):
    """Base class for all package errors."""


class InvalidSpinError(KickedTopError, ValueError):
    """Spin quantum number is not a positive integer (or not even where required)."""


class InvalidPointError(KickedTopError, ValueError):
    """Coordinates do not lie on the unit sphere within tolerance."""


class NumericalError(KickedTopError, RuntimeError):
    """A dense linear-algebra primitive failed or left a large residual."""


class NotBlockDiagonalError(KickedTopError, RuntimeError):
    """Transformed operator has off-block leakage above tolerance.

    Usually a symptom of an odd spin or a basis that does not commute
    with the operator's symmetries.
    """


class EmptyProjectionError(KickedTopError, ValueError):
    """State has (numerically) no component in the requested subspace."""


class DimensionMismatchError(KickedTopError, ValueError):
    """Operator/state dimensions or basis labels are incompatible."""


class InsufficientDataError(KickedTopError, ValueError):
    """Series is too short for the requested analysis."""


class FitError(KickedTopError, RuntimeError):
    """Curve fit failed: bad window, non-positive data, or no decaying trend."""


class EdgeNotFoundError(KickedTopError, RuntimeError):
    """No scanned state qualified as a power-law decayer.

    Carries the per-candidate classification summary in ``details``.
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or []


class ConfigError(KickedTopError, ValueError):
    """Invalid or incomplete experiment configuration."""
