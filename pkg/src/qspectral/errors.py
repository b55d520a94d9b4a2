"""Exception types shared across the package."""


class ConvergenceError(RuntimeError):
    """An iterative numerical routine failed to converge."""


class PhaseResolutionError(ValueError):
    """A nonzero eigenvalue cannot be separated from the zero phase bin."""


class DegenerateTargetError(ValueError):
    """The requested projection target vanishes (input lies in the null space)."""
