"""Exception types shared across the package."""


class GaborLabError(Exception):
    """Base class for all gabor-lab errors."""


class InvalidLatticeError(GaborLabError):
    """Lattice steps do not divide the torus size."""


class BoxTooLargeError(GaborLabError):
    """Requested box side exceeds the torus size."""


class WindowError(GaborLabError):
    """Window parameters incompatible with the torus."""


class NotAFrameError(GaborLabError):
    """Lower frame bound is numerically zero; dual-dependent ops refuse to run."""


class IterativeSolveError(GaborLabError):
    """Iterative eigen/linear solve failed to certify its residual.

    Carries the last Ritz values so callers can inspect how far the solve got.
    """

    def __init__(self, message, ritz_values=None):
        super().__init__(message)
        self.ritz_values = ritz_values


class EmptyBoxError(GaborLabError):
    """No box at the requested scale contains any point."""


class SolverQualityWarning(UserWarning):
    """A quantity that is provably real/nonneg came back with visible residue."""
