"""Exception types shared across the package."""


class DefectiveMatrixError(ArithmeticError):
    """Eigenvector matrix too ill-conditioned for a diagonalization-based matrix function."""


class ContourError(RuntimeError):
    """A characteristic root sits on (or too close to) the counting contour."""


class ResolutionError(RuntimeError):
    """Phase tracking along the contour did not resolve; increase samples_per_edge."""


class RefinementError(RuntimeError):
    """Newton polishing failed to reach the requested residual."""

    def __init__(self, message, last_iterate, residual):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual


class SolverError(RuntimeError):
    """Branch solver did not converge."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class InconsistencyError(ValueError):
    """Right-hand side incompatible with the column space of the delayed-state matrix."""


class PairingError(ValueError):
    """Root list cannot be grouped into conjugate/real pairs automatically."""
