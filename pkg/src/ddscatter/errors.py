"""Typed errors shared across the package."""


class DdscatterError(Exception):
    """Base class for all package errors."""


class DomainError(DdscatterError, ValueError):
    """Input outside the documented domain of an operation."""


class QuadratureError(DdscatterError):
    """Quadrature failed to reach the requested tolerance.

    Carries the best estimate and the error bound so callers can decide
    whether to accept a degraded result.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class BranchError(DdscatterError):
    """Matrix function hit a branch cut or a defective input."""


class ContourError(DdscatterError):
    """Argument-principle count rejected: zero too close to the contour."""

    def __init__(self, message, raw_winding=None):
        super().__init__(message)
        self.raw_winding = raw_winding


class NoConvergenceError(DdscatterError):
    """Iterative refinement did not converge."""


class SingularPointError(DdscatterError):
    """Pointwise kernel evaluation requested on a Dirac support line."""


class UnsupportedCouplingError(DdscatterError):
    """Coupling constants outside the class the construction covers.

    The bounded first-order metric exists only when the imaginary parts of
    the two couplings differ by a sign; outside that class no kernel is
    constructed and this error is raised instead of guessing.
    """


class DegeneracyError(DdscatterError):
    """Coupled degenerate levels: first-order theory cannot proceed."""


class NonQuasiHermitianError(DdscatterError):
    """Anti-Hermitian perturbation shifts diagonal energies: no real
    spectrum at first order, hence no metric."""


class InconsistencyError(DdscatterError):
    """Second-order solvability condition violated (quasi-Hermiticity
    breaks down at second order)."""
