"""Exception hierarchy shared by every pntlab module."""


class PntlabError(Exception):
    """Base class for all library errors."""


class DomainError(PntlabError, ValueError):
    """An argument lies outside the region where an operation is defined."""


class PoleError(DomainError):
    """Evaluation requested at (or too close to) a pole."""


class ResourceLimitError(PntlabError):
    """A computation would exceed a configured memory or size budget."""


class CoverageError(PntlabError, ValueError):
    """A request reaches beyond the range covered by precomputed data."""


class RefinementError(PntlabError, ArithmeticError):
    """Root refinement did not converge."""

    def __init__(self, message, *, iterations=None, last_t=None, residual=None):
        super().__init__(message)
        self.iterations = iterations
        self.last_t = last_t
        self.residual = residual


class ContourError(PntlabError, ValueError):
    """A singularity of the transform lies on or inside the requested contour."""


class QuadratureError(PntlabError, ArithmeticError):
    """Numerical quadrature failed to reach its tolerance."""
