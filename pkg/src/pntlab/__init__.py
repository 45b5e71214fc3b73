"""Numerical companion to the prime number theorem: prime counts, Li, zeta and
its zeros, and the Laplace-transform machinery of the Tauberian argument."""

from .errors import (
    ContourError,
    CoverageError,
    DomainError,
    PntlabError,
    PoleError,
    QuadratureError,
    RefinementError,
    ResourceLimitError,
)

__version__ = "0.1.0"

__all__ = [
    "ContourError",
    "CoverageError",
    "DomainError",
    "PntlabError",
    "PoleError",
    "QuadratureError",
    "RefinementError",
    "ResourceLimitError",
    "__version__",
]
