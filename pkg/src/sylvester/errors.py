"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class SylvesterError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SylvesterError, ValueError):
    """Arguments lie outside the validity region of an operation."""


class OverflowBoundError(DomainError):
    """Argument would push an intermediate past the floating-point range."""


class NonConvergenceError(SylvesterError):
    """Quadrature failed to reach the requested tolerance.

    Carries the best available result so callers can inspect how far off
    the final refinement was.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class DegenerateGeometryError(SylvesterError):
    """Input points or generators are numerically rank-deficient."""


class NotInRegistryError(SylvesterError, LookupError):
    """No closed-form registry entry exists for the requested distribution."""
