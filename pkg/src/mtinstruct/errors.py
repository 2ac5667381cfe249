"""Exception types shared across the package."""

from __future__ import annotations


class ValidationError(ValueError):
    """Raised when input data or configuration violates a documented contract."""


class EndpointError(RuntimeError):
    """Raised when a remote endpoint cannot be reached or keeps failing."""
