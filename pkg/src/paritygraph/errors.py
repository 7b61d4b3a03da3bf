"""Exception types shared by all modules."""

from __future__ import annotations


class ParityGraphError(Exception):
    """Base class for library errors."""


class InputError(ParityGraphError, ValueError):
    """Malformed or inconsistent input."""


class ResourceGuardError(ParityGraphError):
    """A configured size or enumeration cap was exceeded."""


class InstanceTooLarge(ResourceGuardError):
    """Instance too large for an exponential-time routine."""


class UnsupportedLayoutError(ParityGraphError):
    """The requested search is not justified for this compiled hypergraph."""
