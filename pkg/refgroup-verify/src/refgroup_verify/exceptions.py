from refgroup_core.exceptions import RefGroupError


class RegistryParseError(RefGroupError, ValueError):
    """Thrown when a claim registry cannot be read or fails validation."""


class CacheCorruptionError(RefGroupError):
    """Thrown when an on-disk cache entry cannot be decoded."""


class UnknownComputationError(RefGroupError, KeyError):
    """Thrown when a claim names a computation that was never registered."""


class UnknownSubjectError(RefGroupError, ValueError):
    """Thrown when a claim names a group or reference that has no builder."""
