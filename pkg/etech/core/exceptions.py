# etech/core/exceptions.py
"""Exceptions for the etech package."""


class EtechError(Exception):
    """Base exception for etech errors."""

    pass


class DomainError(EtechError, ValueError):
    """Raised when an argument lies outside a function's mathematical domain."""

    pass


class ConfigurationError(EtechError):
    """Raised when there's an error in configuration."""

    pass


class OutputError(EtechError):
    """Raised when a result file cannot be written."""

    pass


class ResultLookupError(EtechError, KeyError):
    """Raised when a sweep result has no cells for the requested key."""

    def __str__(self) -> str:
        """Render the message without KeyError's repr quoting."""
        return str(self.args[0]) if self.args else ""
