"""Exception hierarchy shared by every module."""

from __future__ import annotations


class AnzbError(Exception):
    """Base class for all toolkit errors."""


class DomainError(AnzbError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class PrecisionExhausted(AnzbError):
    """A tolerance could not be met within the precision / depth budget."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class DivisionByNearZero(AnzbError, ArithmeticError):
    """A denominator enclosure contains zero."""


class DataError(AnzbError):
    """Malformed input data, or data that does not cover a request."""


class VerificationFailed(AnzbError):
    """A self-test found a counterexample."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NoCrossing(AnzbError):
    """Two bounds do not cross on the requested range."""
