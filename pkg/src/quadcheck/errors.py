"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


class QuadcheckError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(QuadcheckError, ValueError):
    """Invalid run configuration (precision too low, bad selection, ...)."""


class DomainError(QuadcheckError, ValueError):
    """Evaluation outside the mathematical domain (ln of a negative value,
    division by an exact zero, non-finite intermediate, ...)."""


class UnknownConstantError(QuadcheckError, LookupError):
    """Requested named constant does not exist."""


@dataclass(frozen=True)
class SourceSpan:
    """Byte range [start, end) into a parsed text."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.end < self.start:
            raise ValueError(f"invalid span [{self.start}, {self.end})")


class ExprSyntaxError(QuadcheckError, ValueError):
    """Syntax error while parsing an expression; carries the offending span."""

    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{message} (at offset {span.start})")
        self.reason = message
        self.span = span


class CatalogFormatError(QuadcheckError, ValueError):
    """Malformed catalog file; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.reason = message
        self.line = line


class NonConvergenceError(QuadcheckError, ArithmeticError):
    """An integral did not converge but the caller needs a plain value.

    Verification paths report non-convergence in-band through result
    records; this exception is raised only by operations whose return
    type is a bare number (the transform helpers).
    """

    def __init__(self, message: str, best_value=None):
        super().__init__(message)
        self.best_value = best_value
