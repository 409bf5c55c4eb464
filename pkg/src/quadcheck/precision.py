"""Precision management for every numeric operation in the package.

All arithmetic is done with mpmath big-floats (`mpmath.mpf`), whose
exponent is an arbitrary-precision integer, so magnitudes far beyond
10**(+-10**6) are representable without overflow.  Results are faithfully
rounded at the working precision; the verification tolerances downstream
absorb the difference between faithful and correct rounding.

A :class:`PrecisionContext` bundles the digits requested by the user
(``target_digits``) with extra headroom (``guard_digits``) consumed by
roundoff, cancellation and quadrature error estimation.  Every public
operation in the package takes a context and produces values carrying at
least ``working_digits`` decimal digits.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import mpmath as mp
from mpmath import mpf

from .errors import ConfigurationError

# Type alias used throughout the package: an arbitrary-precision real.
Real = mpf

MIN_TARGET_DIGITS = 10
MIN_GUARD_DIGITS = 10

# Magnitudes provably below 10**-(working + UNDERFLOW_MARGIN) may be
# treated as exactly zero; this bounds the exponent range exercised by
# the engine without affecting results at target precision.
UNDERFLOW_MARGIN = 50


@dataclass(frozen=True)
class PrecisionContext:
    """Immutable precision configuration shared by all operations.

    ``working_digits`` is always ``target_digits + guard_digits``; use
    :func:`make_context` rather than constructing instances by hand.
    """

    target_digits: int
    guard_digits: int
    working_digits: int = field(init=False)

    def __post_init__(self) -> None:
        if self.target_digits < MIN_TARGET_DIGITS:
            raise ConfigurationError(
                f"target_digits must be >= {MIN_TARGET_DIGITS}, got {self.target_digits}"
            )
        if self.guard_digits < MIN_GUARD_DIGITS:
            raise ConfigurationError(
                f"guard_digits must be >= {MIN_GUARD_DIGITS}, got {self.guard_digits}"
            )
        object.__setattr__(self, "working_digits", self.target_digits + self.guard_digits)

    def workdps(self):
        """mpmath context manager setting the working decimal precision."""
        return mp.workdps(self.working_digits)

    @property
    def quad_tol_digits(self) -> int:
        """Digits of agreement required for quadrature termination."""
        return self.target_digits + self.guard_digits // 2

    @property
    def underflow_exponent(self) -> int:
        """Factors below 10**-underflow_exponent are treated as exact 0."""
        return self.working_digits + UNDERFLOW_MARGIN

    def underflow_floor(self) -> Real:
        """10**-(working_digits + margin), usable as a threshold."""
        return underflow_floor(self)

    def doubled(self) -> "PrecisionContext":
        """Context with twice the working precision, for test oracles."""
        return PrecisionContext(2 * self.target_digits, 2 * self.guard_digits)


def make_context(target_digits: int) -> PrecisionContext:
    """Build a context for the requested number of decimal digits.

    The guard allowance is ``max(10, ceil(target/2))``: quadrature error
    estimation and cancellation in residuals consume digits, and
    half-again headroom is cheap at the precisions this engine targets.

    Raises :class:`ConfigurationError` for ``target_digits < 10``.
    """
    if not isinstance(target_digits, int) or isinstance(target_digits, bool):
        raise ConfigurationError(f"target_digits must be an integer, got {target_digits!r}")
    if target_digits < MIN_TARGET_DIGITS:
        raise ConfigurationError(
            f"target_digits must be >= {MIN_TARGET_DIGITS}, got {target_digits}"
        )
    guard = max(MIN_GUARD_DIGITS, math.ceil(target_digits / 2))
    return PrecisionContext(target_digits=target_digits, guard_digits=guard)


def to_real(value, ctx: PrecisionContext) -> Real:
    """Convert ``value`` (number or decimal string) at working precision."""
    with ctx.workdps():
        return mpf(value)


@functools.lru_cache(maxsize=None)
def _power_of_ten(exponent: int) -> Real:
    # thresholds only compare magnitudes, so a fixed modest precision is fine
    with mp.workdps(30):
        return mpf(10) ** exponent


def underflow_floor(ctx: PrecisionContext) -> Real:
    """Threshold below which factors may be treated as exactly zero."""
    return _power_of_ten(-ctx.underflow_exponent)


def decimal_digits(value: Real, digits: int) -> str:
    """Decimal string of ``value`` truncated (not rounded) to ``digits``
    significant digits.

    Truncation makes the output at a lower digit count a literal prefix
    of the output at a higher digit count, which is the property the
    constants interface promises.  Only positive values are needed here.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if value <= 0:
        raise ValueError("decimal_digits expects a positive value")
    with mp.workdps(digits + 25):
        v = mpf(value)
        exponent = int(mp.floor(mp.log10(v)))
        digit_str = str(int(mp.floor(v * mpf(10) ** (digits - 1 - exponent))))
        if len(digit_str) != digits:
            # floor(log10) off by one right at a power of ten
            exponent += len(digit_str) - digits
            digit_str = str(int(mp.floor(v * mpf(10) ** (digits - 1 - exponent))))
    if exponent >= 0:
        if exponent + 1 >= digits:
            return digit_str + "0" * (exponent + 1 - digits)
        return digit_str[: exponent + 1] + "." + digit_str[exponent + 1 :]
    return "0." + "0" * (-exponent - 1) + digit_str
