"""Exception types shared across the package.

Validation failures carry a short machine-readable ``code`` so callers (and
the CLI) can distinguish rejection reasons without parsing messages.
"""

from __future__ import annotations


class ZetaFactorError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(ZetaFactorError, ValueError):
    """A constructor or operation rejected its inputs.

    ``code`` values in use:
      delta-excluded   exponent in (-1, 0), integrable but unbounded at the
                       left endpoint
      delta-zero       exponent 0, a constant pulse
      delta-negative   exponent <= -1, not integrable
      deltas-order     additive exponents not nonincreasing
      width            pulse width outside (0, a]
      height           pulse left endpoint at or below the configured floor
      partition-size   partition with fewer than two parts
      partition-sum    parts do not sum to the stated total
      partition-order  parts not nonincreasing or not positive
      policy           evaluation policy field out of range
      quad-spec        quadrature specification field out of range
      spec             decomposition layout out of range
      mode             unknown weight mode
    """

    def __init__(self, message: str, code: str):
        super().__init__(message)
        self.code = code


class DomainError(ZetaFactorError, ValueError):
    """An evaluation point lies outside the operation's domain."""


class CacheRangeError(DomainError):
    """A height falls outside the checkpointed range of an integral cache."""


class ImageRangeError(DomainError):
    """A target value lies outside the attainable image of the height map.

    Carries the nearest attainable values as ``lo`` and ``hi``.
    """

    def __init__(self, message: str, lo: float, hi: float):
        super().__init__(message)
        self.lo = lo
        self.hi = hi


class NonFiniteSampleError(ZetaFactorError, ValueError):
    """An integrand returned a non-finite value; ``point`` names the sample."""

    def __init__(self, message: str, point: float):
        super().__init__(message)
        self.point = point


class BracketError(ZetaFactorError, RuntimeError):
    """Root bracketing failed; carries the observed extrema of the scan."""

    def __init__(self, message: str, lo: float = float("nan"), hi: float = float("nan")):
        super().__init__(message)
        self.lo = lo
        self.hi = hi


class DivisionGuardError(ZetaFactorError, ZeroDivisionError):
    """A denominator in a factor product fell below the safe threshold."""


class CacheFormatError(ZetaFactorError, ValueError):
    """An integral cache file is malformed or does not match the policy."""
