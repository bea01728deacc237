"""Exception types shared across the package.

The CLI maps these onto exit codes: invalid input is 2, a violated
cross-check is 3, precision exhaustion is 4. Budget exhaustion is not an
exception; it surfaces as an Unknown verdict carried in result objects.
"""
from __future__ import annotations


class PerronPolyError(Exception):
    """Base class for package-specific failures."""


class InvalidInputError(PerronPolyError, ValueError):
    """Malformed or out-of-contract input (bad coefficients, composite p, ...)."""


class OracleViolationError(PerronPolyError):
    """Two routes that must agree (closed form vs oracle) disagreed.

    This always indicates a defect somewhere, never a property of the input,
    so it is raised rather than returned.
    """


class PrecisionExhaustedError(PerronPolyError):
    """Certified numeric decision still ambiguous at the highest allowed precision."""


class NonConvergenceError(PerronPolyError):
    """Iterative eigenvalue computation hit its iteration cap."""
