"""
Errors module – exception hierarchy shared by the library and the CLI.

Every exception carries the process exit code the command-line front end
reports for it.  Library code only raises; mapping to exit codes, logging
and the diagnostic line on stderr happen in :mod:`weierstrass_int.cli`.
"""

from __future__ import annotations


class WeierstrassError(Exception):
    """Base class for all errors raised by ``weierstrass_int``."""

    exit_code: int = 5


# ── Input errors (exit 2) ────────────────────────────────────


class DivisionByZero(WeierstrassError, ZeroDivisionError):
    """Division by the zero element of Q, Q(z), Q(z)(t) or K."""

    exit_code = 2


class ParseError(WeierstrassError):
    """Syntax error in an expression or q-string.

    Parameters
    ----------
    message : str
        Human readable description.
    offset : int
        Character offset in the input where parsing failed.
    """

    exit_code = 2

    def __init__(self, message: str, offset: int = 0) -> None:
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


# ── Field / argument errors (exit 3) ─────────────────────────


class InvalidField(WeierstrassError):
    """q is not squarefree, has degree < 3, or is not a polynomial in t."""

    exit_code = 3


class DegenerateCurve(InvalidField):
    """The Weierstrass invariants have zero discriminant."""


class InvalidArgument(WeierstrassError, ValueError):
    """An operation received input outside its domain."""

    exit_code = 3


# ── Hypothesis errors (exit 4) ───────────────────────────────


class HypothesisNotAssured(WeierstrassError):
    """q has nonconstant coefficients and the hypothesis was not assumed."""

    exit_code = 4


class HypothesisViolated(WeierstrassError):
    """A special factor turned out to have nonconstant coefficients."""

    exit_code = 4


# ── Internal errors (exit 5) ─────────────────────────────────


class NotInvertible(WeierstrassError):
    """A denominator has no inverse modulo the requested polynomial."""


class OrderOfZero(WeierstrassError):
    """The order of the zero function was requested (it is +infinity)."""


class ReductionError(WeierstrassError):
    """An internal invariant of a reduction was violated."""
