#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Exception hierarchy for blaschke-conformal.

Every error carries the process exit code the command-line front end reports
for it, so callers never need a separate mapping table.
"""

from typing import Optional


class BlaschkeConformalError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 4


class InvalidInput(BlaschkeConformalError):
    """Input values or files that do not describe a valid object."""

    exit_code = 3


class DegreeOutOfRange(InvalidInput):
    """A closed-form solver was handed a polynomial of unsupported degree."""


class ZeroInput(InvalidInput):
    """A radical was requested for zero."""


class OutsideDisk(InvalidInput):
    """A point required to lie in the open unit disk does not."""


class WrongDegree(InvalidInput):
    """A construction was called with a Blaschke product of the wrong degree."""


class WrongCase(InvalidInput):
    """A verification gate was requested for a model of another case."""


class DegenerateCriticalValues(InvalidInput):
    """The two prescribed critical values coincide."""


class UnsupportedInput(BlaschkeConformalError):
    """No construction exists for this input (degree >= 4, not equally spaced)."""

    exit_code = 5


class NotEquallySpaced(UnsupportedInput):
    """The zeros are not a rotated copy of the n-th roots of unity."""


class NumericalFailure(BlaschkeConformalError):
    """A numerical routine failed to reach its guarantee."""

    exit_code = 4


class NonConvergence(NumericalFailure):
    """An iterative method hit its iteration cap."""


class SolverFailure(NumericalFailure):
    """A root solver missed its residual bound or found the wrong number of roots in the disk."""


class ZeroU(NumericalFailure):
    """The U radicand of the cubic formula vanished (w is a critical value)."""


class CertificateFailure(NumericalFailure):
    """A finished model failed its residual certificate."""


class LocatedFailure(NumericalFailure):
    """A numerical failure tied to a point of the disk."""

    def __init__(self, message: str, where: Optional[complex] = None):
        """Initialize the error.

        Args:
            message: Human readable description
            where: The offending point, if known
        """
        super().__init__(message)
        self.where = where


class StepCollapse(LocatedFailure):
    """Continuation step bisection bottomed out (fiber roots collided)."""


class AmbiguousFiber(LocatedFailure):
    """Two fiber roots are indistinguishable at the evaluation point."""


class BranchSelectionFailure(NumericalFailure):
    """Zero or several continuation seeds passed every gate."""


class SelfIntersection(BlaschkeConformalError):
    """The image of the boundary circle is not a simple closed curve."""

    exit_code = 2

    def __init__(self, message: str, parameters=()):
        """Initialize the error.

        Args:
            message: Human readable description
            parameters: Pairs of boundary parameters whose segments cross
        """
        super().__init__(message)
        self.parameters = list(parameters)
