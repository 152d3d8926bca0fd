"""Exception hierarchy for geocrystal.

Evaluation errors (DomainError and subclasses) mark sample points that lie outside the
domain of a birational map. Verification suites treat them as resamples, never failures.
"""

from __future__ import annotations


class GeoCrystalError(Exception):
    """Base class for all geocrystal errors."""


class DomainError(GeoCrystalError):
    """A point lies outside the domain of a rational map."""


class DivisionByZero(DomainError):
    """A denominator sub-expression evaluated to zero."""


class UnboundVariable(GeoCrystalError):
    def __init__(self, name: str) -> None:
        super().__init__(f"Unbound variable: {name}")
        self.name = name


class RankOutOfRange(GeoCrystalError, ValueError):
    """Rank outside the bounds of the affine family."""


class UnsupportedModel(GeoCrystalError, ValueError):
    """The requested coordinate model does not exist for the type."""


class BadConfig(GeoCrystalError, ValueError):
    """Invalid suite configuration or CLI input."""
