"""Exception hierarchy shared by every crystalcone module."""

from __future__ import annotations

__all__ = [
    "CrystalConeError",
    "UnsupportedType",
    "BadIndex",
    "NotReduced",
    "NotDecomposable",
    "PositivityViolation",
    "NotMutable",
    "ChartUnsupported",
    "NotDominant",
    "Unbounded",
    "ScaleError",
    "Inconclusive",
    "NotLaurent",
]


class CrystalConeError(Exception):
    """Base class for all domain errors (CLI exit code 2)."""


class UnsupportedType(CrystalConeError):
    """Root system family or rank outside the supported range."""


class BadIndex(CrystalConeError):
    """A node index lies outside ``[1, rank]``."""


class NotReduced(CrystalConeError):
    """A word is not a reduced expression (or not one for ``w0``)."""


class NotDecomposable(CrystalConeError):
    """A leading principal minor vanishes identically."""


class PositivityViolation(CrystalConeError):
    """A supposedly subtraction-free expression has a negative coefficient."""


class NotMutable(CrystalConeError):
    """Mutation requested in a frozen direction."""


class ChartUnsupported(CrystalConeError):
    """The requested quantity is not available in the given chart."""


class NotDominant(CrystalConeError):
    """A weight that must be dominant is not."""


class Unbounded(CrystalConeError):
    """A polyhedron that must be bounded is not."""


class ScaleError(CrystalConeError):
    """Floating point overflow, underflow or a pole during evaluation."""


class Inconclusive(CrystalConeError):
    """Numerical data too close to the noise floor to support a verdict."""


class NotLaurent(CrystalConeError):
    """A rational function failed to reduce to a Laurent polynomial."""
