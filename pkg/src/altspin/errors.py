"""Exception types shared across the package."""

from __future__ import annotations


class AltSpinError(Exception):
    pass


class Not2Regular(AltSpinError, ValueError):
    pass


class NotPRegular(AltSpinError, ValueError):
    pass


class NotAPartition(AltSpinError, ValueError):
    pass


class IndexOutOfRange(AltSpinError, IndexError):
    pass


class WeightMismatch(AltSpinError, ValueError):
    pass


class BadFamily(AltSpinError, ValueError):
    pass


class CaseShapeMismatch(AltSpinError, ValueError):
    pass


class ShapeMismatch(AltSpinError, ValueError):
    pass


class DegreeZero(AltSpinError, ValueError):
    pass


class NotIrreducible(AltSpinError, ValueError):
    pass


class CertificationError(AltSpinError, RuntimeError):
    """The meataxe exhausted its word budget without a certificate."""


class UnmatchedFactor(AltSpinError, RuntimeError):
    pass


class BadShape(AltSpinError, ValueError):
    pass


class BadComposition(AltSpinError, ValueError):
    pass


class ResourceGuard(AltSpinError, RuntimeError):
    pass
