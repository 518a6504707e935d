"""Error and warning types shared across the package."""


class DomainError(ValueError):
    """Parameter or argument combination outside the admissible domain."""


class RegionError(ValueError):
    """A point is not in the region a representation requires."""


class GeometryError(ValueError):
    """Contour geometry yields no decay, or no admissible angle window."""


class QuadratureError(RuntimeError):
    """Requested tolerance unreachable within the node budget."""


class PoleProximityError(ValueError):
    """An integrand pole sits closer to the contour than the safety floor."""


class DegenerateDenominator(ZeroDivisionError):
    """A residue or expansion denominator is below its degeneracy floor."""


class MagnitudeFloor(ValueError):
    """Arguments too small in magnitude for the asymptotic expansion."""


class BudgetExceeded(RuntimeError):
    """A summation could not certify its tail within the given budget."""


class ThinWindowWarning(UserWarning):
    """The admissible contour-angle window is thin; accuracy may degrade."""
