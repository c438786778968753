"""Exception hierarchy shared by every module in the package."""


class VacuumMirrorError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(VacuumMirrorError, ValueError):
    """An argument lies outside the domain an operation accepts."""


class BracketError(VacuumMirrorError, ValueError):
    """A search bracket contains no interior extremum."""


class GeometryError(VacuumMirrorError, ValueError):
    """A residue contour would enclose or touch a second pole."""


class PrescriptionError(VacuumMirrorError, ValueError):
    """A kernel pole violates the upper-half-plane placement."""


class ConvergenceError(VacuumMirrorError, ArithmeticError):
    """An extrapolation ladder does not converge monotonically."""


class ResolutionError(VacuumMirrorError, ValueError):
    """A quadrature mesh is too coarse to resolve the regulated ridges."""


class NonlinearityError(VacuumMirrorError, ArithmeticError):
    """Variance samples deviate from the linear growth law."""


class ScenarioError(VacuumMirrorError, ValueError):
    """A physical scenario violates one or more validity bounds."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class DivisionError(VacuumMirrorError, ZeroDivisionError):
    """A ratio denominator is numerically zero."""
