"""Exception hierarchy shared by every evaluator in the package."""


class ThermoError(Exception):
    """Base class for all numerical failures raised by this package."""


class DomainError(ThermoError, ValueError):
    """Arguments outside the domain where the requested quantity is defined."""


class PoleError(DomainError):
    """A gamma-function argument sits on (or within tolerance of) a pole."""


class NoConvergence(ThermoError):
    """A series or quadrature ran out of terms/levels before meeting tolerance."""


class DivergentSeries(NoConvergence):
    """Terms of an expansion keep growing, or the expansion's validity guard failed."""


class CoincidentPoles(ThermoError):
    """Two pole chains coincide, so simple-pole residue summation does not apply."""


class NoSeparatingLine(ThermoError):
    """No vertical line separates the left pole chains from the right ones."""


class SignAnomaly(ThermoError):
    """A representation of a positive integral returned a negative value."""

    def __init__(self, message, value):
        super().__init__(message)
        self.value = value


class CrossCheckFailed(ThermoError):
    """Closed form and quadrature oracle disagree beyond the requested tolerance."""

    def __init__(self, closed, oracle, discrepancy, rel_tol):
        super().__init__(
            f"closed form {closed.value!r} vs oracle {oracle.value!r}: "
            f"relative discrepancy {discrepancy:.3e} > {rel_tol:.1e}"
        )
        self.closed = closed
        self.oracle = oracle
        self.discrepancy = discrepancy
        self.rel_tol = rel_tol
