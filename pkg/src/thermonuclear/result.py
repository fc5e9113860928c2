from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace


class Method(str, enum.Enum):
    RESIDUE_SERIES = "ResidueSeries"
    CONTOUR = "Contour"
    QUADRATURE = "Quadrature"
    CLOSED_FORM = "ClosedForm"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class EvalResult:
    """Value of one evaluation together with its bookkeeping.

    ``value`` is a Python ``complex`` from the Mellin-Barnes layer; the
    thermonuclear-function layer converts it to ``float`` when every input
    is real.  ``detail`` is a free-form route tag such as ``"resummed"``.
    """

    value: complex | float
    abs_error_estimate: float
    method: Method
    work: int
    converged: bool = True
    detail: str = ""

    def __post_init__(self):
        if self.work < 0:
            raise ValueError("work counter must be non-negative")
        if self.abs_error_estimate < 0 or math.isnan(self.abs_error_estimate):
            raise ValueError("error estimate must be a non-negative number")
        if self.converged and not math.isfinite(self.abs_error_estimate):
            raise ValueError("a converged result needs a finite error estimate")

    @property
    def rel_error_estimate(self) -> float:
        mag = abs(self.value)
        return self.abs_error_estimate / mag if mag else math.inf

    def scaled(self, factor, method: Method | None = None, extra_work: int = 0) -> "EvalResult":
        """Multiply value and error by ``factor``."""
        return replace(
            self,
            value=self.value * factor,
            abs_error_estimate=self.abs_error_estimate * abs(factor),
            method=method or self.method,
            work=self.work + extra_work,
        )

    def as_real(self, rel_imag_tol: float = 1e-8) -> "EvalResult":
        """Drop a negligible imaginary part left over from complex arithmetic."""
        v = complex(self.value)
        if abs(v.imag) > rel_imag_tol * max(abs(v.real), 1e-300) + self.abs_error_estimate:
            return self
        return replace(self, value=v.real)
