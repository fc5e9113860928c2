"""Double-exponential quadrature: tanh-sinh on (0, d), exp-sinh on (a, inf).

These are the reference ("oracle") integrators.  They share nothing with the
Mellin-Barnes machinery except numpy.

Integrands are vectorised callables ``f(y: ndarray) -> ndarray``.  Node
tables are built once per (rule, level) and cached read-only.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, NoConvergence
from .result import EvalResult, Method

# exp() arguments below this are flushed to an exact zero
EXP_FLOOR = -745.0

_T_MAX = 6.5
_MIN_LEVEL = 3


def exp_clamped(arg):
    """exp(arg) with arguments below -745 mapped to exactly 0.

    Integrands such as y^(nu-1) exp(-y - z y^(-rho)) are evaluated as one
    exponential of a log-space sum; flushing here avoids 0 * inf -> nan near
    the endpoints.
    """
    arg = np.asarray(arg)
    if np.iscomplexobj(arg):
        re = np.where(arg.real < EXP_FLOOR, -np.inf, arg.real)
        return np.exp(re + 1j * np.where(np.isfinite(re), arg.imag, 0.0))
    return np.exp(np.where(arg < EXP_FLOOR, -np.inf, arg))


@dataclass(frozen=True)
class Integrand:
    """A vectorised integrand on y > 0.

    ``hint`` is ``None``, ``("decays_at_zero", None)`` or
    ``("algebraic_at_zero", exponent)``; an algebraic singularity y^e with
    e < -1/2 is removed by the substitution y = v^(1/(e+1)).
    ``support`` is an optional finite upper end of the support.
    """

    f: Callable[[np.ndarray], np.ndarray]
    hint: tuple | None = None
    support: float | None = None

    def __call__(self, y):
        return self.f(y)

    @property
    def algebraic_exponent(self) -> float | None:
        if self.hint and self.hint[0] == "algebraic_at_zero":
            return float(self.hint[1])
        return None


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-12
    max_levels: int = 12

    def __post_init__(self):
        if not 0 < self.rel_tol <= 1e-3:
            raise DomainError("rel_tol must lie in (0, 1e-3]")
        if self.max_levels < _MIN_LEVEL:
            raise DomainError(f"max_levels must be at least {_MIN_LEVEL}")


def _freeze(*arrays):
    for a in arrays:
        a.setflags(write=False)
    return arrays


def _level_t(level: int) -> np.ndarray:
    """Abscissae t = k h (h = 2^-level) that are new at this level."""
    h = 2.0 ** -level
    n = int(_T_MAX / h)
    k = np.arange(-n, n + 1)
    if level > 0:
        k = k[k % 2 == 1]
    return k * h


@functools.lru_cache(maxsize=None)
def _tanh_sinh_nodes(level: int):
    """Nodes on (0, 1): x = 1/(1 + e^(-2u)), u = (pi/2) sinh t, and weights dx/dt."""
    t = _level_t(level)
    u = 0.5 * math.pi * np.sinh(t)
    e = np.exp(-2.0 * np.abs(u))
    x = np.where(u >= 0, 1.0 / (1.0 + e), e / (1.0 + e))
    w = math.pi * np.cosh(t) * e / (1.0 + e) ** 2
    keep = (x > 0) & (w > 0)
    return _freeze(x[keep], w[keep])


@functools.lru_cache(maxsize=None)
def _exp_sinh_nodes(level: int):
    """Nodes on (0, inf): x = exp((pi/2) sinh t), and weights dx/dt."""
    t = _level_t(level)
    log_x = 0.5 * math.pi * np.sinh(t)
    keep = np.abs(log_x) < 700.0
    t, log_x = t[keep], log_x[keep]
    x = np.exp(log_x)
    w = 0.5 * math.pi * np.cosh(t) * x
    return _freeze(x, w)


def _weighted_sum(g, x, w) -> tuple[complex, float]:
    with np.errstate(all="ignore"):
        vals = np.asarray(g(x))
        prod = vals * w
    bad = np.isnan(prod)
    if bad.any():
        prod = np.where(bad, 0.0, prod)
    if not np.all(np.isfinite(prod)):
        raise NoConvergence("integrand is not finite at a quadrature node")
    return complex(np.sum(prod)), float(np.sum(np.abs(prod)))


def _run_levels(g, nodes, cfg: QuadratureConfig) -> EvalResult:
    total, l1, prev, work = 0j, 0.0, None, 0
    for level in range(cfg.max_levels + 1):
        h = 2.0 ** -level
        x, w = nodes(level)
        s, a = _weighted_sum(g, x, w)
        work += x.size
        # trapezoid sums at step h reuse the step-2h nodes
        total = total / 2 + s * h if level else s
        l1 = l1 / 2 + a * h if level else a
        if prev is not None:
            diff = abs(total - prev)
            if level >= _MIN_LEVEL and (diff <= cfg.rel_tol * abs(total) or diff <= 1e-16 * l1):
                err = max(diff, 2.2e-16 * l1)
                return EvalResult(_realify(total), err, Method.QUADRATURE, work)
        prev = total
    raise NoConvergence(f"quadrature did not reach rel_tol={cfg.rel_tol:g} in {cfg.max_levels} levels")


def _realify(v: complex):
    return v.real if v.imag == 0 else v


def _desingularise(f: Integrand, upper: float | None):
    """Apply y = v^(1/p), p = e + 1, for a strong algebraic endpoint singularity."""
    e = f.algebraic_exponent
    if e is None or e >= -0.5:
        return f.f, upper
    if e <= -1:
        raise DomainError(f"integrand y^{e} is not integrable at 0")
    p = e + 1.0

    def g(v):
        y = v ** (1.0 / p)
        return f.f(y) * y / (p * v)

    return g, (upper ** p if upper is not None else None)


def integrate_finite(f: Integrand, d: float, cfg: QuadratureConfig | None = None) -> EvalResult:
    """int_0^d f(y) dy by tanh-sinh quadrature with level doubling."""
    cfg = cfg or QuadratureConfig()
    if not (d > 0 and math.isfinite(d)):
        raise DomainError("finite quadrature needs 0 < d < inf")
    g, upper = _desingularise(f, d)

    def scaled(x):
        return g(upper * x) * upper

    return _run_levels(scaled, _tanh_sinh_nodes, cfg)


def integrate_semiinfinite(f: Integrand, cfg: QuadratureConfig | None = None, lower: float = 0.0) -> EvalResult:
    """int_lower^inf f(y) dy by exp-sinh quadrature with level doubling.

    An integrand with finite ``support`` is handed to the finite rule on
    (0, support) instead.
    """
    cfg = cfg or QuadratureConfig()
    if f.support is not None:
        if lower != 0.0:
            raise DomainError("finite-support integrands only integrate from 0")
        return integrate_finite(f, f.support, cfg)
    if lower == 0.0:
        g, _ = _desingularise(f, None)
    else:
        g = lambda x: f.f(lower + x)  # noqa: E731
    return _run_levels(g, _exp_sinh_nodes, cfg)
