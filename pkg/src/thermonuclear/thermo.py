"""Thermonuclear functions: closed forms via G/H-functions and quadrature oracles.

Every family has two independent routes.  The closed route goes through the
Mellin-Barnes evaluators (residue series or vertical contour); the oracle
integrates the defining integral with double-exponential quadrature.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Callable, Union

import numpy as np

from . import mellin_barnes as mb
from .errors import (
    CrossCheckFailed,
    DivergentSeries,
    DomainError,
    NoConvergence,
    SignAnomaly,
)
from .quadrature import Integrand, QuadratureConfig, exp_clamped, integrate_finite, integrate_semiinfinite
from .result import EvalResult, Method
from .special import _log_gamma_array, _lower_gamma_kernel, _phi_array, _psi_two_phi, lower_incomplete_gamma_series

SQRT_PI = math.sqrt(math.pi)
TERM_TOL = 1e-14
MIN_TERMS = 5
MAX_TERMS = 300
GROWTH_RUN = 10
RESUM_CANCELLATION = 1e4
H_TOL = 1e-13


def _positive(x) -> bool:
    return complex(x).real > 0


# ---------------------------------------------------------------- requests


@dataclass(frozen=True)
class GeneralI:
    """int_0^d y^(nu-1) exp(-a y - z y^(-rho)) dy; rho < 0 means exp(-z y^eta), eta = -rho."""

    nu: complex
    a: complex
    z: complex
    rho: float
    d: float = math.inf

    def __post_init__(self):
        if self.rho == 0:
            raise DomainError("rho must be non-zero")
        if not _positive(self.nu) or not _positive(self.a):
            raise DomainError("need Re(nu) > 0 and Re(a) > 0")
        if complex(self.z).real < 0:
            raise DomainError("need Re(z) >= 0")
        if not self.d > 0:
            raise DomainError("need d > 0")


@dataclass(frozen=True)
class I1:
    z: float
    nu: float

    def __post_init__(self):
        if not self.z > 0 or not self.nu >= 0:
            raise DomainError("I1 needs z > 0 and nu >= 0")


@dataclass(frozen=True)
class I2:
    z: float
    d: float
    nu: float

    def __post_init__(self):
        if not self.z > 0 or not self.d > 0 or not self.nu >= 1:
            raise DomainError("I2 needs z > 0, d > 0 and nu >= 1")


@dataclass(frozen=True)
class I3:
    z: float
    t: float
    nu: float
    mu: float

    def __post_init__(self):
        if not (self.z > 0 and self.t > 0 and self.nu > 0 and self.mu > 0):
            raise DomainError("I3 needs z, t, nu, mu > 0")


@dataclass(frozen=True)
class I4:
    """Depleted case.  ``printed_exponent`` switches the oracle's Gamow term
    from z y^(-1/2) to z y^(+1/2)."""

    z: float
    delta: float
    b: float
    nu: float
    printed_exponent: bool = False

    def __post_init__(self):
        if not (self.z > 0 and self.delta > 0 and self.b > 0 and self.nu > 0):
            raise DomainError("I4 needs z, delta, b, nu > 0")


@dataclass(frozen=True)
class Kratzel:
    """Z^nu_rho(x) = int_0^inf t^(nu-1) exp(-t^rho - x/t) dt."""

    nu: float
    rho: float
    x: float

    def __post_init__(self):
        if not self.rho > 0 or not self.x >= 0:
            raise DomainError("Kratzel needs rho > 0 and x >= 0")
        if self.x == 0 and not self.nu > 0:
            raise DomainError("Z(0) needs nu/rho > 0")


ThermoRequest = Union[GeneralI, I1, I2, I3, I4, Kratzel]


@dataclass(frozen=True)
class EvalMode:
    kind: str = "closed"  # closed | oracle | crosscheck
    rel_tol: float = 1e-8

    def __post_init__(self):
        if self.kind not in ("closed", "oracle", "crosscheck"):
            raise DomainError(f"unknown mode {self.kind!r}")
        if not 0 < self.rel_tol <= 1e-2:
            raise DomainError("cross-check rel_tol must lie in (0, 1e-2]")


CLOSED = EvalMode("closed")
ORACLE = EvalMode("oracle")


# ---------------------------------------------------------------- helpers


def _finish(res: EvalResult, real: bool) -> EvalResult:
    if real:
        res = res.as_real()
        if isinstance(res.value, complex):
            return replace(res, value=res.value.real)
    return res


def _all_real(*xs) -> bool:
    return all(complex(x).imag == 0 for x in xs)


def _sum_series(term: Callable[[int], EvalResult], check_growth: bool = False):
    """Outer r-series: stop after three consecutive terms below TERM_TOL
    relative to the sum with r >= MIN_TERMS.

    Returns (EvalResult, max |term|).  With ``check_growth`` a run of
    GROWTH_RUN consecutively growing terms raises DivergentSeries.
    """
    total, err, work, quiet, grow = 0j, 0.0, 0, 0, 0
    prev_mag, max_mag = None, 0.0
    methods = set()
    for r in range(MAX_TERMS + 1):
        t = term(r)
        total += t.value
        err += t.abs_error_estimate
        work += t.work
        methods.add(t.method)
        mag = abs(t.value)
        max_mag = max(max_mag, mag)
        if check_growth and prev_mag is not None:
            grow = grow + 1 if mag > prev_mag else 0
            if grow >= GROWTH_RUN:
                raise DivergentSeries(f"series terms grew for {GROWTH_RUN} consecutive r (r={r})")
        prev_mag = mag
        quiet = quiet + 1 if mag <= TERM_TOL * abs(total) else 0
        if quiet >= 3 and r >= MIN_TERMS:
            method = Method.CONTOUR if Method.CONTOUR in methods else Method.RESIDUE_SERIES
            err += 2.2e-16 * max_mag * math.sqrt(r + 1)
            return EvalResult(total, err, method, work, detail="series"), max_mag
    raise NoConvergence(f"outer series not converged after {MAX_TERMS} terms")


def _vertical(log_g, lo: float, hi: float, decay: float, tol: float = H_TOL, c: float | None = None,
              pole_gap: float | None = None) -> EvalResult:
    """(1/2 pi i) int exp(log_g(xi)) dxi on a vertical line between lo and hi."""
    if c is None:
        default = 0.5 * (lo + hi) if math.isfinite(hi) else max(0.0, lo) + 1.0
        c = mb.choose_abscissa(lambda xi: log_g(xi).real, lo, hi, default, decay)
    dist = min(c - lo, hi - c, 1.0)
    if pole_gap is not None:
        dist = min(dist, pole_gap)
    h0 = min(0.5, dist / 1.5)
    return mb.integrate_vertical(lambda xi: np.exp(log_g(xi)), c, tol, h0, symmetric=True)


def _quad(log_f, lower_ok: float | None, d: float = math.inf, rel_tol: float = 1e-12) -> EvalResult:
    """Oracle integral of exp(log_f(y)); ``lower_ok`` is the y^e exponent at 0 (None if it decays)."""
    hint = ("algebraic_at_zero", lower_ok) if lower_ok is not None else ("decays_at_zero", None)

    def f(y):
        with np.errstate(all="ignore"):
            return exp_clamped(log_f(y))

    integrand = Integrand(f, hint)
    cfg = QuadratureConfig(rel_tol=rel_tol)
    if math.isinf(d):
        return integrate_semiinfinite(integrand, cfg)
    return integrate_finite(integrand, d, cfg)


# ---------------------------------------------------------------- general integral, rho > 0


def _general_closed(nu, a, z, rho, d) -> EvalResult:
    real = _all_real(nu, a, z)
    if z == 0:
        return _finish(lower_incomplete_gamma_series(nu, a, d), real)
    if math.isinf(d):
        spec = mb.HFunctionSpec(2, 0, [], [(0, 1 / rho), (nu, 1)])
        res = mb.eval_h(spec, a * z ** (1 / rho), H_TOL)
        return _finish(res.scaled(cmath.exp(-nu * cmath.log(a)) / rho), real)
    x = z ** (1 / rho) / d

    def term(r):
        spec = mb.HFunctionSpec(2, 0, [(nu + r + 1, 1)], [(0, 1 / rho), (nu + r, 1)])
        coef = cmath.exp(r * cmath.log(-a * d) - math.lgamma(r + 1)) if r else 1
        return mb.eval_h(spec, x, H_TOL).scaled(coef)

    try:
        res, max_term = _sum_series(term)
        cancelled = max_term > RESUM_CANCELLATION * abs(res.value)
    except NoConvergence:
        cancelled = True
    if cancelled:
        res = _general_finite_resummed(nu, a, z, rho, d)
    return _finish(res.scaled(cmath.exp(nu * math.log(d)) / rho), real)


def _general_finite_resummed(nu, a, z, rho, d) -> EvalResult:
    """The finite-d series summed inside the Mellin-Barnes integrand.

    sum_r (-ad)^r / (r! (nu + r + xi)) = Phi(nu+xi, nu+xi+1; -ad)/(nu+xi),
    which removes the alternating cancellation for large |a d|.
    """
    log_x = cmath.log(z ** (1 / rho) / d)
    w = a * d

    def log_g(xi):
        k, _, _ = _lower_gamma_kernel(nu + xi, w)
        return _log_gamma_array(xi / rho) + np.log(k) - xi * log_x

    lo = max(0.0, -complex(nu).real)
    res = _vertical(log_g, lo, math.inf, 1 / rho)
    return replace(res, detail="resummed")


def _general_oracle(nu, a, z, rho, d) -> EvalResult:
    real = _all_real(nu, a, z)

    def log_f(y):
        ly = np.log(y)
        return (nu - 1) * ly - a * y - z * np.exp(-rho * ly)

    exponent = None if complex(z).real > 0 else (complex(nu).real - 1)
    res = _quad(log_f, exponent, d)
    return _finish(res, real)


# ---------------------------------------------------------------- general integral, rho = -eta < 0


def _negative_rho_closed(nu, a, z, eta, d, literal: bool = False) -> EvalResult:
    """exp(-a y - z y^eta) over (0, d).

    The default evaluates the Mellin-Barnes forms derived for this case:

        d = inf:  (a^-nu / eta) H^{1,1}_{1,1}[z^(1/eta)/a | (1-nu,1); (0,1/eta)]
        d < inf:  (d^nu / eta) sum_r (-ad)^r/r! H^{1,1}_{1,2}[z^(1/eta) d | (1-nu-r,1); (0,1/eta),(-nu-r,1)]

    ``literal=True`` evaluates the variant with an overall minus sign,
    (ad)^r in place of (-ad)^r and argument z^(1/eta) for the finite branch;
    a negative result then raises SignAnomaly.
    """
    real = _all_real(nu, a, z)
    if z == 0:
        return _finish(lower_incomplete_gamma_series(nu, a, d), real)
    sign = -1 if literal else 1
    if math.isinf(d):
        spec = mb.HFunctionSpec(1, 1, [(1 - nu, 1)], [(0, 1 / eta)])
        res = mb.eval_h(spec, z ** (1 / eta) / a, H_TOL)
        res = res.scaled(sign * cmath.exp(-nu * cmath.log(a)) / eta)
    else:
        x = z ** (1 / eta) if literal else z ** (1 / eta) * d
        base = a * d if literal else -a * d

        def term(r):
            spec = mb.HFunctionSpec(1, 1, [(1 - nu - r, 1)], [(0, 1 / eta), (-nu - r, 1)])
            coef = cmath.exp(r * cmath.log(base) - math.lgamma(r + 1)) if r else 1
            return mb.eval_h(spec, x, H_TOL).scaled(coef)

        res, _ = _sum_series(term)
        res = res.scaled(sign * cmath.exp(nu * math.log(d)) / eta)
    res = _finish(res, real)
    if real and res.value < 0:
        raise SignAnomaly(f"closed form returned {res.value!r} for a positive integral", res.value)
    return res


def _negative_rho_oracle(nu, a, z, eta, d) -> EvalResult:
    def log_f(y):
        ly = np.log(y)
        return (nu - 1) * ly - a * y - z * np.exp(eta * ly)

    return _finish(_quad(log_f, complex(nu).real - 1, d), _all_real(nu, a, z))


# ---------------------------------------------------------------- I1 and I2


def _i1_closed(z, nu) -> EvalResult:
    spec = mb.GFunctionSpec(3, 0, [], [0, 0.5, nu])
    return _finish(mb.eval_g(spec, z * z / 4, H_TOL).scaled(1 / SQRT_PI), True)


def _i1_oracle(z, nu) -> EvalResult:
    def log_f(y):
        ly = np.log(y)
        return (nu - 1) * ly - y - z * np.exp(-0.5 * ly)

    return _finish(_quad(log_f, None), True)


def _i1_complex_order(z: float, w: np.ndarray) -> np.ndarray:
    """I1(z, w) for an array of complex orders w from its two residue chains.

        I1(z, w) = sum_n (-z)^n/n! Gamma(w - n/2)
                 + 2 sum_k (-1)^k/k! Gamma(-2w - 2k) z^(2w + 2k)

    Valid when w keeps away from the half-integers.
    """
    w = np.asarray(w, dtype=complex)
    lz = math.log(z)
    total = np.zeros(w.shape, dtype=complex)
    quiet = 0
    for n in range(400):
        t = np.exp(n * lz - math.lgamma(n + 1) + _log_gamma_array(w - n / 2)) * (-1) ** n
        total += t
        quiet = quiet + 1 if np.all(np.abs(t) <= 1e-17 * np.abs(total)) else 0
        if quiet >= 3 and n > 2 * z:
            break
    else:
        raise NoConvergence("first residue chain of I1 did not converge")
    quiet = 0
    for k in range(200):
        t = 2 * np.exp(_log_gamma_array(-2 * w - 2 * k) + (2 * w + 2 * k) * lz - math.lgamma(k + 1)) * (-1) ** k
        total += t
        quiet = quiet + 1 if np.all(np.abs(t) <= 1e-17 * np.abs(total)) else 0
        if quiet >= 3 and k > z:
            break
    else:
        raise NoConvergence("second residue chain of I1 did not converge")
    return total


def _i2_closed(z, d, nu) -> EvalResult:
    x = z * z / (4 * d)

    def term(r):
        spec = mb.GFunctionSpec(3, 0, [nu + r + 1], [nu + r, 0, 0.5])
        coef = math.exp(r * math.log(d) - math.lgamma(r + 1)) * (-1) ** r
        return mb.eval_g(spec, x, H_TOL).scaled(coef)

    try:
        res, max_term = _sum_series(term)
        cancelled = max_term > RESUM_CANCELLATION * abs(res.value)
    except NoConvergence:
        cancelled = True
    if cancelled:
        res = _i2_resummed(z, d, nu)
    return _finish(res.scaled(d ** nu / SQRT_PI), True)


def _i2_resummed(z, d, nu) -> EvalResult:
    """sum_r (-d)^r/r! G^{3,0}_{1,3} folded into one Mellin-Barnes integral.

    The r-sum of Gamma(u)Gamma(u+1/2)/(nu+r+u) is Gamma(u)Gamma(u+1/2)
    Phi(nu+u, nu+u+1; -d)/(nu+u).
    """
    log_x = math.log(z * z / (4 * d))

    def log_g(u):
        k, _, _ = _lower_gamma_kernel(nu + u, d)
        return _log_gamma_array(u) + _log_gamma_array(u + 0.5) + np.log(k) - u * log_x

    return replace(_vertical(log_g, 0.0, math.inf, 2.0), detail="resummed")


def _i2_oracle(z, d, nu) -> EvalResult:
    def log_f(y):
        ly = np.log(y)
        return (nu - 1) * ly - y - z * np.exp(-0.5 * ly)

    return _finish(_quad(log_f, None, d), True)


# ---------------------------------------------------------------- I3


def _half_offset(nu: float, scale: float) -> float:
    """Smallest c > 0 (bumped past 0.05) with nu + scale*c = 1/2 mod 1."""
    c = ((0.5 - nu) % 1.0) / scale
    if c < 0.05:
        c += 1.0 / scale
    return c


def _i3_h_form(z, t, nu, mu) -> EvalResult:
    """The two H-function series summed inside their common contour.

    On Re s = c both series come from Gamma(s) Gamma(nu) t^(nu + mu s)
    Psi(nu, nu + mu s + 1; t) z^(-s), with Psi taken from its two-Phi form.
    Their individual contours cannot be separated from the spurious poles
    of Gamma(-nu - mu s), so c is placed midway between those
    (nu + mu c = 1/2 mod 1).
    """
    c = _half_offset(nu, mu)
    log_t, log_z, lg_nu = math.log(t), math.log(z), math.lgamma(nu)

    def log_g(s):
        psi, _, _ = _psi_two_phi(nu, nu + mu * s + 1, t)
        return _log_gamma_array(s) + lg_nu + (nu + mu * s) * log_t + np.log(psi) - s * log_z

    res = _vertical(log_g, 0.0, math.inf, 1.0, c=c, pole_gap=min(c, 0.5 / mu))
    return _finish(replace(res, detail="h_form"), True)


def _i3_g_form(z, t, nu) -> EvalResult:
    """mu = 1/2 form in the G-function variable u = s/2.

    After the duplication formula the integrand is

        Gamma(u) Gamma(u+1/2)/sqrt(pi) (z^2/4)^(-u)
          * [Gamma(nu) Gamma(-nu-u)/Gamma(-u) t^(nu+u) Phi(nu, nu+u+1; t)
             + Gamma(nu+u) Phi(-u, 1-nu-u; t)]

    whose two pieces are the G^{3,1}_{2,4} and G^{3,2}_{2,5} r-sums.
    """
    c = _half_offset(nu, 1.0)
    log_t, log_x, lg_nu = math.log(t), math.log(z * z / 4), math.lgamma(nu)

    def log_g(u):
        head = _log_gamma_array(u) + _log_gamma_array(u + 0.5) - 0.5 * math.log(math.pi) - u * log_x
        phi1, _, _ = _phi_array(nu, nu + u + 1, t)
        phi2, _, _ = _phi_array(-u, 1 - nu - u, t)
        first = np.exp(lg_nu + _log_gamma_array(-nu - u) - _log_gamma_array(-u, poles="inf") + (nu + u) * log_t) * phi1
        second = np.exp(_log_gamma_array(nu + u)) * phi2
        return head + np.log(first + second)

    res = _vertical(log_g, 0.0, math.inf, 2.0, c=c, pole_gap=min(c, 0.5))
    return _finish(replace(res, detail="g_form"), True)


def _i3_closed(z, t, nu, mu, route: str | None = None) -> EvalResult:
    if route is None:
        route = "g_form" if mu == 0.5 else "h_form"
    if route == "g_form":
        if mu != 0.5:
            raise DomainError("the G-function form needs mu = 1/2")
        return _i3_g_form(z, t, nu)
    if route == "h_form":
        return _i3_h_form(z, t, nu, mu)
    raise ValueError(f"unknown I3 route {route!r}")


def _i3_oracle(z, t, nu, mu) -> EvalResult:
    def log_f(y):
        return (nu - 1) * np.log(y) - y - z * np.exp(-mu * np.log(y + t))

    return _finish(_quad(log_f, nu - 1 if nu < 1 else None), True)


# ---------------------------------------------------------------- I4


def _i4_series(z, delta, b, nu, route: str = "g_series") -> EvalResult:
    """Term-by-term series; ``g_series`` uses G^{3,0}_{0,3}, ``h_series`` uses H^{2,0}_{0,2}."""
    x = z * z / 4

    def term(r):
        if route == "g_series":
            spec = mb.GFunctionSpec(3, 0, [], [r / 2, (r + 1) / 2, nu + r * delta + r / 2])
            coef = math.exp(r * math.log(2 * b / z) - math.lgamma(r + 1)) * (-1) ** r / SQRT_PI
            return mb.eval_g(spec, x, H_TOL).scaled(coef)
        spec = mb.HFunctionSpec(2, 0, [], [(r, 1), (nu + r * delta + r / 2, 0.5)])
        coef = math.exp(r * math.log(b / z) - math.lgamma(r + 1)) * (-1) ** r
        return mb.eval_h(spec, z, H_TOL).scaled(coef)

    res, _ = _sum_series(term, check_growth=True)
    return res


def _i4_resummed(z, delta, b, nu) -> EvalResult:
    """I4 = (1/2 pi i) int Gamma(s) b^(-s) I1(z, nu - delta s) ds, Re s = c > 0.

    The Mellin-Barnes integral behind the b-expansion; it converges for
    every delta > 0, unlike the expansion itself when delta > 1.  c is set
    so that nu - delta c = 1/4 mod 1/2, away from the half-integer orders
    where the residue chains of I1 collide.
    """
    c = ((nu - 0.25) % 0.5) / delta
    if c < 0.05:
        c += 0.5 / delta
    log_b = math.log(b)

    def log_g(s):
        return _log_gamma_array(s) - s * log_b + np.log(_i1_complex_order(z, nu - delta * s))

    res = _vertical(log_g, 0.0, math.inf, 1.0, c=c, pole_gap=min(c, 0.25 / delta))
    return replace(res, detail="resummed")


def _i4_closed(z, delta, b, nu, route: str = "g_series", allow_resum: bool = True) -> EvalResult:
    if not b / z < 1:
        raise DivergentSeries(f"b/z = {b / z:g} >= 1: outside the binomial-expansion regime")
    try:
        res = _i4_series(z, delta, b, nu, route)
    except (DivergentSeries, NoConvergence):
        if not allow_resum:
            raise
        res = _i4_resummed(z, delta, b, nu)
    return _finish(res, True)


def _i4_oracle(z, delta, b, nu, printed_exponent: bool = False) -> EvalResult:
    g = 0.5 if printed_exponent else -0.5

    def log_f(y):
        ly = np.log(y)
        return (nu - 1) * ly - y - b * np.exp(delta * ly) - z * np.exp(g * ly)

    exponent = nu - 1 if printed_exponent else None
    return _finish(_quad(log_f, exponent), True)


# ---------------------------------------------------------------- Kratzel


def _kratzel_closed(nu, rho, x) -> EvalResult:
    """Z^nu_rho(x) through u = t^rho:

        Z^nu_rho(x) = (1/rho) int_0^inf u^(nu/rho - 1) exp(-u - x u^(-1/rho)) du,

    i.e. the general integral with (nu/rho, a=1, z=x, rho'=1/rho, d=inf).
    """
    if x == 0:
        v = math.exp(math.lgamma(nu / rho)) / rho
        return EvalResult(v, 4e-16 * v, Method.CLOSED_FORM, 1)
    return _general_closed(nu / rho, 1.0, x, 1.0 / rho, math.inf).scaled(1.0 / rho)


def _kratzel_oracle(nu, rho, x) -> EvalResult:
    def log_f(t):
        lt = np.log(t)
        return (nu - 1) * lt - np.exp(rho * lt) - x / t

    return _finish(_quad(log_f, None if x > 0 else nu - 1), True)


# ---------------------------------------------------------------- dispatch


def _routes(req: ThermoRequest, **opts):
    if isinstance(req, GeneralI):
        if req.rho < 0:
            eta = -req.rho
            return (
                lambda: _negative_rho_closed(req.nu, req.a, req.z, eta, req.d, opts.get("literal", False)),
                lambda: _negative_rho_oracle(req.nu, req.a, req.z, eta, req.d),
            )
        return (
            lambda: _general_closed(req.nu, req.a, req.z, req.rho, req.d),
            lambda: _general_oracle(req.nu, req.a, req.z, req.rho, req.d),
        )
    if isinstance(req, I1):
        return lambda: _i1_closed(req.z, req.nu), lambda: _i1_oracle(req.z, req.nu)
    if isinstance(req, I2):
        return lambda: _i2_closed(req.z, req.d, req.nu), lambda: _i2_oracle(req.z, req.d, req.nu)
    if isinstance(req, I3):
        return (
            lambda: _i3_closed(req.z, req.t, req.nu, req.mu, opts.get("route")),
            lambda: _i3_oracle(req.z, req.t, req.nu, req.mu),
        )
    if isinstance(req, I4):
        return (
            lambda: _i4_closed(req.z, req.delta, req.b, req.nu, opts.get("route") or "g_series",
                               opts.get("allow_resum", True)),
            lambda: _i4_oracle(req.z, req.delta, req.b, req.nu, req.printed_exponent),
        )
    if isinstance(req, Kratzel):
        return lambda: _kratzel_closed(req.nu, req.rho, req.x), lambda: _kratzel_oracle(req.nu, req.rho, req.x)
    raise TypeError(f"not a thermonuclear request: {req!r}")


@dataclass(frozen=True)
class CrossCheckReport:
    closed: EvalResult
    oracle: EvalResult
    discrepancy: float
    rel_tol: float

    @property
    def passed(self) -> bool:
        return self.discrepancy <= self.rel_tol


def cross_check(req: ThermoRequest, rel_tol: float = 1e-8, **opts) -> CrossCheckReport:
    """Evaluate both routes and report their relative discrepancy."""
    closed_fn, oracle_fn = _routes(req, **opts)
    closed, oracle = closed_fn(), oracle_fn()
    scale = max(abs(oracle.value), 1e-300)
    return CrossCheckReport(closed, oracle, abs(closed.value - oracle.value) / scale, rel_tol)


def evaluate(req: ThermoRequest, mode: EvalMode = CLOSED, **opts) -> EvalResult:
    """Evaluate a request in the given mode.

    Cross-check mode returns the closed-form result when both routes agree
    within ``mode.rel_tol`` and raises CrossCheckFailed otherwise.
    """
    closed_fn, oracle_fn = _routes(req, **opts)
    if mode.kind == "closed":
        return closed_fn()
    if mode.kind == "oracle":
        return oracle_fn()
    report = cross_check(req, mode.rel_tol, **opts)
    if not report.passed:
        raise CrossCheckFailed(report.closed, report.oracle, report.discrepancy, mode.rel_tol)
    return report.closed


def eval_I_general(req: GeneralI, mode: EvalMode = CLOSED) -> EvalResult:
    return evaluate(req, mode)


def eval_I_general_negative_rho(nu, a, z, eta, d=math.inf, mode: EvalMode = CLOSED, literal: bool = False) -> EvalResult:
    if not eta > 0:
        raise DomainError("need eta > 0")
    return evaluate(GeneralI(nu, a, z, -eta, d), mode, literal=literal)


def eval_I1(z, nu, mode: EvalMode = CLOSED) -> EvalResult:
    return evaluate(I1(z, nu), mode)


def eval_I2(z, d, nu, mode: EvalMode = CLOSED) -> EvalResult:
    return evaluate(I2(z, d, nu), mode)


def eval_I3(z, t, nu, mu, mode: EvalMode = CLOSED, route: str | None = None) -> EvalResult:
    return evaluate(I3(z, t, nu, mu), mode, route=route)


def eval_I4(z, delta, b, nu, mode: EvalMode = CLOSED, route: str = "g_series", allow_resum: bool = True,
            printed_exponent: bool = False) -> EvalResult:
    return evaluate(I4(z, delta, b, nu, printed_exponent), mode, route=route, allow_resum=allow_resum)


def eval_kratzel(nu, rho, x, mode: EvalMode = CLOSED) -> EvalResult:
    return evaluate(Kratzel(nu, rho, x), mode)
