"""Acceptance suite: one pass/fail line per criterion.

Used by ``thermonuclear selftest`` and by the test-suite.  Each check
returns a CriterionResult; ``run_all`` prints them as it goes.
"""
from __future__ import annotations

import itertools
import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import qstat, special, thermo
from .errors import DomainError, ThermoError


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    summary: str
    seconds: float = 0.0
    notes: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} -- {self.summary} ({self.seconds:.2f}s)"


def _rel(a, b) -> float:
    return abs(a - b) / abs(b)


def _timed(fn):
    def wrapper():
        t0 = time.perf_counter()
        res = fn()
        res.seconds = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def criterion_1() -> CriterionResult:
    """I1 closed form vs oracle, 1e-8, under 10 s."""
    t0 = time.perf_counter()
    worst = 0.0
    for z, nu in itertools.product([0.1, 0.5, 1, 2, 5], [0.5, 1.5, 2, 2.5, 3.5]):
        worst = max(worst, thermo.cross_check(thermo.I1(z, nu)).discrepancy)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 10
    return CriterionResult(1, "I1 dual path", ok, f"25 cells, max rel diff {worst:.2e} (tol 1e-8), {elapsed:.2f}s (< 10s)")


@_timed
def criterion_2() -> CriterionResult:
    """I2 series vs oracle at 1e-8; I2(1, 50, 2) vs I1(1, 2) at 1e-6."""
    worst = 0.0
    for z, d, nu in itertools.product([0.5, 1, 2], [0.5, 1, 2, 5], [1, 2, 3]):
        worst = max(worst, thermo.cross_check(thermo.I2(z, d, nu)).discrepancy)
    far = thermo.eval_I2(1, 50, 2)
    lim = _rel(far.value, thermo.eval_I1(1, 2).value)
    ok = worst <= 1e-8 and lim <= 1e-6
    return CriterionResult(
        2, "I2 dual path", ok,
        f"36 cells, max rel diff {worst:.2e} (tol 1e-8); I2(1,50,2) vs I1(1,2) {lim:.2e} (tol 1e-6, {far.detail})",
    )


@_timed
def criterion_3() -> CriterionResult:
    """I3 at mu = 1/2: G-form vs oracle and H-form vs G-form, 1e-7."""
    worst_oracle = worst_forms = 0.0
    divergent = []
    for z, t, nu in itertools.product([0.5, 1, 2], [0.25, 0.5, 1], [1.5, 2]):
        rep = thermo.cross_check(thermo.I3(z, t, nu, 0.5), route="g_form")
        worst_oracle = max(worst_oracle, rep.discrepancy)
        try:
            h_form = thermo.eval_I3(z, t, nu, 0.5, route="h_form")
        except ThermoError:
            divergent.append((z, t, nu))
            continue
        worst_forms = max(worst_forms, _rel(h_form.value, rep.closed.value))
    ok = worst_oracle <= 1e-7 and worst_forms <= 1e-7
    return CriterionResult(
        3, "I3 dual path (mu=1/2)", ok,
        f"18 cells, G-form vs oracle {worst_oracle:.2e}, H-form vs G-form {worst_forms:.2e} (tol 1e-7), "
        f"divergent H-form cells: {len(divergent)}",
    )


@_timed
def criterion_4() -> CriterionResult:
    """I4 series vs oracle at 1e-7 for b/z < 1; b -> 0 reproduces I1 at 1e-6."""
    worst = 0.0
    routes = {"series": 0, "resummed": 0}
    for z, b, delta, nu in itertools.product([1, 2, 4], [0.05, 0.1, 0.3], [1, 2], [1.5, 2]):
        if not b / z < 1:
            continue
        rep = thermo.cross_check(thermo.I4(z, delta, b, nu))
        worst = max(worst, rep.discrepancy)
        routes[rep.closed.detail] = routes.get(rep.closed.detail, 0) + 1
    small_b = thermo.eval_I4(1, 1, 1e-10, 2)
    i1 = thermo.eval_I1(1, 2).value
    lim = _rel(small_b.value, i1)
    printed = _rel(thermo.eval_I4(1, 1, 1e-10, 2, thermo.ORACLE, printed_exponent=True).value, i1)
    ok = worst <= 1e-7 and lim <= 1e-6
    res = CriterionResult(
        4, "I4 dual path", ok,
        f"36 cells ({routes['series']} series, {routes['resummed']} resummed for delta=2), max rel diff "
        f"{worst:.2e} (tol 1e-7); b->0 vs I1 {lim:.2e} (tol 1e-6)",
    )
    res.notes.append(f"oracle with exponent +1/2 at b->0 differs from I1 by {printed:.2e}; the -1/2 exponent is the consistent one")
    return res


@_timed
def criterion_5() -> CriterionResult:
    """General integral, d = inf, vs oracle at 1e-8; z = 0 gives Gamma(nu)/a^nu at 1e-11."""
    worst = worst0 = 0.0
    for nu, a, z, rho in itertools.product([1.5, 2.5], [0.5, 1, 2], [0.5, 1], [1, 2, 3]):
        worst = max(worst, thermo.cross_check(thermo.GeneralI(nu, a, z, rho)).discrepancy)
    for nu, a, rho in itertools.product([1.5, 2.5], [0.5, 1, 2], [1, 2, 3]):
        v = thermo.eval_I_general(thermo.GeneralI(nu, a, 0.0, rho)).value
        worst0 = max(worst0, _rel(v, math.gamma(nu) / a ** nu))
    ok = worst <= 1e-8 and worst0 <= 1e-11
    return CriterionResult(5, "general integral", ok,
                           f"36 cells, max rel diff {worst:.2e} (tol 1e-8); z=0 vs Gamma(nu)/a^nu {worst0:.2e} (tol 1e-11)")


@_timed
def criterion_6() -> CriterionResult:
    """Kratzel kernel at x = 0 (1e-10) and closed vs oracle on x in {0.5, 1, 2} (1e-8)."""
    worst0 = worst = 0.0
    for nu, rho in itertools.product([1, 2, 3], [1, 2]):
        ref = math.gamma(nu / rho) / rho
        for mode in (thermo.CLOSED, thermo.ORACLE):
            worst0 = max(worst0, _rel(thermo.eval_kratzel(nu, rho, 0.0, mode).value, ref))
        for x in (0.5, 1, 2):
            worst = max(worst, thermo.cross_check(thermo.Kratzel(nu, rho, x)).discrepancy)
    ok = worst0 <= 1e-10 and worst <= 1e-8
    return CriterionResult(6, "Kratzel kernel", ok,
                           f"Z(0) vs Gamma(nu/rho)/rho {worst0:.2e} (tol 1e-10); closed vs oracle {worst:.2e} (tol 1e-8)")


def complex_grid() -> list[complex]:
    """Re z in [-4, 6], Im z in [-5, 5], step 0.5."""
    re = np.arange(-4, 6.0001, 0.5)
    im = np.arange(-5, 5.0001, 0.5)
    return [complex(x, y) for x in re for y in im]


def _near_pole(z: complex) -> bool:
    return abs(z.imag) < 1e-12 and z.real <= 0 and abs(z.real - round(z.real)) < 1e-12


@_timed
def criterion_7() -> CriterionResult:
    """Gauss multiplication residual 1e-11 (m = 2, 3, 4); recurrence residual 1e-12."""
    worst_mult = worst_rec = 0.0
    for z in complex_grid():
        if not _near_pole(z) and not _near_pole(z + 1):
            lhs = np.exp(special.log_gamma(z + 1))
            rhs = z * np.exp(special.log_gamma(z))
            worst_rec = max(worst_rec, abs(lhs - rhs) / abs(lhs))
        for m in (2, 3, 4):
            if _near_pole(m * z) or any(_near_pole(z + j / m) for j in range(m)):
                continue
            direct = np.exp(special.log_gamma(m * z))
            worst_mult = max(worst_mult, abs(direct - special.gauss_multiply(z, m)) / abs(direct))
    ok = worst_mult <= 1e-11 and worst_rec <= 1e-12
    return CriterionResult(7, "gamma identities", ok,
                           f"multiplication {worst_mult:.2e} (tol 1e-11); recurrence {worst_rec:.2e} (tol 1e-12)")


PSI_TRIPLES = [
    (0.7, 1.3, 1.0), (1.5, 0.5, 2.0), (2.0, 2.5, 0.5), (0.5, 1.7, 3.0), (1.2, -0.4, 1.5),
    (3.0, 4.5, 2.5), (0.9, 2.2, 0.3), (2.5, 0.25, 4.0), (1.0, 3.3, 1.0), (0.3, 1.5, 0.8),
]


@_timed
def criterion_8() -> CriterionResult:
    """Psi two-Phi series vs integral representation, 1e-9, ten triples."""
    worst = 0.0
    for a, c, z in PSI_TRIPLES:
        p = special.GammaSeriesParams(a, c, z)
        s = special.tricomi_psi(p, route="series").value
        i = special.tricomi_psi(p, route="integral").value
        worst = max(worst, abs(s - i) / abs(i))
    return CriterionResult(8, "Kummer/Tricomi consistency", worst <= 1e-9,
                           f"10 non-integer-c triples, max rel diff {worst:.2e} (tol 1e-9)")


@_timed
def criterion_9() -> CriterionResult:
    """q-statistics: continuity, uniform identity, weights, q = 1 rate, q = 0.5 rate."""
    rng = np.random.default_rng(20240611)
    cont = 0.0
    for n in range(1, 17):
        for _ in range(4):
            p = rng.dirichlet(np.ones(n))
            p = p / math.fsum(p)
            shannon = qstat.tsallis_entropy(qstat.QStatParams(1.0, p))
            for q in (1 - 1e-6, 1 + 1e-6):
                cont = max(cont, abs(qstat.tsallis_entropy(qstat.QStatParams(q, p)) - shannon))
    uni = 0.0
    for W in range(2, 11):
        for q in (0.5, 0.9, 1.0, 1.1, 2.0):
            s = qstat.tsallis_entropy(qstat.QStatParams(q, [1 / W] * W))
            uni = max(uni, abs(s - qstat.ln_q(W, q)) / qstat.ln_q(W, q))
    wsum, checked = 0.0, 0
    for q in (0.5, 0.9, 1.0, 1.1, 1.5):
        p = rng.dirichlet(np.ones(8))
        p = p / math.fsum(p)
        params = qstat.QStatParams(q, p, rng.uniform(0, 3, 8))
        try:
            w = qstat.q_weights(params, qstat.escort_mean(params))
        except DomainError:
            continue  # beyond the q > 1 divergence boundary
        checked += 1
        wsum = max(wsum, abs(math.fsum(w) - 1))
    rate1 = _rel(qstat.q_rate(2, 1, 1.0).value, thermo.eval_I1(1, 2, thermo.ORACLE).value)
    rate_half = qstat.q_rate(2, 0.0, 0.5).value
    half = _rel(rate_half, 1 / 3)
    ok = cont <= 1e-5 and uni <= 1e-14 and wsum <= 1e-12 and checked >= 3 and rate1 <= 1e-10 and half <= 1e-10
    res = CriterionResult(
        9, "q-statistics", ok,
        f"continuity {cont:.1e} (tol 1e-5); uniform identity {uni:.1e}; weight sums {wsum:.1e} over {checked} vectors (tol 1e-12); "
        f"q=1 rate vs I1 {rate1:.1e} (tol 1e-10); q=0.5 rate {rate_half:.15f} vs 1/3 {half:.1e} (tol 1e-10)",
    )
    res.notes.append("the q=0.5, z->0, nu=2 rate is int_0^2 y (1-y/2)^2 dy = 1/3 (2/3 is an arithmetic slip)")
    return res


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def run_all(stream=None) -> list[CriterionResult]:
    stream = stream or sys.stdout
    out = []
    for fn in CRITERIA:
        try:
            res = fn()
        except Exception as exc:  # report, never abort the suite
            number = int(fn.__name__.rsplit("_", 1)[1])
            res = CriterionResult(number, fn.__doc__.split(".")[0], False, f"raised {type(exc).__name__}: {exc}")
        print(res.line(), file=stream, flush=True)
        for note in res.notes:
            print(f"       note: {note}", file=stream, flush=True)
        out.append(res)
    return out
