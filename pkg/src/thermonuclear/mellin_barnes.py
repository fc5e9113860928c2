"""Fox H- and Meijer G-functions defined by Mellin-Barnes integrals.

    H^{m,n}_{p,q}[x] = (1/2 pi i) int_L Theta(xi) x^(-xi) dxi

    Theta(xi) = prod_{j<=m} Gamma(b_j + B_j xi) prod_{i<=n} Gamma(1 - a_i - A_i xi)
                / prod_{j>m} Gamma(1 - b_j - B_j xi) prod_{i>n} Gamma(a_i + A_i xi)

Two evaluators are provided: summation of residues at the left pole chains
(simple poles only) and trapezoidal integration along a vertical line.
``eval_h`` picks between them.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.special import gammaln

from .errors import CoincidentPoles, DomainError, NoConvergence, NoSeparatingLine, PoleError
from .result import EvalResult, Method
from .special import _log_gamma_array

MERGE_TOL = 1e-10        # poles closer than this are the same pole
SIMPLE_POLE_GAP = 1e-6   # poles closer than this (but distinct) are "near-coincident"
CANCELLATION_LIMIT = 1e6
MAX_LAYERS = 500
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class HFunctionSpec:
    """Parameters of H^{m,n}_{p,q}: ``upper`` = ((a_i, A_i), ...), ``lower`` = ((b_j, B_j), ...)."""

    m: int
    n: int
    upper: tuple
    lower: tuple

    def __init__(self, m: int, n: int, upper: Sequence = (), lower: Sequence = ()):
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "upper", tuple((complex(a), float(A)) for a, A in upper))
        object.__setattr__(self, "lower", tuple((complex(b), float(B)) for b, B in lower))
        self._validate()

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def _validate(self):
        if not 0 <= self.n <= self.p:
            raise DomainError(f"need 0 <= n <= p (n={self.n}, p={self.p})")
        if not 1 <= self.m <= self.q:
            raise DomainError(f"need 1 <= m <= q (m={self.m}, q={self.q})")
        if any(A <= 0 for _, A in self.upper) or any(B <= 0 for _, B in self.lower):
            raise DomainError("all scale coefficients A_i, B_j must be positive")
        # left chains (lower j<=m) must not meet right chains (upper i<=n)
        kl = np.arange(41)
        for a, A in self.upper[: self.n]:
            for b, B in self.lower[: self.m]:
                lhs = A * (b + kl)[:, None]
                rhs = B * (a - kl - 1)[None, :]
                if np.any(np.abs(lhs - rhs) < 1e-10):
                    raise DomainError(
                        f"left pole chain of ({b}, {B}) meets right pole chain of ({a}, {A})"
                    )

    @property
    def decay_rate(self) -> float:
        """alpha such that |Theta(c + i t)| ~ exp(-alpha pi |t| / 2) as |t| -> inf."""
        B = [B for _, B in self.lower]
        A = [A for _, A in self.upper]
        return sum(B[: self.m]) - sum(B[self.m :]) + sum(A[: self.n]) - sum(A[self.n :])

    @property
    def is_real(self) -> bool:
        return all(v.imag == 0 for v, _ in self.upper + self.lower)

    def factors(self):
        """Gamma factors as arrays (alpha, beta, sign): Gamma(alpha + beta xi)^sign.

        The first ``m`` entries are the left-chain numerator factors.
        """
        rows = [(b, B, 1) for b, B in self.lower[: self.m]]
        rows += [(1 - a, -A, 1) for a, A in self.upper[: self.n]]
        rows += [(1 - b, -B, -1) for b, B in self.lower[self.m :]]
        rows += [(a, A, -1) for a, A in self.upper[self.n :]]
        alpha = np.array([r[0] for r in rows], dtype=complex)
        beta = np.array([r[1] for r in rows], dtype=float)
        sign = np.array([r[2] for r in rows], dtype=int)
        return alpha, beta, sign

    def left_edge(self) -> float:
        """Real part of the rightmost left-chain pole."""
        return max((-(b / B)).real for b, B in self.lower[: self.m])

    def right_edge(self) -> float:
        """Real part of the leftmost right-chain pole (inf when n = 0)."""
        if self.n == 0:
            return math.inf
        return min(((1 - a) / A).real for a, A in self.upper[: self.n])


@dataclass(frozen=True)
class GFunctionSpec:
    """Meijer G^{m,n}_{p,q} with upper parameters a_i and lower parameters b_j."""

    m: int
    n: int
    upper: tuple
    lower: tuple

    def __init__(self, m: int, n: int, upper: Sequence = (), lower: Sequence = ()):
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "upper", tuple(complex(a) for a in upper))
        object.__setattr__(self, "lower", tuple(complex(b) for b in lower))
        self.to_h()  # validates

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def to_h(self) -> HFunctionSpec:
        return HFunctionSpec(self.m, self.n, [(a, 1.0) for a in self.upper], [(b, 1.0) for b in self.lower])


@dataclass(frozen=True)
class PoleRecord:
    location: complex
    source_index: int
    chain_index: int
    multiplicity: int
    nearest_other: float

    def __post_init__(self):
        if self.multiplicity < 1 or self.nearest_other < 0:
            raise ValueError("invalid pole record")


def _classify(alpha, beta, locs):
    """For each factor and location: nearest non-positive integer n, and distances.

    Returns (n, singular, gap) where ``gap`` is the xi-distance from each
    location to the nearest pole of each factor.
    """
    w = alpha[:, None] + beta[:, None] * locs[None, :]
    nint = np.minimum(np.round(w.real), 0.0)
    dist = np.abs(w - nint)
    singular = dist < MERGE_TOL
    # distance to the nearest pole of this factor that is not the one we sit on
    gap = np.where(singular, 1.0, dist) / np.abs(beta)[:, None]
    return nint, singular, gap, w


def theta(spec: HFunctionSpec, xi) -> complex:
    """The gamma quotient Theta(xi), evaluated in log space."""
    alpha, beta, sign = spec.factors()
    w = alpha + beta * complex(xi)
    nint = np.minimum(np.round(w.real), 0.0)
    at_pole = (np.abs(w - nint) < 1e-12) & (w.real < 0.5)
    if np.any(at_pole & (sign > 0)):
        raise PoleError(f"Theta has a pole at xi = {xi}")
    if np.any(at_pole & (sign < 0)):
        return 0j
    return complex(np.exp(np.sum(sign * _log_gamma_array(w))))


def _log_theta(spec: HFunctionSpec, xi: np.ndarray) -> np.ndarray:
    alpha, beta, sign = spec.factors()
    total = np.zeros(xi.shape, dtype=complex)
    for a, b, s in zip(alpha, beta, sign):
        total += s * _log_gamma_array(a + b * xi, poles="raise" if s > 0 else "inf")
    return total


def enumerate_poles(spec: HFunctionSpec, max_per_chain: int) -> list[PoleRecord]:
    """Poles of Theta from the left chains Gamma(b_j + B_j xi), j <= m.

    Coincident poles are merged; the multiplicity is the net pole order of
    Theta there (numerator poles minus denominator poles), and locations
    where the net order drops to zero are omitted.
    """
    alpha, beta, sign = spec.factors()
    out = []
    for j, (b, B) in enumerate(spec.lower[: spec.m]):
        k = np.arange(max_per_chain)
        locs = -(b + k) / B
        nint, singular, gap, _ = _classify(alpha, beta, locs)
        for idx in range(max_per_chain):
            sing = singular[:, idx]
            if np.any(sing[:j] & (sign[:j] > 0)):
                continue  # already reported by an earlier chain
            order = int(np.sum(sign[sing]))
            if order < 1:
                continue
            numer_gap = gap[:, idx][sign > 0]
            out.append(
                PoleRecord(
                    location=complex(locs[idx]),
                    source_index=j,
                    chain_index=int(k[idx]),
                    multiplicity=order,
                    nearest_other=float(np.min(numer_gap)),
                )
            )
    out.sort(key=lambda r: (-r.location.real, r.location.imag))
    return out


def _log_x(x) -> complex:
    x = complex(x)
    if x == 0:
        raise DomainError("H-function argument must be non-zero")
    return cmath.log(x)


def _layer_block(alpha, beta, sign, j, k, log_x):
    """Residue contributions of chain ``j`` at layers ``k`` (array)."""
    b, B = alpha[j], beta[j]
    locs = -(b + k) / B
    nint, singular, gap, w = _classify(alpha, beta, locs)
    singular[j] = True
    nint[j] = -k
    n = -nint
    logs = np.zeros(locs.shape, dtype=complex)
    for f in range(alpha.size):
        s = singular[f]
        sign_f = sign[f]
        log_beta = complex(math.log(abs(beta[f])), math.pi if beta[f] < 0 else 0.0)
        sing_log = 1j * math.pi * (n[f] % 2) - sign_f * (gammaln(n[f] + 1) + log_beta)
        reg = _log_gamma_array(np.where(s, 0.5, w[f]), poles="raise" if sign_f > 0 else "inf")
        logs += np.where(s, sing_log, sign_f * reg)
    order = np.sum(sign[:, None] * singular, axis=0)
    earlier = np.any(singular[:j] & (sign[:j, None] > 0), axis=0) if j else np.zeros(k.shape, bool)
    near = np.any((gap < SIMPLE_POLE_GAP) & (sign[:, None] > 0), axis=0)
    active = (order >= 1) & ~earlier
    if np.any(active & ((order > 1) | near)):
        bad = locs[active & ((order > 1) | near)][0]
        raise CoincidentPoles(f"non-simple pole near xi = {bad}")
    log_terms = logs - locs * log_x
    if np.any(active & (log_terms.real > 700)):
        raise NoConvergence("residue terms overflow; the left residue series diverges here")
    vals = np.where(active, np.exp(np.where(active, log_terms, -np.inf)), 0)
    return vals


def eval_h_residues(spec: HFunctionSpec, x, tol: float = 1e-14, block: int = 16) -> EvalResult:
    """Sum of residues of Theta(xi) x^(-xi) over the left pole chains.

    Only simple, well-separated poles are handled; otherwise CoincidentPoles
    is raised.  Layers (k-th pole of every chain) are added until three
    consecutive layers fall below ``tol`` relative to the running sum.
    ``abs_error_estimate`` is the last layer's size plus a rounding bound
    proportional to the largest term.
    """
    alpha, beta, sign = spec.factors()
    log_x = _log_x(x)
    total = 0j
    abs_sum = 0.0
    max_term = 0.0
    quiet = 0
    work = 0
    for start in range(0, MAX_LAYERS, block):
        k = np.arange(start, start + block, dtype=float)
        per_chain = np.array([_layer_block(alpha, beta, sign, j, k, log_x) for j in range(spec.m)])
        layers = per_chain.sum(axis=0)
        mags = np.abs(per_chain).max(axis=0)
        for idx in range(block):
            total += layers[idx]
            abs_sum += np.abs(per_chain[:, idx]).sum()
            max_term = max(max_term, mags[idx])
            work += spec.m
            if total != 0 and abs(layers[idx]) <= tol * abs(total):
                quiet += 1
            else:
                quiet = 0
            if quiet >= 3 and start + idx >= 2:
                err = abs(layers[idx]) + 8 * _EPS * max_term + _EPS * abs(total)
                res = EvalResult(total, float(err), Method.RESIDUE_SERIES, work)
                object.__setattr__(res, "_max_term", max_term)
                return res
    raise NoConvergence(f"residue series not converged after {MAX_LAYERS} layers")


def _coarse_l1(log_abs_fn: Callable[[np.ndarray], np.ndarray], cs: np.ndarray, widths: np.ndarray, t_max: float) -> np.ndarray:
    """log of int |g(c + i t)| dt for each candidate c on a sinh-graded grid.

    A cheap conditioning proxy; ``widths`` sets the grid grading near t = 0.
    """
    u = np.linspace(0.0, 1.0, 48)[None, :] * np.arcsinh(t_max / widths)[:, None]
    t = widths[:, None] * np.sinh(u)
    jac = widths[:, None] * np.cosh(u)
    with np.errstate(all="ignore"):
        la = log_abs_fn(cs[:, None] + 1j * t)
    la = np.where(np.isfinite(la), la, -np.inf)
    top = la.max(axis=1)
    out = np.full(cs.shape, np.inf)
    ok = np.isfinite(top)
    w = np.exp(la[ok] - top[ok, None]) * jac[ok]
    out[ok] = top[ok] + np.log(np.trapezoid(w, u[ok], axis=1) + 1e-300)
    return out


def choose_abscissa(
    log_abs_fn: Callable[[np.ndarray], np.ndarray],
    lo_pole: float,
    hi_pole: float,
    default: float,
    decay: float,
) -> float:
    """Pick Re(xi) = c for the contour, minimising the integrand's L1 norm.

    Candidates run from just right of the left poles to just left of the
    right poles (or 40 units further when there are none); the default is
    kept unless another candidate improves conditioning tenfold.
    """
    gap = hi_pole - lo_pole
    span = 40.0 if math.isinf(gap) else 0.98 * gap
    floor = 0.02 if math.isinf(gap) else min(0.02, 0.02 * gap)
    deltas = np.geomspace(floor, span, 40)
    if not math.isinf(gap):
        deltas = deltas[deltas < gap - floor]
    cs = np.concatenate([[default], lo_pole + deltas])
    widths = np.clip(np.minimum(cs - lo_pole, hi_pole - cs), 1e-3, 1.0)
    t_max = 80.0 / max(decay, 1e-3) + 10.0
    scores = _coarse_l1(log_abs_fn, cs, widths, t_max)
    best = int(np.argmin(scores[1:])) + 1
    if scores[best] < scores[0] - math.log(10.0):
        return float(cs[best])
    return float(default)


def integrate_vertical(
    g: Callable[[np.ndarray], np.ndarray],
    c: float,
    tol: float,
    h0: float,
    symmetric: bool,
    max_levels: int = 14,
    t_cap: float = 5e3,
) -> EvalResult:
    """(1/2 pi) int g(c + i t) dt by the trapezoidal rule with step halving.

    ``symmetric`` means g(conj xi) = conj g(xi), so only t >= 0 is sampled.
    The tails are cut where |g| has stayed below tol * |partial sum| over
    five consecutive unit panels.
    """
    directions = (1,) if symmetric else (1, -1)
    g0 = complex(np.asarray(g(np.array([complex(c)])))[0])
    extents = {}
    work = 1
    for direction in directions:
        running = abs(g0) * h0
        k0, quiet_run, need = 1, 0, max(1, int(math.ceil(5.0 / h0)))
        while True:
            k = np.arange(k0, k0 + 256)
            t = direction * k * h0
            vals = np.asarray(g(c + 1j * t))
            work += k.size
            mags = np.abs(vals) * h0
            cums = running + np.cumsum(mags)
            small = mags <= 0.1 * tol * cums
            stop = None
            for i in range(k.size):
                quiet_run = quiet_run + 1 if small[i] else 0
                if quiet_run >= need:
                    stop = k[i]
                    break
            running = cums[-1]
            if stop is not None:
                extents[direction] = stop * h0
                break
            k0 += 256
            if k0 * h0 > t_cap:
                raise NoConvergence("contour integrand does not decay")

    def level_sum(h, offset):
        total, l1, n = 0j, 0.0, 0
        for direction in directions:
            count = int(extents[direction] / h)
            k = np.arange(count + 1) * 2 + 1 if offset else np.arange(1, count + 1)
            t = direction * k * (h / 2 if offset else h)
            t = t[np.abs(t) <= extents[direction]]
            vals = np.asarray(g(c + 1j * t))
            total += vals.sum()
            l1 += np.abs(vals).sum()
            n += t.size
        return total, l1, n

    s, l1, n = level_sum(h0, False)
    work += n
    h = h0
    sum_all = s + (g0 / 2 if symmetric else g0)
    l1_all = l1 + abs(g0) / (2 if symmetric else 1)
    prev = None
    for level in range(max_levels + 1):
        if level:
            s_new, l1_new, n = level_sum(h, True)
            work += n
            sum_all += s_new
            l1_all += l1_new
            h /= 2
        trap = h * sum_all
        value = trap.real / math.pi if symmetric else trap / (2 * math.pi)
        l1_val = h * l1_all / (math.pi if symmetric else 2 * math.pi)
        if prev is not None:
            diff = abs(value - prev)
            if level >= 2 and (diff <= tol * abs(value) or diff <= 4 * _EPS * l1_val):
                err = max(diff, 4 * _EPS * l1_val)
                return EvalResult(complex(value), float(err), Method.CONTOUR, work)
        prev = value
    raise NoConvergence("contour trapezoid did not converge")


def eval_h_contour(spec: HFunctionSpec, x, tol: float = 1e-13) -> EvalResult:
    """Numerical Mellin-Barnes integral along a vertical line Re(xi) = c."""
    lo, hi = spec.left_edge(), spec.right_edge()
    if hi <= lo:
        raise NoSeparatingLine("right pole chains reach left of the left chains")
    alpha_decay = spec.decay_rate
    if alpha_decay <= 0:
        raise NoConvergence("Theta does not decay along vertical lines (alpha <= 0)")
    log_x = _log_x(x)
    default = 0.5 * (lo + hi) if spec.n else max(0.0, lo) + 1.0

    def log_g(xi):
        return _log_theta(spec, xi) - xi * log_x

    def log_abs(xi):
        return log_g(xi).real

    c = choose_abscissa(log_abs, lo, hi, default, alpha_decay)
    dist = min(c - lo, hi - c, 1.0)
    h0 = min(0.5, dist / 1.5, math.pi / (abs(log_x) + 1.0))

    def g(xi):
        return np.exp(log_g(xi))

    symmetric = spec.is_real and complex(x).imag == 0 and complex(x).real > 0
    return integrate_vertical(g, c, tol, h0, symmetric)


def eval_h(spec: HFunctionSpec, x, tol: float = 1e-13) -> EvalResult:
    """Residue series when it is safe, vertical contour otherwise.

    The contour is used for coincident or near-coincident poles, for
    divergent or non-converging residue series, when the largest residue
    term exceeds the sum by more than ``CANCELLATION_LIMIT``, and when the
    residue error estimate (which grows with the cancellation) misses ``tol``.
    """
    try:
        res = eval_h_residues(spec, x, tol=min(tol, 1e-14))
    except (CoincidentPoles, NoConvergence):
        return eval_h_contour(spec, x, tol)
    max_term = getattr(res, "_max_term", 0.0)
    if max_term > CANCELLATION_LIMIT * abs(res.value) or res.abs_error_estimate > tol * abs(res.value):
        try:
            return eval_h_contour(spec, x, tol)
        except (NoConvergence, NoSeparatingLine):
            return res
    return res


def eval_g(spec: GFunctionSpec, x, tol: float = 1e-13) -> EvalResult:
    """Meijer G-function through the H-function evaluators (A_i = B_j = 1)."""
    return eval_h(spec.to_h(), x, tol)


def h_to_g(spec: HFunctionSpec, max_denominator: int = 64):
    """Rewrite an H-function with rational scales as a G-function.

    Each Gamma(alpha + k u), k = L*B integer, is expanded with the Gauss
    multiplication formula after the substitution xi = L u.  Returns
    ``(prefactor, gspec, power, scale)`` such that

        H(x) = prefactor * G(x**power / scale).
    """
    scales = [Fraction(B).limit_denominator(max_denominator) for _, B in spec.lower]
    scales += [Fraction(A).limit_denominator(max_denominator) for _, A in spec.upper]
    raw = [B for _, B in spec.lower] + [A for _, A in spec.upper]
    if any(abs(float(f) - r) > 1e-12 for f, r in zip(scales, raw)):
        raise DomainError("h_to_g needs rational scale coefficients")
    L = math.lcm(*(f.denominator for f in scales))
    log_pref = complex(math.log(L))
    log_scale = 0.0
    g_lower_m, g_upper_n, g_lower_rest, g_upper_rest = [], [], [], []

    def expand(alpha, k, numerator):
        nonlocal log_pref, log_scale
        ak = abs(k)
        s = 1 if numerator else -1
        log_pref += s * (0.5 * (1 - ak) * math.log(2 * math.pi) + (alpha - 0.5) * math.log(ak))
        log_scale += s * k * math.log(ak)
        return [(alpha + i) / ak for i in range(ak)]

    alpha, beta, sign = spec.factors()
    for a0, b0, s0 in zip(alpha, beta, sign):
        k = int(round(b0 * L))
        params = expand(a0, k, s0 > 0)
        if s0 > 0 and k > 0:
            g_lower_m += params
        elif s0 > 0:
            g_upper_n += [1 - v for v in params]
        elif k > 0:
            g_upper_rest += params
        else:
            g_lower_rest += [1 - v for v in params]
    gspec = GFunctionSpec(
        len(g_lower_m), len(g_upper_n), g_upper_n + g_upper_rest, g_lower_m + g_lower_rest
    )
    return cmath.exp(log_pref), gspec, L, math.exp(log_scale)
