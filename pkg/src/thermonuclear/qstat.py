"""Tsallis q-statistics and q-deformed reaction-rate integrals."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadrature import Integrand, QuadratureConfig, integrate_semiinfinite
from .result import EvalResult

Q_ONE_TOL = 1e-9
PROB_TOL = 1e-12


@dataclass(frozen=True)
class QStatParams:
    q: float
    probabilities: tuple
    energies: tuple = ()
    k: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        p = tuple(float(v) for v in self.probabilities)
        e = tuple(float(v) for v in self.energies) if len(self.energies) else (0.0,) * len(p)
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "energies", e)
        if not p:
            raise DomainError("probability vector is empty")
        if len(e) != len(p):
            raise DomainError("energies and probabilities differ in length")
        if any(v < 0 or not math.isfinite(v) for v in p):
            raise DomainError("probabilities must be finite and non-negative")
        if abs(math.fsum(p) - 1.0) > PROB_TOL:
            raise DomainError(f"probabilities sum to {math.fsum(p)!r}, not 1")
        if not self.k > 0 or not self.beta > 0:
            raise DomainError("k and beta must be positive")

    @property
    def p(self) -> np.ndarray:
        return np.array(self.probabilities)

    @property
    def e(self) -> np.ndarray:
        return np.array(self.energies)


def _is_one(q: float) -> bool:
    return abs(q - 1.0) < Q_ONE_TOL


def tsallis_entropy(params: QStatParams) -> float:
    """S_q = k (1 - sum p_i^q)/(q - 1); Shannon entropy at q = 1.

    Zero probabilities drop out of the sum for every q (0^q := 0).
    """
    p = params.p[params.p > 0]
    q = params.q
    if _is_one(q):
        return float(-params.k * np.sum(p * np.log(p)))
    # 1 - sum p^q = sum p (1 - p^(q-1)) = -sum p expm1((q-1) ln p)
    s = -math.fsum(p * np.expm1((q - 1) * np.log(p)))
    return float(params.k * s / (q - 1))


def ln_q(W: float, q: float) -> float:
    """(W^(1-q) - 1)/(1 - q), the q-logarithm; ln W at q = 1."""
    if not W > 0:
        raise DomainError("ln_q needs W > 0")
    if _is_one(q):
        return math.log(W)
    return math.expm1((1 - q) * math.log(W)) / (1 - q)


def exp_q(x: float, q: float) -> float:
    """[1 + (1-q) x]^(1/(1-q)), with the q < 1 cut-off and e^x at q = 1."""
    if _is_one(q):
        return math.exp(x)
    base = 1 + (1 - q) * x
    if base <= 0:
        if q < 1:
            return 0.0
        raise DomainError(f"exp_q diverges: 1 + (1-q)x = {base:g} <= 0 for q = {q}")
    return math.exp(math.log(base) / (1 - q))


def escort_mean(params: QStatParams) -> float:
    """U_q = sum p_i^q E_i / sum p_j^q."""
    p = params.p
    w = np.where(p > 0, p ** params.q, 0.0)
    norm = math.fsum(w)
    if norm <= 0:
        raise DomainError("escort normalisation vanishes")
    return math.fsum(w * params.e) / norm


def q_weights(params: QStatParams, U_q: float) -> np.ndarray:
    """p_i = exp_q(-beta_q (E_i - U_q)) / Z_q with beta_q = beta / sum p_j^q.

    A single evaluation for the supplied U_q (no self-consistent solve).
    """
    p = params.p
    beta_q = params.beta / math.fsum(np.where(p > 0, p ** params.q, 0.0))
    w = np.array([exp_q(-beta_q * (e - U_q), params.q) for e in params.energies])
    z = math.fsum(w)
    if z <= 0:
        raise DomainError("every state lies beyond the cut-off")
    out = w / z
    return out / math.fsum(out)


class Tail(str, enum.Enum):
    POWER_LAW = "PowerLawTail"
    EXPONENTIAL = "Exponential"
    CUT_OFF = "CutOff"

    def __str__(self) -> str:
        return self.value


def classify_tail(q: float) -> Tail:
    """q > 1: power-law tail (depleted); q = 1: exponential; q < 1: cut-off."""
    if _is_one(q):
        return Tail.EXPONENTIAL
    return Tail.POWER_LAW if q > 1 else Tail.CUT_OFF


def q_reaction_integrand(nu: float, z: float, q: float) -> Integrand:
    """y -> y^(nu-1) exp_q(-y, q) exp(-z y^(-1/2)).

    q = 1 gives the I1 integrand.  For q < 1 the support ends at
    y_cut = 1/(1-q); for q > 1 the tail is y^(nu-1-1/(q-1)), so nu must stay
    below 1/(q-1) for the integral to exist.
    """
    if not nu > 0 or not z >= 0:
        raise DomainError("need nu > 0 and z >= 0")
    support = None
    if not _is_one(q) and q > 1 and nu >= 1 / (q - 1):
        raise DomainError(f"q = {q}: the tail y^(nu-1-1/(q-1)) is not integrable for nu = {nu}")
    if not _is_one(q) and q < 1:
        support = 1 / (1 - q)

    def f(y):
        y = np.asarray(y, dtype=float)
        with np.errstate(all="ignore"):
            ly = np.log(y)
            if _is_one(q):
                lq = -y
            else:
                base = 1 - (1 - q) * y
                lq = np.where(base > 0, np.log(np.where(base > 0, base, 1.0)) / (1 - q), -np.inf)
            arg = (nu - 1) * ly + lq - (z * np.exp(-0.5 * ly) if z > 0 else 0.0)
            return np.exp(np.where(arg < -745, -np.inf, arg))

    hint = ("decays_at_zero", None) if z > 0 else ("algebraic_at_zero", nu - 1)
    return Integrand(f, hint, support)


def q_rate(nu: float, z: float, q: float, rel_tol: float = 1e-12) -> EvalResult:
    """int_0^inf of the q-reaction integrand by quadrature.

    The semi-infinite rule hands a cut-off integrand (q < 1) to the finite
    rule on (0, y_cut), where it is smooth.
    """
    return integrate_semiinfinite(q_reaction_integrand(nu, z, q), QuadratureConfig(rel_tol=rel_tol))
