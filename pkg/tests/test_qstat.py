import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import fixtures as fx
from thermonuclear import ORACLE, eval_I1
from thermonuclear.errors import DomainError
from thermonuclear.quadrature import integrate_finite
from thermonuclear.qstat import (
    QStatParams,
    Tail,
    classify_tail,
    escort_mean,
    exp_q,
    ln_q,
    q_rate,
    q_reaction_integrand,
    q_weights,
    tsallis_entropy,
)


def uniform(W):
    return (1.0 / W,) * W


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0])
def test_entropy_of_certainty(q):
    assert tsallis_entropy(QStatParams(q, (1, 0, 0))) == 0


def test_entropy_examples():
    assert abs(tsallis_entropy(QStatParams(1, uniform(4))) - math.log(4)) < 1e-15
    assert abs(tsallis_entropy(QStatParams(2, uniform(4))) - 0.75) < 1e-15
    assert abs(tsallis_entropy(QStatParams(2, uniform(4), k=2.5)) - 1.875) < 1e-15


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=16), st.sampled_from([-1e-6, 1e-6]))
def test_entropy_continuity(raw, dq):
    w = np.array(raw)
    if w.sum() <= 0:
        return
    p = w / w.sum()
    p = p / math.fsum(p)
    shannon = tsallis_entropy(QStatParams(1.0, tuple(p)))
    assert abs(tsallis_entropy(QStatParams(1.0 + dq, tuple(p))) - shannon) <= 1e-5


@pytest.mark.parametrize("W", range(2, 11))
@pytest.mark.parametrize("q", [0.5, 0.9, 1.0, 1.1, 2.0])
def test_uniform_identity(W, q):
    assert abs(tsallis_entropy(QStatParams(q, uniform(W))) - ln_q(W, q)) <= 1e-14


def test_ln_q():
    assert ln_q(1, 0.3) == 0
    assert abs(ln_q(math.e, 1) - 1) < 1e-15
    assert abs(ln_q(4, 0.5) - 2) < 1e-15
    with pytest.raises(DomainError):
        ln_q(0, 2)


def test_exp_q():
    assert exp_q(0, 0.3) == 1
    assert abs(exp_q(-2, 1) - math.exp(-2)) < 1e-16
    assert abs(exp_q(-1, 0.5) - 0.25) < 1e-15
    # 1 + (1-q) x <= 0 lies past the cut-off
    assert exp_q(-3, 0.5) == 0
    assert exp_q(-2.1, 0.5) == 0
    with pytest.raises(DomainError):
        exp_q(2, 2)


@pytest.mark.parametrize("x", np.linspace(-20, 5, 26))
def test_exp_q_limit(x):
    assert abs(exp_q(x, 1 + 1e-10) - math.exp(x)) <= 1e-12 * math.exp(x)


def test_escort_mean():
    assert abs(escort_mean(QStatParams(1, (0.2, 0.8), (1, 3))) - 2.6) < 1e-15
    assert escort_mean(QStatParams(1.7, (1, 0), (5, 99))) == 5
    assert abs(escort_mean(QStatParams(2, (0.5, 0.5), (0, 1))) - 0.5) < 1e-15


def test_q_weights_examples():
    w = q_weights(QStatParams(1, (0.5, 0.5), (0, 1)), 0.0)
    assert np.allclose(w, [1 / (1 + math.exp(-1)), math.exp(-1) / (1 + math.exp(-1))], rtol=1e-14)
    w = q_weights(QStatParams(1.3, (0.25,) * 4, (2, 2, 2, 2)), 0.7)
    assert np.allclose(w, 0.25, rtol=1e-15)
    # beta_q = 1 / sum p^q = 1/2 here, so states with E - U >= 4 are cut off
    w = q_weights(QStatParams(0.5, (0.25,) * 4, (0, 1.0, 4.0, 6.0)), 0.0)
    assert w[2] == 0 and w[3] == 0 and w[0] > 0


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.floats(0.01, 1.0), min_size=2, max_size=10),
    st.floats(0.3, 1.8),
    st.floats(0.1, 3.0),
)
def test_q_weights_is_probability_vector(raw, q, beta):
    p = np.array(raw) / sum(raw)
    p = p / math.fsum(p)
    energies = tuple(np.linspace(0, 2, len(p)))
    params = QStatParams(q, tuple(p), energies, beta=beta)
    try:
        w = q_weights(params, escort_mean(params))
    except DomainError:
        return
    assert np.all(w >= 0)
    assert abs(math.fsum(w) - 1) <= 1e-12


def test_params_validation():
    with pytest.raises(DomainError):
        QStatParams(1, (0.5, 0.6))
    with pytest.raises(DomainError):
        QStatParams(1, ())
    with pytest.raises(DomainError):
        QStatParams(1, (1.0,), (1, 2))
    with pytest.raises(DomainError):
        QStatParams(1, (1.5, -0.5))


@pytest.mark.parametrize("q, tail", [(1, Tail.EXPONENTIAL), (0.9, Tail.CUT_OFF), (1.1, Tail.POWER_LAW)])
def test_classify_tail(q, tail):
    assert classify_tail(q) is tail


def test_q_rate_q1_is_i1():
    assert abs(q_rate(2, 1, 1).value - eval_I1(1, 2, ORACLE).value) <= 1e-10 * fx.I1_Z1_NU2


def test_q_rate_polynomial_case():
    # int_0^2 y (1 - y/2)^2 dy
    assert abs(q_rate(2, 0, 0.5).value - 1 / 3) < 1e-13


def test_q_rate_fixture():
    assert abs(q_rate(2, 1, 0.9).value - fx.QRATE_Q09_NU2_Z1) < 1e-11 * fx.QRATE_Q09_NU2_Z1


@pytest.mark.parametrize("q", [0.5, 0.8, 0.95])
def test_cutoff_consistency(q):
    f = q_reaction_integrand(2, 1, q)
    direct = integrate_finite(f, 1 / (1 - q)).value
    assert abs(q_rate(2, 1, q).value - direct) <= 1e-10 * direct


def test_q_rate_power_law():
    # tail y^(nu - 1 - 1/(q-1)) = y^-9 for q = 1.1, nu = 2
    assert q_rate(2, 1, 1.1).value > q_rate(2, 1, 1).value
    with pytest.raises(DomainError):
        q_reaction_integrand(2, 1, 1.6)
