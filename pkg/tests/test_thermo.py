import math

import pytest

import fixtures as fx
from thermonuclear import (
    CLOSED,
    ORACLE,
    CrossCheckFailed,
    DivergentSeries,
    DomainError,
    EvalMode,
    GeneralI,
    I1,
    I2,
    SignAnomaly,
    cross_check,
    eval_I1,
    eval_I2,
    eval_I3,
    eval_I4,
    eval_I_general,
    eval_I_general_negative_rho,
    eval_kratzel,
    evaluate,
)

CROSS = EvalMode("crosscheck", 1e-8)


def rel(a, b):
    return abs(a - b) / abs(b)


def both(fn, *args, **kw):
    return fn(*args, mode=CLOSED, **kw).value, fn(*args, mode=ORACLE, **kw).value


# ---------------------------------------------------------------- general integral


def test_general_trivial():
    assert rel(eval_I_general(GeneralI(1, 1, 1e-12, 1)).value, 1.0) < 1e-10
    assert rel(eval_I_general(GeneralI(2, 2, 0, 1)).value, 0.25) < 1e-14


def test_general_fixture():
    req = GeneralI(1.5, 1, 1, 2)
    assert rel(eval_I_general(req).value, fx.GEN_NU15_A1_Z1_RHO2) < 1e-11
    assert rel(eval_I_general(req, ORACLE).value, fx.GEN_NU15_A1_Z1_RHO2) < 1e-11


@pytest.mark.parametrize("d", [0.5, 2.0, 10.0])
def test_general_finite_d(d):
    req = GeneralI(1.5, 1, 1, 2, d)
    rep = cross_check(req, 1e-8)
    assert rep.passed, rep.discrepancy


def test_general_rejects_rho_zero():
    with pytest.raises(DomainError):
        GeneralI(1.5, 1, 1, 0)
    with pytest.raises(DomainError):
        GeneralI(-1, 1, 1, 1)


# ---------------------------------------------------------------- negative rho


def test_negative_rho_trivial():
    assert rel(eval_I_general_negative_rho(1, 1, 0, 1).value, 1.0) < 1e-13
    assert rel(eval_I_general_negative_rho(2, 1, 1, 1).value, 0.25) < 1e-11


def test_negative_rho_fixture():
    closed, oracle = both(eval_I_general_negative_rho, 1.5, 1, 0.5, 2)
    assert rel(closed, fx.NEG_NU15_A1_Z05_ETA2) < 1e-10
    assert rel(oracle, fx.NEG_NU15_A1_Z05_ETA2) < 1e-11


@pytest.mark.parametrize("d", [0.5, 1.0, 3.0])
def test_negative_rho_finite_d(d):
    closed, oracle = both(eval_I_general_negative_rho, 1.5, 1, 0.5, 2, d)
    assert rel(closed, oracle) < 1e-8


def test_negative_rho_literal_sign_raises():
    with pytest.raises(SignAnomaly) as info:
        eval_I_general_negative_rho(2, 1, 1, 1, literal=True)
    assert info.value.value < 0


def test_negative_rho_needs_positive_eta():
    with pytest.raises(DomainError):
        eval_I_general_negative_rho(1.5, 1, 1, 0)


# ---------------------------------------------------------------- I1


def test_i1_small_z_limit():
    assert rel(eval_I1(1e-12, 2).value, 1.0) < 1e-9
    assert rel(eval_I1(1e-12, 2.5).value, 1.3293403881791355) < 1e-9


def test_i1_fixture():
    closed, oracle = both(eval_I1, 1, 2)
    assert rel(closed, fx.I1_Z1_NU2) < 1e-12
    assert rel(oracle, fx.I1_Z1_NU2) < 1e-12


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 1.5])
def test_i1_coincident_nu(nu):
    # nu in {0, 1/2} mod integers makes the G-function poles collide
    closed, oracle = both(eval_I1, 0.7, nu)
    assert rel(closed, oracle) < 1e-9


def test_i1_domain():
    with pytest.raises(DomainError):
        I1(0, 2)
    with pytest.raises(DomainError):
        I1(1, -1)


def test_i1_monotone_in_z():
    vals = [eval_I1(z, 2, ORACLE).value for z in (0.5, 1, 2, 4)]
    assert all(v > 0 for v in vals)
    assert all(b < a for a, b in zip(vals, vals[1:]))


# ---------------------------------------------------------------- I2


def test_i2_small_z():
    assert rel(eval_I2(1e-12, 1, 2).value, 1 - 2 / math.e) < 1e-9


def test_i2_fixture():
    closed, oracle = both(eval_I2, 1, 2, 2)
    assert rel(closed, fx.I2_Z1_D2_NU2) < 1e-11
    assert rel(oracle, fx.I2_Z1_D2_NU2) < 1e-11


def test_i2_large_d_matches_i1():
    res = eval_I2(1, 50, 2)
    assert rel(res.value, eval_I1(1, 2).value) < 1e-8
    assert res.detail == "resummed"


def test_i2_monotone_in_d():
    vals = [eval_I2(1, d, 2, ORACLE).value for d in (0.5, 1, 2, 5)]
    assert all(v > 0 for v in vals)
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_i2_domain():
    with pytest.raises(DomainError):
        I2(1, 2, 0.5)


# ---------------------------------------------------------------- I3


def test_i3_fixture_and_routes():
    g = eval_I3(1, 0.5, 2, 0.5, route="g_form")
    h = eval_I3(1, 0.5, 2, 0.5, route="h_form")
    o = eval_I3(1, 0.5, 2, 0.5, ORACLE)
    assert g.detail == "g_form" and h.detail == "h_form"
    for v in (g.value, h.value, o.value):
        assert rel(v, fx.I3_Z1_T05_NU2_MU05) < 1e-10


def test_i3_limits():
    assert rel(eval_I3(1, 1e-10, 2, 0.5).value, eval_I1(1, 2).value) < 1e-8
    assert rel(eval_I3(1e-12, 1, 2, 1).value, 1.0) < 1e-9


@pytest.mark.parametrize("mu", [0.3, 1.0, 1.7])
def test_i3_general_mu(mu):
    closed, oracle = both(eval_I3, 0.8, 0.6, 1.5, mu)
    assert rel(closed, oracle) < 1e-8


# ---------------------------------------------------------------- I4


def test_i4_fixture():
    closed, oracle = both(eval_I4, 2, 1, 0.2, 2)
    assert rel(closed, fx.I4_Z2_B02_D1_NU2) < 1e-10
    assert rel(oracle, fx.I4_Z2_B02_D1_NU2) < 1e-11


def test_i4_series_routes_agree():
    g = eval_I4(2, 1, 0.2, 2, route="g_series").value
    h = eval_I4(2, 1, 0.2, 2, route="h_series").value
    assert rel(g, h) < 1e-10


def test_i4_b_to_zero():
    assert rel(eval_I4(1, 1, 1e-10, 2).value, eval_I1(1, 2).value) < 1e-6
    assert rel(eval_I4(1, 1, 1e-8, 2, ORACLE).value, eval_I1(1, 2, ORACLE).value) < 1e-6


def test_i4_printed_exponent_fails_the_reduction():
    # with z y^(+1/2) in the exponent the b -> 0 limit is not I1
    printed = eval_I4(1, 1, 1e-10, 2, ORACLE, printed_exponent=True).value
    assert rel(printed, eval_I1(1, 2).value) > 0.1


def test_i4_guard():
    with pytest.raises(DivergentSeries):
        eval_I4(1, 1, 1.5, 2)
    # the oracle has no such restriction
    assert eval_I4(1, 1, 1.5, 2, ORACLE).value > 0


def test_i4_large_delta_resummed():
    res = eval_I4(2, 2, 0.3, 1.5)
    assert res.detail == "resummed"
    assert rel(res.value, eval_I4(2, 2, 0.3, 1.5, ORACLE).value) < 1e-8
    with pytest.raises(DivergentSeries):
        eval_I4(2, 2, 0.3, 1.5, allow_resum=False)


# ---------------------------------------------------------------- Kratzel


@pytest.mark.parametrize("nu, rho, expected", [(1, 1, 1.0), (2, 2, 0.5)])
def test_kratzel_at_zero(nu, rho, expected):
    assert rel(eval_kratzel(nu, rho, 0).value, expected) < 1e-14


def test_kratzel_fixture():
    closed, oracle = both(eval_kratzel, 1, 1, 1)
    assert rel(closed, fx.KRATZEL_NU1_RHO1_X1) < 1e-12
    assert rel(oracle, fx.KRATZEL_NU1_RHO1_X1) < 1e-12


def test_kratzel_domain():
    with pytest.raises(DomainError):
        eval_kratzel(-1, 1, 0)
    with pytest.raises(DomainError):
        eval_kratzel(1, 0, 1)


# ---------------------------------------------------------------- cross check


def test_cross_check_examples():
    assert cross_check(I1(1, 2), 1e-8).passed
    assert cross_check(I2(1, 2, 2), 1e-8).passed
    assert evaluate(I1(1, 2), CROSS).value > 0


def test_cross_check_failure_raises():
    # an impossibly tight tolerance forces a mismatch
    with pytest.raises(CrossCheckFailed) as info:
        evaluate(I2(1, 2, 2), EvalMode("crosscheck", 1e-300))
    assert info.value.discrepancy > 0


@pytest.mark.parametrize(
    "fn, args",
    [
        (eval_I1, (1, 2)),
        (eval_I2, (0.5, 1, 2)),
        (eval_I3, (1, 0.5, 1.5, 0.5)),
        (eval_I4, (2, 1, 0.1, 2)),
        (eval_kratzel, (2, 2, 1)),
    ],
)
def test_oracle_positive(fn, args):
    assert fn(*args, mode=ORACLE).value > 0
