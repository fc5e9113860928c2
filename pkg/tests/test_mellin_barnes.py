import math

import numpy as np
import pytest

import fixtures as fx
from thermonuclear.errors import CoincidentPoles, DomainError, NoSeparatingLine, PoleError
from thermonuclear.mellin_barnes import (
    GFunctionSpec,
    HFunctionSpec,
    enumerate_poles,
    eval_g,
    eval_h,
    eval_h_contour,
    eval_h_residues,
    h_to_g,
    theta,
)
from thermonuclear.thermo import ORACLE, eval_I1, eval_I_general

EXP_SPEC = HFunctionSpec(1, 0, [], [(0, 1)])


def rel(a, b):
    return abs(a - b) / abs(b)


def test_spec_validation():
    with pytest.raises(DomainError):
        HFunctionSpec(0, 0, [], [(0, 1)])
    with pytest.raises(DomainError):
        HFunctionSpec(1, 2, [(0, 1)], [(0, 1)])
    with pytest.raises(DomainError):
        HFunctionSpec(1, 0, [], [(0, -1)])
    # left chain 0, -1, ... meets right chain (1 - a)/A = 0, 1, ... for a = 1
    with pytest.raises(DomainError):
        HFunctionSpec(1, 1, [(1, 1)], [(0, 1)])
    spec = HFunctionSpec(1, 1, [(0.5, 1)], [(0, 1)])
    assert (spec.p, spec.q) == (1, 1)


def test_theta():
    assert abs(theta(EXP_SPEC, 1) - 1) < 1e-15
    assert abs(theta(EXP_SPEC, 3) - 2) < 1e-14
    spec = HFunctionSpec(2, 0, [], [(0, 0.5), (1.5, 1)])
    assert rel(theta(spec, 1), math.gamma(0.5) * math.gamma(2.5)) < 1e-14
    with pytest.raises(PoleError):
        theta(EXP_SPEC, -2)


def test_enumerate_poles():
    locs = [p.location.real for p in enumerate_poles(EXP_SPEC, 5)]
    assert locs == [0, -1, -2, -3, -4]
    inter = enumerate_poles(HFunctionSpec(2, 0, [], [(0, 1), (0.5, 1)]), 4)
    assert [p.location.real for p in inter] == [0, -0.5, -1, -1.5, -2, -2.5, -3, -3.5]
    assert all(p.multiplicity == 1 for p in inter)
    double = enumerate_poles(HFunctionSpec(2, 0, [], [(0, 1), (0, 1)]), 6)
    assert len(double) == 6
    assert all(p.multiplicity == 2 for p in double)


def test_enumerate_poles_cancelled_by_denominator():
    # Gamma(xi) / Gamma(1 + xi) = 1/xi has a single pole at 0
    spec = HFunctionSpec(1, 0, [(1, 1)], [(0, 1)])
    poles = enumerate_poles(spec, 5)
    assert [p.location for p in poles] == [0]


@pytest.mark.parametrize("x", np.geomspace(0.01, 20, 25))
def test_scaling_identity(x):
    assert rel(eval_h(EXP_SPEC, x).value.real, math.exp(-x)) < 1e-12


def test_residues_examples():
    assert rel(eval_h_residues(EXP_SPEC, 1.0).value.real, math.exp(-1)) < 1e-13
    assert rel(eval_h_residues(EXP_SPEC, 3.0).value.real, math.exp(-3)) < 1e-13
    assert rel(eval_h_contour(EXP_SPEC, 1.0).value.real, math.exp(-1)) < 1e-12


def test_general_h_example():
    # H^{2,0}_{0,2}[x | (0,1/2),(1.3,1)] is 2 * I(nu=1.3, a=1, z=x^2, rho=2)
    spec = HFunctionSpec(2, 0, [], [(0, 0.5), (1.3, 1)])
    res = eval_h_residues(spec, 0.8).value.real
    con = eval_h_contour(spec, 0.8).value.real
    oracle = eval_I_general(__import__("thermonuclear").GeneralI(1.3, 1, 0.64, 2), ORACLE).value
    assert rel(res, con) < 1e-11
    assert rel(res, 2 * oracle) < 1e-10


def test_g_examples():
    assert rel(eval_g(GFunctionSpec(1, 0, [], [0]), 2.0).value.real, 0.1353352832366127) < 1e-13
    v = eval_g(GFunctionSpec(3, 0, [], [0, 0.5, 2]), 0.25).value.real
    assert rel(v, math.sqrt(math.pi) * fx.I1_Z1_NU2) < 1e-12
    assert rel(v, math.sqrt(math.pi) * eval_I1(1, 2, ORACLE).value) < 1e-10


@pytest.mark.parametrize("nu", ["0p5", "2", "2p7"])
@pytest.mark.parametrize("x", ["0p025", "0p25", "6p25"])
def test_g300_fixtures(nu, x):
    ref = getattr(fx, f"G300_03_NU{nu}_X{x}")
    val = eval_g(GFunctionSpec(3, 0, [], [0, 0.5, float(nu.replace("p", "."))]), float(x.replace("p", "."))).value
    assert rel(val.real, ref) < 1e-11


@pytest.mark.parametrize("r", [0, 1, 3])
def test_g301_fixtures(r):
    ref = getattr(fx, f"G300_13_NU2_R{r}_X0125")
    val = eval_g(GFunctionSpec(3, 0, [3 + r], [2 + r, 0, 0.5]), 0.125).value
    assert rel(val.real, ref) < 1e-11


CORPUS = [
    EXP_SPEC,
    HFunctionSpec(2, 0, [], [(0, 0.5), (1.3, 1)]),
    HFunctionSpec(2, 0, [], [(0, 1), (0.25, 1)]),
    HFunctionSpec(3, 0, [], [(0, 1), (0.5, 1), (2.2, 1)]),
    HFunctionSpec(3, 0, [(3.2, 1)], [(2.2, 1), (0, 1), (0.5, 1)]),
    HFunctionSpec(1, 1, [(-0.5, 1)], [(0, 1)]),
]


# with n > 0 and p = q the residue sum is a power series converging for x < 1
AGREEMENT_CASES = [
    (i, x) for i, spec in enumerate(CORPUS) for x in (0.1, 0.5, 1, 2) if spec.n == 0 or x < 1
]


@pytest.mark.parametrize("idx, x", AGREEMENT_CASES)
def test_residue_contour_agreement(idx, x):
    spec = CORPUS[idx]
    a = eval_h_residues(spec, x, tol=1e-14)
    b = eval_h_contour(spec, x, tol=1e-13)
    bound = 10 * max(a.abs_error_estimate, b.abs_error_estimate, 1e-13 * abs(b.value))
    assert abs(a.value - b.value) <= bound


def test_h11_11_negative_rho_form():
    # H^{1,1}_{1,1}[x | (1-nu,1); (0,1)] = Gamma(nu) (1 + x)^(-nu)
    spec = HFunctionSpec(1, 1, [(1 - 1.5, 1)], [(0, 1)])
    for x in (0.5, 2.0):
        assert rel(eval_h(spec, x).value.real, math.gamma(1.5) * (1 + x) ** -1.5) < 1e-11


def test_coincident_poles_route_to_contour():
    # Gamma(xi)^2 x^-xi is 2 K_0(2 sqrt x)
    spec = HFunctionSpec(2, 0, [], [(0, 1), (0, 1)])
    with pytest.raises(CoincidentPoles):
        eval_h_residues(spec, 0.5)
    res = eval_h(spec, 0.25)
    assert res.method.value == "Contour"
    assert rel(res.value.real, 2 * 0.42102443824070834) < 1e-11


def test_no_separating_line():
    # right chain starts at xi = 0.5, left chain sits at xi = 1
    spec = HFunctionSpec(1, 1, [(0.5, 1)], [(-1, 1)])
    with pytest.raises(NoSeparatingLine):
        eval_h_contour(spec, 1.0)


@pytest.mark.parametrize("x", [0.1, 1, 4])
def test_h_to_g_rational_scale(x):
    spec = HFunctionSpec(2, 0, [], [(0, 0.5), (1.5, 1)])
    pref, gspec, power, scale = h_to_g(spec)
    direct = eval_h(spec, x).value
    via_g = pref * eval_g(gspec, x**power / scale).value
    assert rel(via_g, direct) < 1e-9


def test_h_to_g_irrational_rejected():
    with pytest.raises(DomainError):
        h_to_g(HFunctionSpec(1, 0, [], [(0, math.sqrt(2))]))
