"""Thermonuclear reaction-rate integrals through Fox H- and Meijer G-functions."""
from .errors import (
    CoincidentPoles,
    CrossCheckFailed,
    DivergentSeries,
    DomainError,
    NoConvergence,
    NoSeparatingLine,
    PoleError,
    SignAnomaly,
    ThermoError,
)
from .mellin_barnes import GFunctionSpec, HFunctionSpec, eval_g, eval_h
from .result import EvalResult, Method
from .thermo import (
    CLOSED,
    ORACLE,
    EvalMode,
    GeneralI,
    I1,
    I2,
    I3,
    I4,
    Kratzel,
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

__version__ = "0.1.0"
