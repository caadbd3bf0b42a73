"""
Executable checks of the identities, inequalities and existence theorems of the
V-fractional calculus.

Each rule evaluates both sides of its statement on a suite of cases and reports
the residual ``|lhs - rhs| / max(1, |rhs|)`` per case. Inequalities report the
amount by which they are violated; existence theorems locate their witness by a
sign scan followed by bisection.
"""
import enum
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from django.core.exceptions import ValidationError

from . import functions as fns
from .conf import vfrac_settings
from .derivatives import (
    Order,
    OperatorConfig,
    coefficient,
    compose_orders,
    deriv_closed,
    deriv_limit,
    generalized_operator,
    log_coefficient,
    ml_deriv,
    v_derivative_fn,
)
from .exceptions import NoBracketError, NoWitnessError, PreconditionError
from .functions import FnSpec
from .integrals import (
    IntervalSpec,
    integral_fn,
    integrate,
    integrate_composed,
    kernel_integral_fn,
    ml_integrate,
    rl_derivative_factor,
    rl_integral_bridge,
    rl_power,
    RLMode,
)
from .numerics import find_root
from .special_functions import MLParams, h_terms, h_eval, ml_three, reciprocal_gamma

logger = logging.getLogger(__name__)

# Tightened quadrature tolerance for checks whose residual goes through an integral.
CHECK_QUAD_TOL = 1e-11


class RuleId(enum.Enum):
    LINEARITY_D = "linearity_d"
    PRODUCT = "product"
    QUOTIENT = "quotient"
    CONSTANT_ZERO = "constant_zero"
    CHAIN_COMPOSITION = "chain_composition"
    ORDER_COMPOSITION = "order_composition"
    CONTINUITY = "continuity"
    ROLLE = "rolle"
    MVT = "mvt"
    EXTENDED_MVT = "extended_mvt"
    LINEARITY_I = "linearity_i"
    INVERSE = "inverse"
    FTC = "ftc"
    PARTS = "parts"
    ABS_BOUND = "abs_bound"
    SUP_BOUND = "sup_bound"
    INTEGRAL_COMPOSITION = "integral_composition"
    INTEGRAL_MVT = "integral_mvt"
    AVERAGE_VALUE = "average_value"
    RL_INTEGRAL_BRIDGE = "rl_integral_bridge"
    RL_DERIVATIVE_BRIDGE = "rl_derivative_bridge"
    REDUCTION_M_FRACTIONAL = "reduction_m_fractional"
    REDUCTION_CONFORMABLE = "reduction_conformable"
    ML_DERIV_IDENTITY = "ml_deriv_identity"
    ML_INTEGRAL_IDENTITY = "ml_integral_identity"


class WitnessMode(enum.Enum):
    ROLLE = "rolle"
    MVT = "mvt"
    EXTENDED_MVT = "extended_mvt"
    INTEGRAL_MVT = "integral_mvt"
    AVERAGE_VALUE = "average_value"


DERIVATIVE_MODES = (WitnessMode.ROLLE, WitnessMode.MVT, WitnessMode.EXTENDED_MVT)


@dataclass(frozen=True)
class CaseResult:
    inputs: dict
    residual: float
    witness: Optional[float] = None


@dataclass(frozen=True)
class VerificationReport:
    rule: RuleId
    cases: list
    max_residual: float
    passed: bool
    tolerance: float
    warnings: list = field(default_factory=list)

    @property
    def case_count(self):
        return len(self.cases)


def residual(lhs, rhs):
    return abs(lhs - rhs) / max(1.0, abs(rhs))


def describe(value):
    """JSON-friendly rendering of a case input."""
    if isinstance(value, FnSpec):
        return value.label
    if isinstance(value, MLParams):
        return value.as_dict()
    if isinstance(value, IntervalSpec):
        return [value.a, value.t]
    if isinstance(value, Order):
        return value.alpha
    if isinstance(value, enum.Enum):
        return value.value
    return value


# Parameter sets and functions of the default suites

ALL_ONES = MLParams()
PARAMETER_SETS = (
    ALL_ONES,
    MLParams(gamma_p=0.5, beta_p=1.5, rho_p=2.0, delta_p=1.2, p=0.8, q=1.1),
    MLParams(gamma_p=2.0, beta_p=0.7, rho_p=0.5, delta_p=2.5, p=1.5, q=2.0),
)
ALPHAS = (0.1, 0.5, 0.9)
POINTS = (0.5, 1.0, 2.0)


def _default_functions(alpha):
    return [
        fns.power(2.0),
        fns.exp_at(1.0),
        fns.sin_at(1.0),
        FnSpec.from_expression("(t - 1) * (t - 3)"),
        fns.t_alpha_over_alpha(alpha),
    ]


def _cfg(alpha, params):
    return OperatorConfig(params=params, order=Order.of(alpha))


def _grid(alphas=ALPHAS, params_sets=PARAMETER_SETS, points=POINTS):
    for params in params_sets:
        for alpha in alphas:
            for t in points:
                yield params, alpha, t


# Derivative rules


def _suite_linearity_d():
    pairs = [
        (fns.power(2.0), fns.sin_at(1.0)),
        (fns.exp_at(1.0), FnSpec.from_expression("(t - 1) * (t - 3)")),
        (fns.cos_at(2.0), fns.power(3.5)),
    ]
    return [
        {"f": f, "g": g, "a": 2.0, "b": -3.0, "t": t, "alpha": alpha, "params": params}
        for f, g in pairs
        for params, alpha, t in _grid()
    ]


def _check_linearity_d(case):
    f, g, a, b = case["f"], case["g"], case["a"], case["b"]
    cfg = _cfg(case["alpha"], case["params"])
    lhs = deriv_closed(f.scaled(a) + g.scaled(b), case["t"], cfg)
    rhs = a * deriv_closed(f, case["t"], cfg) + b * deriv_closed(g, case["t"], cfg)
    return residual(lhs, rhs), None


def _suite_product():
    pairs = [
        (fns.power(2.0), fns.exp_at(1.0)),
        (fns.sin_at(1.0), fns.cos_at(2.0)),
        (FnSpec.from_expression("(t - 1) * (t - 3)"), fns.power(0.5)),
    ]
    return [
        {"f": f, "g": g, "t": t, "alpha": alpha, "params": params}
        for f, g in pairs
        for params, alpha, t in _grid()
    ]


def _check_product(case):
    f, g, t = case["f"], case["g"], case["t"]
    cfg = _cfg(case["alpha"], case["params"])
    lhs = deriv_closed(f * g, t, cfg)
    rhs = f(t) * deriv_closed(g, t, cfg) + g(t) * deriv_closed(f, t, cfg)
    return residual(lhs, rhs), None


def _suite_quotient():
    pairs = [
        (fns.sin_at(1.0), fns.exp_at(1.0)),
        (fns.power(2.0), FnSpec.from_expression("t^2 + 1")),
        (fns.exp_at(-0.5), FnSpec.from_expression("2 + cos(t)")),
    ]
    return [
        {"f": f, "g": g, "t": t, "alpha": alpha, "params": params}
        for f, g in pairs
        for params, alpha, t in _grid()
    ]


def _check_quotient(case):
    f, g, t = case["f"], case["g"], case["t"]
    cfg = _cfg(case["alpha"], case["params"])
    lhs = deriv_closed(f / g, t, cfg)
    rhs = (g(t) * deriv_closed(f, t, cfg) - f(t) * deriv_closed(g, t, cfg)) / g(t) ** 2
    return residual(lhs, rhs), None


def _suite_constant_zero():
    return [
        {"f": fns.const(c), "t": t, "alpha": alpha, "params": params}
        for c in (7.0, -2.5)
        for params, alpha, t in _grid()
    ]


def _check_constant_zero(case):
    cfg = _cfg(case["alpha"], case["params"])
    closed = deriv_closed(case["f"], case["t"], cfg)
    limit = deriv_limit(case["f"], case["t"], cfg)
    return max(abs(closed), abs(limit)), None


def _suite_chain_composition():
    pairs = [
        (fns.sin_at(1.0), fns.power(2.0)),
        (fns.exp_at(1.0), fns.sin_at(1.0)),
        (fns.power(3.0), fns.t_alpha_over_alpha(0.5)),
        (FnSpec.from_expression("ln(t)"), FnSpec.from_expression("t^2 + 1")),
    ]
    return [
        {"f": f, "g": g, "t": t, "alpha": alpha, "params": params}
        for f, g in pairs
        for params, alpha, t in _grid()
    ]


def _check_chain_composition(case):
    f, g, t = case["f"], case["g"], case["t"]
    cfg = _cfg(case["alpha"], case["params"])
    lhs = deriv_closed(f.compose(g), t, cfg)
    rhs = f.derivative(g(t)) * deriv_closed(g, t, cfg)
    return residual(lhs, rhs), None


def _suite_order_composition():
    functions = [fns.power(2.0), fns.power(1.0), fns.exp_at(1.0), fns.sin_at(1.0)]
    orders = [(0.3, 0.4), (0.5, 0.5), (0.9, 0.8)]
    return [
        {"f": f, "alpha": alpha, "mu": mu, "t": t, "params": params}
        for f in functions
        for alpha, mu in orders
        for params in PARAMETER_SETS
        for t in POINTS
    ]


def _check_order_composition(case):
    lhs, rhs = compose_orders(case["f"], case["t"], case["alpha"], case["mu"], case["params"])
    return residual(lhs, rhs), None


def _suite_continuity():
    return [
        {"f": f, "t": t, "alpha": alpha, "params": params, "i": i}
        for params, alpha, t in _grid(alphas=(0.1, 0.5, 0.9), points=(0.5, 1.0, 2.0))
        for f in _default_functions(alpha)
        for i in (1, 3)
    ]


def _check_continuity(case):
    """
    The increment f(t iH(eps t^-alpha)) - f(t) must shrink at least linearly in
    eps; the residual is the largest excess over (|Df(t)| + 1) eps.
    """
    f, t, params = case["f"], case["t"], case["params"]
    cfg = OperatorConfig(params=params, order=Order.of(case["alpha"]), trunc_i=case["i"])
    bound = abs(deriv_closed(f, t, cfg)) + 1.0
    base = f(t)
    excess = 0.0
    for eps in cfg.schedule_at(t).steps():
        increment = f(t * h_eval(params, eps * t ** (-cfg.alpha), cfg.trunc_i)) - base
        excess = max(excess, abs(increment) - bound * eps)
    return max(excess, 0.0), None


# Existence theorems


def _witness_equation(mode, f, g, iv, alpha, params, tol):
    """
    Returns (G, R): a witness c solves G(c) = 0, and |R(c)| is the residual of
    the theorem's own equation at c.
    """
    a, b = iv.a, iv.t
    if mode in DERIVATIVE_MODES:
        if not a > 0:
            raise PreconditionError("derivative-based mean value theorems need a > 0")
        cfg = _cfg(alpha, params)

        def d(fn):
            return lambda c: deriv_closed(fn, c, cfg)

        df = d(f)
        if mode is WitnessMode.ROLLE:
            if abs(f(b) - f(a)) > 1e-12 * max(1.0, abs(f(a)), abs(f(b))):
                raise PreconditionError(f"Rolle needs f(a) = f(b), got {f(a)!r} and {f(b)!r}")
            return df, df
        if mode is WitnessMode.MVT:
            # D(t^alpha / alpha) = C, hence the factor C on the secant slope
            target = coefficient(params) * (f(b) - f(a)) / ((b**alpha - a**alpha) / alpha)

            def secant_gap(c):
                return df(c) - target

            return secant_gap, secant_gap
        if g is None:
            raise PreconditionError("the extended mean value theorem needs a second function g")
        if g(b) == g(a):
            raise PreconditionError("the extended mean value theorem needs g(a) != g(b)")
        dg = d(g)
        samples = np.array([dg(x) for x in np.linspace(a, b, 65)[1:-1]])
        if np.any(samples == 0) or (samples.min() < 0 < samples.max()):
            raise PreconditionError("the extended mean value theorem needs Dg != 0 on (a, b)")
        ratio = (f(b) - f(a)) / (g(b) - g(a))
        return (lambda c: df(c) - ratio * dg(c)), (lambda c: df(c) / dg(c) - ratio)

    if mode is WitnessMode.INTEGRAL_MVT:
        weight = g if g is not None else fns.const(1.0)
        samples = np.array([weight(x) for x in np.linspace(a, b, 65)[1:]])
        if samples.min() < 0 < samples.max():
            raise PreconditionError("the integral mean value theorem needs g of one sign")
        denominator = integrate(weight, iv, alpha, params, tol).value
        if denominator == 0:
            raise PreconditionError("the integral of g vanishes")
        ratio = integrate(f * weight, iv, alpha, params, tol).value / denominator
    else:
        if not b > a:
            raise PreconditionError("the average value needs a < b")
        weighted = integrate(f, iv, alpha, params, tol).value * coefficient(params)
        ratio = alpha * weighted / (b**alpha - a**alpha)

    def level_gap(x):
        return f(x) - ratio

    return level_gap, level_gap


def _locate(mode, f, g, iv, alpha, params, tol=None):
    mode = WitnessMode(mode)
    alpha = Order.of(alpha).alpha
    tol = CHECK_QUAD_TOL if tol is None else tol
    equation, defining = _witness_equation(mode, f, g, iv, alpha, params, tol)
    lo, hi = iv.a, iv.t
    if fns.is_constant(f) and mode is not WitnessMode.EXTENDED_MVT:
        c = 0.5 * (lo + hi)
        return c, abs(defining(c))
    try:
        c = find_root(equation, lo, hi, tol=vfrac_settings("ROOT_TOL"),
                      interior=mode in DERIVATIVE_MODES)
    except NoBracketError as exc:
        raise NoWitnessError(f"no {mode.value} point for {f.label} on [{lo:g}, {hi:g}]") from exc
    return c, abs(defining(c))


def find_mean_value_point(mode, f, g, iv, alpha, params, tol=None):
    """
    Locates the point whose existence a mean value type theorem asserts.

    Modes ``rolle``, ``mvt`` and ``extended_mvt`` search (a, b) and need a > 0;
    ``integral_mvt`` and ``average_value`` search [a, b]. A constant f satisfies
    every defining equation identically, so the midpoint is returned.

    Args:
        mode: a WitnessMode or its value
        f: the function of the theorem
        g: the second function (extended_mvt) or the weight (integral_mvt, default 1)
        iv: the interval [a, b] as an IntervalSpec
        alpha: operator order in (0, 1]
        params: MLParams of the operator
        tol: quadrature tolerance for the integral modes

    Raises:
        PreconditionError: the theorem's hypotheses fail for these inputs
        NoWitnessError: the sign scan found no bracket
    """
    return _locate(mode, f, g, iv, alpha, params, tol)[0]


def _suite_rolle():
    cases = [
        (FnSpec.from_expression("(t - 1) * (t - 3)"), IntervalSpec(1.0, 3.0)),
        (fns.sin_at(1.0), IntervalSpec(0.5, math.pi - 0.5)),
        (FnSpec.from_expression("(t - 2)^2"), IntervalSpec(1.0, 3.0)),
        (fns.const(7.0), IntervalSpec(1.0, 2.0)),
    ]
    return [
        {"f": f, "interval": iv, "alpha": alpha, "params": params}
        for f, iv in cases
        for alpha in ALPHAS
        for params in PARAMETER_SETS[:2]
    ]


def _suite_mvt():
    cases = [
        (fns.power(2.0), IntervalSpec(1.0, 4.0)),
        (fns.exp_at(1.0), IntervalSpec(0.5, 2.0)),
        (fns.sin_at(1.0), IntervalSpec(0.2, 1.2)),
    ]
    return [
        {"f": f, "interval": iv, "alpha": alpha, "params": params}
        for f, iv in cases
        for alpha in (0.5, 0.9, 1.0)
        for params in PARAMETER_SETS[:2]
    ]


def _suite_extended_mvt():
    cases = [
        (fns.power(2.0), fns.exp_at(1.0), IntervalSpec(0.5, 2.0)),
        (fns.sin_at(1.0), fns.power(1.0), IntervalSpec(0.2, 1.2)),
        (fns.power(3.0), fns.t_alpha_over_alpha(0.5), IntervalSpec(1.0, 2.0)),
    ]
    return [
        {"f": f, "g": g, "interval": iv, "alpha": alpha, "params": params}
        for f, g, iv in cases
        for alpha in (0.5, 0.9)
        for params in PARAMETER_SETS[:2]
    ]


def _suite_integral_mvt():
    cases = [
        (fns.power(1.0), fns.const(1.0), IntervalSpec(0.0, 1.0)),
        (fns.power(2.0), fns.exp_at(1.0), IntervalSpec(0.0, 2.0)),
        (fns.sin_at(1.0), fns.power(1.0), IntervalSpec(0.5, 2.5)),
    ]
    return [
        {"f": f, "g": g, "interval": iv, "alpha": alpha, "params": params}
        for f, g, iv in cases
        for alpha in (0.5, 0.75)
        for params in PARAMETER_SETS[:2]
    ]


def _suite_average_value():
    cases = [
        (fns.power(1.0), IntervalSpec(0.0, 1.0)),
        (fns.exp_at(1.0), IntervalSpec(0.0, 2.0)),
        (fns.cos_at(1.0), IntervalSpec(0.5, 1.5)),
        (fns.const(3.0), IntervalSpec(0.0, 1.0)),
    ]
    return [
        {"f": f, "interval": iv, "alpha": alpha, "params": params}
        for f, iv in cases
        for alpha in (0.5, 1.0)
        for params in PARAMETER_SETS[:2]
    ]


def _witness_checker(mode):
    def check(case):
        c, defining_residual = _locate(
            mode, case["f"], case.get("g"), case["interval"], case["alpha"], case["params"]
        )
        return defining_residual, c

    return check


# Integral rules


def _integral_functions():
    return [fns.const(1.0), fns.power(2.0), fns.exp_at(1.0), fns.sin_at(1.0)]


def _suite_linearity_i():
    pairs = [(fns.power(2.0), fns.sin_at(1.0)), (fns.exp_at(1.0), fns.const(1.0))]
    return [
        {"f": f, "g": g, "a_coef": 2.0, "b_coef": -0.5, "interval": iv, "alpha": alpha, "params": params}
        for f, g in pairs
        for iv in (IntervalSpec(0.0, 1.0), IntervalSpec(0.5, 2.0))
        for alpha in (0.25, 0.5, 0.75)
        for params in PARAMETER_SETS[:2]
    ]


def _check_linearity_i(case):
    f, g, a, b, iv = case["f"], case["g"], case["a_coef"], case["b_coef"], case["interval"]
    alpha, params = case["alpha"], case["params"]
    lhs = integrate(f.scaled(a) + g.scaled(b), iv, alpha, params, CHECK_QUAD_TOL).value
    rhs = (a * integrate(f, iv, alpha, params, CHECK_QUAD_TOL).value
           + b * integrate(g, iv, alpha, params, CHECK_QUAD_TOL).value)
    return residual(lhs, rhs), None


def _suite_inverse():
    return [
        {"f": f, "a": a, "t": t, "alpha": alpha, "params": params}
        for f in _integral_functions()
        for a, t in ((0.0, 1.0), (0.5, 2.0))
        for alpha in (0.5, 0.75)
        for params in PARAMETER_SETS[:2]
    ]


def _check_inverse(case):
    """D(I_a f)(t) = f(t), with the derivative of I_a f taken by finite differences."""
    f, t, alpha, params = case["f"], case["t"], case["alpha"], case["params"]
    integral = integral_fn(f, case["a"], alpha, params, 1e-13).without_derivative()
    cfg = OperatorConfig(params=params, order=Order.of(alpha), allow_numeric_derivative=True)
    return residual(deriv_closed(integral, t, cfg), f(t)), None


def _suite_ftc():
    functions = [fns.power(2.0), fns.exp_at(1.0), fns.sin_at(1.0), FnSpec.from_expression("(t - 1) * (t - 3)")]
    return [
        {"f": f, "interval": iv, "alpha": alpha, "params": params}
        for f in functions
        for iv in (IntervalSpec(1.0, 2.0), IntervalSpec(0.0, 1.5))
        for alpha in (0.5, 0.9, 1.0)
        for params in PARAMETER_SETS[:2]
    ]


def _check_ftc(case):
    f, iv, alpha, params = case["f"], case["interval"], case["alpha"], case["params"]
    lhs = integrate(v_derivative_fn(f, params, alpha), iv, alpha, params, CHECK_QUAD_TOL).value
    return residual(lhs, f(iv.t) - f(iv.a)), None


def _suite_parts():
    pairs = [
        (fns.power(2.0), fns.sin_at(1.0)),
        (fns.exp_at(1.0), fns.power(1.0)),
        (fns.cos_at(1.0), fns.exp_at(-0.5)),
    ]
    return [
        {"f": f, "g": g, "interval": iv, "alpha": alpha, "params": params}
        for f, g in pairs
        for iv in (IntervalSpec(0.5, 2.0), IntervalSpec(1.0, 3.0))
        for alpha in (0.5, 0.75)
        for params in PARAMETER_SETS[:2]
    ]


def _check_parts(case):
    f, g, iv, alpha, params = case["f"], case["g"], case["interval"], case["alpha"], case["params"]
    lhs = integrate(f * v_derivative_fn(g, params, alpha), iv, alpha, params, CHECK_QUAD_TOL).value
    boundary = f(iv.t) * g(iv.t) - f(iv.a) * g(iv.a)
    rhs = boundary - integrate(g * v_derivative_fn(f, params, alpha), iv, alpha, params, CHECK_QUAD_TOL).value
    return residual(lhs, rhs), None


def _bound_functions():
    return [fns.sin_at(3.0), FnSpec.from_expression("(t - 1) * (t - 3)"), fns.cos_at(2.0), fns.const(-2.0)]


def _suite_bounds():
    return [
        {"f": f, "interval": iv, "alpha": alpha, "params": params}
        for f in _bound_functions()
        for iv in (IntervalSpec(0.0, 4.0), IntervalSpec(0.5, 2.5))
        for alpha in (0.25, 0.5, 0.75)
        for params in PARAMETER_SETS[:2]
    ]


def _check_abs_bound(case):
    """|I f| <= I |f|; the residual is the violation beyond twice the quadrature slack."""
    f, iv, alpha, params = case["f"], case["interval"], case["alpha"], case["params"]
    signed = integrate(f, iv, alpha, params, CHECK_QUAD_TOL)
    absolute = integrate(f.absolute(), iv, alpha, params, CHECK_QUAD_TOL)
    slack = 2.0 * CHECK_QUAD_TOL + signed.err_estimate + absolute.err_estimate
    return max(0.0, abs(signed.value) - absolute.value - slack), None


def _check_sup_bound(case):
    """|I f(t)| <= (1/C) N (t^alpha - a^alpha) / alpha with N the grid sup of |f|."""
    f, iv, alpha, params = case["f"], case["interval"], case["alpha"], case["params"]
    sup = max(abs(f(x)) for x in np.linspace(iv.a, iv.t, 257))
    bound = sup * (iv.t**alpha - iv.a**alpha) / alpha / coefficient(params)
    value = integrate(f, iv, alpha, params, CHECK_QUAD_TOL)
    return max(0.0, abs(value.value) - bound - CHECK_QUAD_TOL - value.err_estimate), None


def _suite_integral_composition():
    return [
        {"f": f, "interval": iv, "alpha": alpha, "mu": mu, "params": params}
        for f in (fns.const(1.0), fns.power(1.0), fns.exp_at(1.0))
        for iv in (IntervalSpec(0.0, 1.0), IntervalSpec(0.5, 1.5))
        for alpha, mu in ((0.5, 0.5), (0.3, 0.6))
        for params in PARAMETER_SETS[:2]
    ]


def _check_integral_composition(case):
    lhs, rhs = integrate_composed(
        case["f"], case["interval"], case["alpha"], case["mu"], case["params"], 1e-9
    )
    return residual(lhs, rhs), None


# Bridges to the Riemann-Liouville operators

BRIDGE_MUS = (0.0, 0.5, 1.0, 2.0)
BRIDGE_ALPHAS = (0.25, 0.5, 0.75)


def _suite_rl_bridges():
    return [
        {"mu": mu, "alpha": alpha, "t": t, "params": params}
        for mu in BRIDGE_MUS
        for alpha in BRIDGE_ALPHAS
        for t in (1.0, 2.0)
        for params in PARAMETER_SETS[:2]
    ]


def _check_rl_integral_bridge(case):
    lhs, rhs = rl_integral_bridge(case["mu"], case["alpha"], case["t"], case["params"], CHECK_QUAD_TOL)
    return residual(lhs, rhs), None


def _check_rl_derivative_bridge(case):
    """D applied to s -> I_0 (s - x)^mu against the scaled Riemann-Liouville derivative."""
    mu, alpha, t, params = case["mu"], case["alpha"], case["t"], case["params"]
    cfg = OperatorConfig(params=params, order=Order.of(alpha), allow_numeric_derivative=True)
    lhs = deriv_closed(kernel_integral_fn(mu, alpha, params, 1e-13), t, cfg)
    rhs = rl_derivative_factor(mu, alpha) * t**alpha * (mu + alpha) * rl_power(RLMode.DERIVATIVE, mu, alpha, t)
    return residual(lhs, rhs), None


# Reductions


def _suite_reduction_m_fractional():
    return [
        {"gamma": gamma_p, "z": z, "i": i}
        for gamma_p in (0.5, 1.0, 2.0, 3.5)
        for z in (-2.0, -1.0, 0.5, 1.0, 2.0)
        for i in (1, 3, 5)
    ]


def _check_reduction_m_fractional(case):
    """H with p = q = delta = rho = beta = 1 against the truncated one-parameter series, term by term."""
    gamma_p, z, i = case["gamma"], case["z"], case["i"]
    terms = h_terms(MLParams.one_parameter(gamma_p), z, i)
    expected = [z**k * reciprocal_gamma(gamma_p * k + 1.0) for k in range(i + 1)]
    return max(residual(h, e) for h, e in zip(terms, expected)), None


def _suite_reduction_conformable():
    return [
        {"f": f, "t": t, "alpha": alpha}
        for alpha in ALPHAS
        for f in _default_functions(alpha)
        for t in (0.5, 1.0, 2.0, 5.0)
    ]


def _check_reduction_conformable(case):
    """With all parameters 1, C = 1 and the operator is t^(1 - alpha) f'(t)."""
    f, t, alpha = case["f"], case["t"], case["alpha"]
    closed = deriv_closed(f, t, _cfg(alpha, ALL_ONES))
    conformable = t ** (1.0 - alpha) * f.derivative(t)
    return max(abs(log_coefficient(ALL_ONES)), abs(closed - conformable)), None


# Mittag-Leffler identities


def _suite_ml_deriv_identity():
    cases = [{"kind": "series", "t": float(t)} for t in np.linspace(0.0, 5.0, 11)]
    cases += [
        {"kind": "operator", "mu": mu, "kappa": kappa, "t": t, "alpha": alpha, "params": params}
        for mu, kappa in ((1.0, 1.0), (0.5, 1.0), (1.5, 0.5))
        for t in (0.5, 1.0, 2.0)
        for alpha in (0.5, 1.5)
        for params in PARAMETER_SETS[:2]
    ]
    return cases


def _check_ml_deriv_identity(case):
    """E^2_{1,2}(t) = e^t, and the operator formula against the term-wise differentiated series."""
    t = case["t"]
    if case["kind"] == "series":
        return residual(ml_three(1.0, 2.0, 2.0, t), math.exp(t)), None
    mu, kappa, params = case["mu"], case["kappa"], case["params"]
    cfg = _cfg(case["alpha"], params)
    return residual(ml_deriv(mu, kappa, t, cfg), deriv_closed(fns.mlf(mu, kappa), t, cfg)), None


def _suite_ml_integral_identity():
    return [
        {"mu": mu, "kappa": kappa, "interval": iv, "alpha": alpha, "params": params}
        for mu, kappa in ((1.0, 1.0), (0.5, 1.0), (2.0, 1.5))
        for iv in (IntervalSpec(0.0, 1.0), IntervalSpec(0.5, 2.0))
        for alpha in (0.5, 0.75)
        for params in PARAMETER_SETS[:2]
    ]


def _check_ml_integral_identity(case):
    mu, kappa, iv, alpha, params = case["mu"], case["kappa"], case["interval"], case["alpha"], case["params"]
    closed = ml_integrate(mu, kappa, iv, alpha, params)
    quadrature = integrate(fns.mlf(mu, kappa), iv, alpha, params, CHECK_QUAD_TOL).value
    return residual(closed, quadrature), None


@dataclass(frozen=True)
class Rule:
    suite: Callable[[], list]
    check: Callable[[dict], tuple]
    tolerance: Callable[[], float]
    witness: bool = False


def _closed_form():
    return vfrac_settings("CLOSED_FORM_TOL")


def _numeric():
    return vfrac_settings("NUMERIC_TOL")


def _fixed(value):
    return lambda: value


RULES = {
    RuleId.LINEARITY_D: Rule(_suite_linearity_d, _check_linearity_d, _closed_form),
    RuleId.PRODUCT: Rule(_suite_product, _check_product, _closed_form),
    RuleId.QUOTIENT: Rule(_suite_quotient, _check_quotient, _closed_form),
    RuleId.CONSTANT_ZERO: Rule(_suite_constant_zero, _check_constant_zero, _closed_form),
    RuleId.CHAIN_COMPOSITION: Rule(_suite_chain_composition, _check_chain_composition, _closed_form),
    RuleId.ORDER_COMPOSITION: Rule(_suite_order_composition, _check_order_composition, _closed_form),
    RuleId.CONTINUITY: Rule(_suite_continuity, _check_continuity, _numeric),
    RuleId.ROLLE: Rule(_suite_rolle, _witness_checker(WitnessMode.ROLLE), _fixed(1e-8), witness=True),
    RuleId.MVT: Rule(_suite_mvt, _witness_checker(WitnessMode.MVT), _numeric, witness=True),
    RuleId.EXTENDED_MVT: Rule(
        _suite_extended_mvt, _witness_checker(WitnessMode.EXTENDED_MVT), _numeric, witness=True
    ),
    RuleId.LINEARITY_I: Rule(_suite_linearity_i, _check_linearity_i, _fixed(1e-7)),
    RuleId.INVERSE: Rule(_suite_inverse, _check_inverse, _fixed(1e-7)),
    RuleId.FTC: Rule(_suite_ftc, _check_ftc, _fixed(1e-7)),
    RuleId.PARTS: Rule(_suite_parts, _check_parts, _fixed(1e-7)),
    RuleId.ABS_BOUND: Rule(_suite_bounds, _check_abs_bound, _numeric),
    RuleId.SUP_BOUND: Rule(_suite_bounds, _check_sup_bound, _numeric),
    RuleId.INTEGRAL_COMPOSITION: Rule(_suite_integral_composition, _check_integral_composition, _numeric),
    RuleId.INTEGRAL_MVT: Rule(
        _suite_integral_mvt, _witness_checker(WitnessMode.INTEGRAL_MVT), _fixed(1e-8), witness=True
    ),
    RuleId.AVERAGE_VALUE: Rule(
        _suite_average_value, _witness_checker(WitnessMode.AVERAGE_VALUE), _fixed(1e-8), witness=True
    ),
    RuleId.RL_INTEGRAL_BRIDGE: Rule(_suite_rl_bridges, _check_rl_integral_bridge, _numeric),
    RuleId.RL_DERIVATIVE_BRIDGE: Rule(_suite_rl_bridges, _check_rl_derivative_bridge, _numeric),
    RuleId.REDUCTION_M_FRACTIONAL: Rule(_suite_reduction_m_fractional, _check_reduction_m_fractional, _fixed(1e-14)),
    RuleId.REDUCTION_CONFORMABLE: Rule(_suite_reduction_conformable, _check_reduction_conformable, _fixed(1e-14)),
    RuleId.ML_DERIV_IDENTITY: Rule(_suite_ml_deriv_identity, _check_ml_deriv_identity, _fixed(1e-9)),
    RuleId.ML_INTEGRAL_IDENTITY: Rule(_suite_ml_integral_identity, _check_ml_integral_identity, _fixed(1e-7)),
}


def default_suite(rule):
    return RULES[RuleId(rule)].suite()


def verify(rule, suite=None, tol=None):
    """
    Runs ``rule`` over ``suite`` (its default suite when omitted).

    Witness rules that find no witness record a warning instead of a case; a
    report left with no cases at all does not pass.

    Raises:
        ValidationError: an empty suite or a non-positive tolerance
        PreconditionError: a case violates the theorem's hypotheses
    """
    rule = RuleId(rule)
    definition = RULES[rule]
    suite = definition.suite() if suite is None else list(suite)
    if not suite:
        raise ValidationError(f"{rule.value}: the test suite is empty")
    tolerance = definition.tolerance() if tol is None else float(tol)
    if not tolerance > 0:
        raise ValidationError("verification tolerance must be positive")

    cases, warnings = [], []
    for case in suite:
        inputs = {key: describe(value) for key, value in case.items()}
        try:
            case_residual, witness = definition.check(case)
        except NoWitnessError as exc:
            logger.warning("%s: %s", rule.value, exc)
            warnings.append(str(exc))
            continue
        cases.append(CaseResult(inputs=inputs, residual=float(case_residual), witness=witness))

    # Nothing checked is not a pass
    if not cases:
        warnings.append(f"{rule.value}: no case produced a witness")
    max_residual = max((case.residual for case in cases), default=0.0)
    passed = bool(cases) and max_residual <= tolerance
    logger.info(
        "%s: %d cases, max residual %.3e, tolerance %.1e, %s",
        rule.value, len(cases), max_residual, tolerance, "passed" if passed else "FAILED",
    )
    return VerificationReport(
        rule=rule,
        cases=cases,
        max_residual=max_residual,
        passed=passed,
        tolerance=tolerance,
        warnings=warnings,
    )


def verify_all(tol=None):
    """Every rule's default suite, in RuleId order."""
    return [verify(rule, tol=tol) for rule in RuleId]


def non_additivity_witness(f, t, alpha, mu, params):
    """(D^alpha D^mu f (t), G_{alpha+mu} f (t)): the composed operator against the naive order sum."""
    lhs, _ = compose_orders(f, t, alpha, mu, params)
    return lhs, generalized_operator(f, t, Order.of(alpha).alpha + Order.of(mu).alpha, params)


