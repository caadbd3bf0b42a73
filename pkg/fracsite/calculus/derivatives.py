"""
The truncated V-fractional derivative.

For differentiable f the limit definition reduces to the closed form
``C * t^(1 - alpha) * f'(t)`` with ``C = Gamma(beta) (rho)_q / (Gamma(gamma + beta) (delta)_p)``;
both are implemented so they can be checked against each other.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

from django.core.exceptions import ValidationError

from .conf import vfrac_settings
from .exceptions import MissingDerivativeError
from .functions import FnSpec, power
from .numerics import EpsilonSchedule, central_difference, extrapolated_limit
from .special_functions import MLParams, h_eval, log_gamma, log_pochhammer, ml_three

logger = logging.getLogger(__name__)

MAX_ORDER = 2.0


@dataclass(frozen=True)
class Order:
    """
    An operator order alpha with its integer part n, n < alpha <= n + 1.

    The base operator has n = 0 (0 < alpha <= 1); orders up to 2 are supported.
    """

    alpha: float
    n: int = 0

    def __post_init__(self):
        self.clean()

    def clean(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValidationError("order n must be a non-negative integer")
        if not (math.isfinite(self.alpha) and self.n < self.alpha <= self.n + 1):
            raise ValidationError(f"order alpha={self.alpha!r} must lie in ({self.n}, {self.n + 1}]")
        if self.alpha > MAX_ORDER:
            raise ValidationError(f"orders above {MAX_ORDER:g} are not supported")

    @classmethod
    def of(cls, alpha):
        """The Order for alpha with n = ceil(alpha) - 1."""
        if isinstance(alpha, Order):
            return alpha
        alpha = float(alpha)
        return cls(alpha=alpha, n=max(0, math.ceil(alpha) - 1))


@dataclass(frozen=True)
class OperatorConfig:
    params: MLParams = field(default_factory=MLParams)
    order: Order = field(default_factory=lambda: Order(vfrac_settings("DEFAULT_ALPHA")))
    trunc_i: int = field(default_factory=lambda: vfrac_settings("TRUNC_I"))
    schedule: Optional[EpsilonSchedule] = None  # None: EpsilonSchedule.for_point at each t
    tol: float = field(default_factory=lambda: vfrac_settings("DERIV_TOL"))
    allow_numeric_derivative: bool = False

    def __post_init__(self):
        self.clean()

    def clean(self):
        if int(self.trunc_i) != self.trunc_i or self.trunc_i < 1:
            raise ValidationError("truncation index i must be a positive integer")
        if not self.tol > 0:
            raise ValidationError("operator tolerance must be positive")

    @classmethod
    def build(cls, alpha=None, params=None, **kwargs):
        alpha = vfrac_settings("DEFAULT_ALPHA") if alpha is None else alpha
        return cls(params=params or MLParams(), order=Order.of(alpha), **kwargs)

    @property
    def alpha(self):
        return self.order.alpha

    def schedule_at(self, t):
        if self.schedule is not None:
            return self.schedule
        return EpsilonSchedule.for_point(t, self.order.alpha - self.order.n)


def log_coefficient(params):
    """ln C, assembled from log-gamma values."""
    return (
        log_gamma(params.beta_p)[0]
        + log_pochhammer(params.rho_p, params.q, 1)
        - log_gamma(params.gamma_p + params.beta_p)[0]
        - log_pochhammer(params.delta_p, params.p, 1)
    )


def coefficient(params):
    """C = Gamma(beta) (rho)_q / (Gamma(gamma + beta) (delta)_p)"""
    return math.exp(log_coefficient(params))


def _check_point(t):
    if not (math.isfinite(t) and t > 0):
        raise ValidationError(f"the derivative is defined for t > 0, got t={t!r}")


def derivative_value(f, k, t, allow_numeric=False):
    """
    f^(k)(t) from the analytic derivative chain.

    When the chain stops one step short and ``allow_numeric`` is set, the last
    step is a Richardson-extrapolated central difference.
    """
    fn = f
    for step in range(k):
        if fn.has_derivative:
            fn = fn.derivative
        elif allow_numeric and step == k - 1:
            logger.debug("numeric derivative of %s at t=%g", fn.label, t)
            return central_difference(fn, t).value
        else:
            raise MissingDerivativeError(
                f"{f.label} has no analytic derivative of order {k}; "
                "enable the numeric derivative to use finite differences"
            )
    return fn(t)


def deriv_closed(f, t, cfg):
    """
    Closed form of the derivative: ``C * t^(1 - alpha) * f'(t)``.

    Extended orders (n >= 1) are delegated to :func:`deriv_n_closed`.

    Raises:
        MissingDerivativeError: f has no analytic derivative and the numeric
            fallback is not enabled in ``cfg``
    """
    if cfg.order.n:
        return deriv_n_closed(f, t, cfg)
    _check_point(t)
    slope = derivative_value(f, 1, t, cfg.allow_numeric_derivative)
    return coefficient(cfg.params) * t ** (1.0 - cfg.alpha) * slope


def deriv_n_closed(f, t, cfg):
    """``C * t^(n + 1 - alpha) * f^(n+1)(t)`` for an order alpha in (n, n + 1]."""
    _check_point(t)
    n = cfg.order.n
    value = derivative_value(f, n + 1, t, cfg.allow_numeric_derivative)
    return coefficient(cfg.params) * t ** (n + 1.0 - cfg.alpha) * value


def deriv_limit_estimate(f, t, cfg):
    """
    The limit definition: the quotient
    ``[f^(n)(t * iH(eps * t^(n - alpha))) - f^(n)(t)] / eps`` sampled on the
    epsilon schedule and extrapolated to eps -> 0.

    Returns a LimitEstimate with the extrapolation error.
    """
    _check_point(t)
    n = cfg.order.n
    inner = f.nth_derivative(n) if n else f
    schedule = cfg.schedule_at(t)
    scale = t ** (n - cfg.alpha)
    base = inner(t)
    samples = []
    for eps in schedule.steps():
        moved = t * h_eval(cfg.params, eps * scale, cfg.trunc_i)
        samples.append((eps, (inner(moved) - base) / eps))
    return extrapolated_limit(samples)


def deriv_limit(f, t, cfg):
    return deriv_limit_estimate(f, t, cfg).value


def deriv_n_limit(f, t, cfg):
    """The limit definition of the n-th order operator; identical to deriv_limit for n = 0."""
    return deriv_limit_estimate(f, t, cfg).value


def v_derivative_fn(f, params, alpha):
    """
    The base operator applied to an FnSpec, as an FnSpec of t.

    Built as ``C * t^(1 - alpha) * f'`` from the FnSpec combinators so that the
    result carries its own analytic derivative and can be differentiated again.
    """
    alpha = Order.of(alpha).alpha
    scaled = (power(1.0 - alpha) * f.derivative).scaled(coefficient(params))
    return FnSpec(label=f"V^{alpha:g}[{f.label}]", func=scaled.func,
                  derivative_factory=scaled.derivative_factory, ast=scaled.ast)


def generalized_operator(h, t, r, params):
    """G_r h(t) = C * t^(1 - r) * h'(t) for any real order r > 0, including r > 1."""
    _check_point(t)
    if not r > 0:
        raise ValidationError("generalized operator order must be positive")
    return coefficient(params) * t ** (1.0 - r) * h.derivative(t)


def compose_orders(f, t, alpha, mu, params):
    """
    Both sides of the order composition law

        D^alpha (D^mu f) = C [(1 - mu) G_{alpha+mu} f + t G_{alpha+mu} f']

    evaluated independently: the left side applies the operator twice, the
    right side uses the generalized operator G.

    Returns:
        (lhs, rhs)
    """
    alpha, mu = Order.of(alpha).alpha, Order.of(mu).alpha
    cfg = OperatorConfig(params=params, order=Order(alpha))
    lhs = deriv_closed(v_derivative_fn(f, params, mu), t, cfg)
    r = alpha + mu
    rhs = coefficient(params) * (
        (1.0 - mu) * generalized_operator(f, t, r, params)
        + t * generalized_operator(f.derivative, t, r, params)
    )
    return lhs, rhs


def ml_deriv(mu, kappa, t, cfg, n=None):
    """
    The operator of order alpha in (n, n + 1] applied to E_{mu,kappa}:

        C * t^(n + 1 - alpha) * Gamma(n + 2) * E^{n+2}_{mu, kappa + mu (n + 1)}(t)

    evaluated with the three-parameter function.
    """
    _check_point(t)
    if not (mu > 0 and kappa > 0):
        raise ValidationError("mu and kappa must be positive")
    n = cfg.order.n if n is None else n
    if n != cfg.order.n:
        raise ValidationError(f"order alpha={cfg.alpha:g} does not lie in ({n}, {n + 1}]")
    series = ml_three(mu, kappa + mu * (n + 1), n + 2.0, t)
    return coefficient(cfg.params) * t ** (n + 1.0 - cfg.alpha) * math.factorial(n + 1) * series


def right_limit(g, t0=1e-2, ratio=0.5, levels=6):
    """
    Value of g(t) as t -> 0+, from samples on the decreasing grid t0 * ratio^j
    extrapolated with :func:`extrapolated_limit`.
    """
    samples = [(t, g(t)) for t in EpsilonSchedule(t0, ratio, levels).steps()]
    return extrapolated_limit(samples)


