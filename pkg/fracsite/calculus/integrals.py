"""
The V-fractional integral ``(1/C) * int_a^t f(x) x^(alpha - 1) dx`` and the
closed forms built on it.
"""
import enum
import logging
import math
from dataclasses import dataclass

from django.core.exceptions import ValidationError

from .conf import vfrac_settings
from .derivatives import Order, coefficient
from .functions import FnSpec, power
from .numerics import adaptive_quad
from .special_functions import MLParams, gamma, log_gamma, ml_eval

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntervalSpec:
    """Integration limits, 0 <= a <= t."""

    a: float
    t: float

    def __post_init__(self):
        self.clean()

    def clean(self):
        if not (math.isfinite(self.a) and math.isfinite(self.t)):
            raise ValidationError("interval limits must be finite")
        if self.a < 0:
            raise ValidationError("the lower limit a must be non-negative")
        if self.t < self.a:
            raise ValidationError(f"the upper limit t={self.t!r} is below a={self.a!r}")

    @property
    def length(self):
        return self.t - self.a


def _integration_order(alpha):
    if isinstance(alpha, Order):
        alpha = alpha.alpha
    alpha = float(alpha)
    if not 0 < alpha <= 1:
        raise ValidationError(f"the integral is defined for 0 < alpha <= 1, got {alpha!r}")
    return alpha


def weighted_integral(f, iv, r, params, tol=None):
    """
    ``(1/C) * int_a^t f(x) x^(r - 1) dx`` for any r > 0.

    Orders r > 1 appear in the composition law, where I_{alpha+mu} is taken
    with this same weight.
    """
    if not r > 0:
        raise ValidationError("integral order must be positive")
    tol = vfrac_settings("QUAD_TOL") if tol is None else tol
    result = adaptive_quad(f, iv.a, iv.t, tol, weight_power=r - 1.0)
    return result.scaled(1.0 / coefficient(params))


def integrate(f, iv, alpha, params, tol=None):
    """
    The V-fractional integral of f over [a, t] as a QuadratureResult.

    A zero lower limit is handled by the substitution x = u^(1/alpha), under
    which the weight disappears.

    Raises:
        ValidationError: alpha outside (0, 1]
        QuadratureError: the quadrature did not converge
        ExprDomainError: f is not defined on (a, t]
    """
    return weighted_integral(f, iv, _integration_order(alpha), params, tol)


def integral_fn(f, a, alpha, params, tol=None):
    """
    s -> I_a f(s) as an FnSpec, with the analytic derivative f(s) s^(alpha - 1) / C.
    """
    alpha = _integration_order(alpha)

    def func(s):
        return integrate(f, IntervalSpec(a, s), alpha, params, tol).value

    def derivative():
        return (f * power(alpha - 1.0)).scaled(1.0 / coefficient(params))

    return FnSpec(label=f"I^{alpha:g}_{a:g}[{f.label}]", func=func, derivative_factory=derivative)


def integrate_composed(f, iv, alpha, mu, params, tol=None):
    """
    Both sides of the composition law

        I_alpha (I_mu f)(t) = (1/C) [(t^alpha / alpha) I_mu f(t) - (1/alpha) I_{alpha+mu} f(t)]

    The left side is a nested quadrature, with the inner integral at tol / 10.

    Returns:
        (lhs, rhs)
    """
    alpha, mu = _integration_order(alpha), _integration_order(mu)
    if alpha + mu >= 2:
        raise ValidationError("the composition law needs alpha + mu < 2")
    tol = vfrac_settings("QUAD_TOL") if tol is None else tol
    inner = integral_fn(f, iv.a, mu, params, tol / 10.0)
    lhs = integrate(inner, iv, alpha, params, tol).value
    c = coefficient(params)
    rhs = (
        iv.t**alpha / alpha * integrate(f, iv, mu, params, tol).value
        - weighted_integral(f, iv, alpha + mu, params, tol).value / alpha
    ) / c
    return lhs, rhs


def ml_integral_params(mu, kappa, alpha):
    """
    The six-parameter function E^{alpha, alpha+1, 1}_{mu, kappa, 1} that sums the
    term-wise integral of E_{mu,kappa}, since (alpha)_k / (alpha + 1)_k = alpha / (alpha + k).
    """
    return MLParams(gamma_p=mu, beta_p=kappa, rho_p=alpha, delta_p=alpha + 1.0, p=1.0, q=1.0)


def ml_integrate(mu, kappa, iv, alpha, params):
    """
    The V-fractional integral of E_{mu,kappa} over [a, t]:

        (1 / (C alpha)) [t^alpha E(t) - a^alpha E(a)],  E = E^{alpha, alpha+1, 1}_{mu, kappa, 1}

    At a = 0 the second term vanishes.
    """
    if not (mu > 0 and kappa > 0):
        raise ValidationError("mu and kappa must be positive")
    alpha = _integration_order(alpha)
    if iv.a == iv.t:
        return 0.0
    series = ml_integral_params(mu, kappa, alpha)
    upper = iv.t**alpha * ml_eval(series, iv.t)
    lower = iv.a**alpha * ml_eval(series, iv.a) if iv.a > 0 else 0.0
    return (upper - lower) / (coefficient(params) * alpha)


class RLMode(enum.Enum):
    INTEGRAL = "integral"
    DERIVATIVE = "derivative"


def rl_power(mode, mu, alpha, t):
    """
    Riemann-Liouville operators of order alpha applied to t^mu:

        integral:    Gamma(mu + 1) / Gamma(mu + 1 + alpha) * t^(mu + alpha)
        derivative:  Gamma(mu + 1) / Gamma(mu + 1 - alpha) * t^(mu - alpha)

    Raises:
        ValidationError: mu <= -1, alpha outside (0, 1) or t <= 0
        PoleError: mu + 1 - alpha is a non-positive integer in derivative mode
    """
    mode = RLMode(mode)
    if not mu > -1:
        raise ValidationError("the power t^mu needs mu > -1")
    if not 0 < alpha < 1:
        raise ValidationError("Riemann-Liouville order must lie in (0, 1)")
    if not t > 0:
        raise ValidationError("t must be positive")
    shift = alpha if mode is RLMode.INTEGRAL else -alpha
    numerator, _ = log_gamma(mu + 1.0)
    denominator, sign = log_gamma(mu + 1.0 + shift)
    return sign * math.exp(numerator - denominator) * t ** (mu + shift)


def rl_bridge_factor(alpha, params):
    """Gamma(gamma + beta) Gamma(alpha) (delta)_p / (Gamma(beta) (rho)_q) = Gamma(alpha) / C."""
    return gamma(alpha) / coefficient(params)


def kernel_power(t, mu):
    """x -> (t - x)^mu, clipped to 0 beyond x = t."""

    def func(x):
        return max(t - x, 0.0) ** mu

    def derivative():
        return kernel_power(t, mu - 1.0).scaled(-mu)

    return FnSpec(label=f"({t:g} - t)^{mu:g}", func=func, derivative_factory=derivative)


def rl_integral_bridge(mu, alpha, t, params, tol=None):
    """
    (lhs, rhs) of the bridge to the Riemann-Liouville integral:
    I_0 (t - x)^mu (t) against Gamma(alpha) / C * J^alpha t^mu.
    """
    lhs = integrate(kernel_power(t, mu), IntervalSpec(0.0, t), alpha, params, tol).value
    rhs = rl_bridge_factor(alpha, params) * rl_power(RLMode.INTEGRAL, mu, alpha, t)
    return lhs, rhs


def kernel_integral_fn(mu, alpha, params, tol=None):
    """s -> I_0 (s - x)^mu (s); no analytic derivative, it is differentiated numerically."""

    def func(s):
        return integrate(kernel_power(s, mu), IntervalSpec(0.0, s), alpha, params, tol).value

    return FnSpec(label=f"I^{alpha:g}_0[(s - t)^{mu:g}]", func=func)


def rl_derivative_factor(mu, alpha):
    """Gamma(alpha) Gamma(mu + 1 - alpha) / Gamma(mu + 1 + alpha)"""
    return gamma(alpha) * gamma(mu + 1.0 - alpha) / gamma(mu + 1.0 + alpha)
