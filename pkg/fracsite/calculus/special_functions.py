"""
Gamma function, generalized Pochhammer symbol and the Mittag-Leffler family.

Every series coefficient is assembled in log space,
``ln (rho)_{qk} - ln (delta)_{pk} - ln Gamma(gamma k + beta)``, and exponentiated
once, so large Pochhammer ratios never overflow on their own.
"""
import enum
import logging
import math
from dataclasses import dataclass

from django.core.exceptions import ValidationError

from .conf import vfrac_settings
from .exceptions import ConvergenceError, DomainGuardError, PoleError, RangeOverflowError

logger = logging.getLogger(__name__)

# Lanczos approximation, g = 7, n = 9.
LANCZOS_G = 7.0
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
LOG_SQRT_TWO_PI = 0.5 * math.log(2.0 * math.pi)
LOG_PI = math.log(math.pi)
LOG_FLOAT_MAX = math.log(1.7976931348623157e308)


def _is_pole(x):
    return x <= 0.0 and x == math.floor(x)


def _log_gamma_lanczos(x):
    # x >= 0.5
    if x == 1.0 or x == 2.0:
        return 0.0
    z = x - 1.0
    series = LANCZOS_COEFFICIENTS[0]
    for i, coefficient in enumerate(LANCZOS_COEFFICIENTS[1:], start=1):
        series += coefficient / (z + i)
    tt = z + LANCZOS_G + 0.5
    return LOG_SQRT_TWO_PI + (z + 0.5) * math.log(tt) - tt + math.log(series)


def log_gamma(x):
    """
    Returns ``(ln|Gamma(x)|, sign)`` where sign is +1 or -1.

    Uses the Lanczos approximation for x >= 1/2 and the reflection formula
    Gamma(x) Gamma(1 - x) = pi / sin(pi x) below that.

    Raises:
        PoleError: x is zero or a negative integer
    """
    x = float(x)
    if math.isnan(x):
        raise ValidationError("log_gamma argument is NaN")
    if _is_pole(x):
        raise PoleError(f"Gamma has a pole at x={x:g}")
    if x >= 0.5:
        return _log_gamma_lanczos(x), 1
    # sin(pi x) with the argument reduced to [-2, 2] first
    sine = math.sin(math.pi * math.fmod(x, 2.0))
    value = LOG_PI - math.log(abs(sine)) - _log_gamma_lanczos(1.0 - x)
    return value, (1 if sine > 0.0 else -1)


def gamma(x):
    """Signed Gamma(x)."""
    value, sign = log_gamma(x)
    if value > LOG_FLOAT_MAX:
        raise RangeOverflowError(f"Gamma({x:g}) exceeds the float range")
    return sign * math.exp(value)


def reciprocal_gamma(x):
    """1/Gamma(x); zero at the poles of Gamma."""
    if _is_pole(float(x)):
        return 0.0
    value, sign = log_gamma(x)
    return sign * math.exp(-value)


def log_pochhammer(rho, q, k):
    """ln (rho)_{qk} = ln Gamma(rho + qk) - ln Gamma(rho), exactly 0 for k = 0."""
    if k == 0:
        return 0.0
    return log_gamma(rho + q * k)[0] - log_gamma(rho)[0]


def gen_pochhammer(rho, q, k):
    """
    Generalized Pochhammer symbol (rho)_{qk} = Gamma(rho + qk) / Gamma(rho).

    Raises:
        ValidationError: rho or q not positive, or k not a non-negative integer
        RangeOverflowError: the result exceeds the float range
    """
    if rho <= 0 or q <= 0:
        raise ValidationError("Pochhammer parameters rho and q must be positive")
    if int(k) != k or k < 0:
        raise ValidationError("Pochhammer index k must be a non-negative integer")
    value = log_pochhammer(rho, q, int(k))
    if value > LOG_FLOAT_MAX:
        raise RangeOverflowError(f"({rho:g})_{{{q:g}*{int(k)}}} exceeds the float range")
    return math.exp(value)


@dataclass(frozen=True)
class MLParams:
    """
    The six parameters (gamma, beta, rho, delta, p, q) of the Mittag-Leffler family.

    The reduced families are the special cases documented on the constructors
    below; all-ones gives the exponential function.
    """

    gamma_p: float = 1.0
    beta_p: float = 1.0
    rho_p: float = 1.0
    delta_p: float = 1.0
    p: float = 1.0
    q: float = 1.0

    def __post_init__(self):
        self.clean()

    def clean(self):
        """
        Validates the parameters:
        - every parameter is a finite positive real
        - gamma + p >= q
        """
        errors = {}
        for name in ("gamma_p", "beta_p", "rho_p", "delta_p", "p", "q"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                errors[name] = f"{name} must be a positive real, got {value!r}"
        if errors:
            raise ValidationError(errors)
        if self.gamma_p + self.p < self.q:
            raise ValidationError("Mittag-Leffler parameters require gamma + p >= q")

    @classmethod
    def ones(cls):
        return cls()

    @classmethod
    def one_parameter(cls, gamma_p):
        return cls(gamma_p=gamma_p)

    @classmethod
    def two_parameter(cls, gamma_p, beta_p):
        return cls(gamma_p=gamma_p, beta_p=beta_p)

    @classmethod
    def three_parameter(cls, gamma_p, beta_p, rho_p):
        return cls(gamma_p=gamma_p, beta_p=beta_p, rho_p=rho_p)

    @classmethod
    def four_parameter(cls, gamma_p, beta_p, rho_p, q):
        return cls(gamma_p=gamma_p, beta_p=beta_p, rho_p=rho_p, q=q)

    @classmethod
    def five_parameter(cls, gamma_p, beta_p, rho_p, delta_p, q):
        return cls(gamma_p=gamma_p, beta_p=beta_p, rho_p=rho_p, delta_p=delta_p, q=q)

    def as_dict(self):
        return {
            "gamma": self.gamma_p,
            "beta": self.beta_p,
            "rho": self.rho_p,
            "delta": self.delta_p,
            "p": self.p,
            "q": self.q,
        }


class TruncationMode(enum.Enum):
    FIXED = "fixed"
    ADAPTIVE = "adaptive"


@dataclass(frozen=True)
class TruncationSpec:
    """How many series terms to sum: a fixed upper index or an adaptive stopping rule."""

    mode: TruncationMode
    i: int = 0
    tol: float = 1e-15
    k_max: int = 1000

    def __post_init__(self):
        self.clean()

    def clean(self):
        if self.mode is TruncationMode.FIXED:
            if int(self.i) != self.i or self.i < 0:
                raise ValidationError("fixed truncation index must be a non-negative integer")
        else:
            if not self.tol > 0:
                raise ValidationError("adaptive truncation tolerance must be positive")
            if int(self.k_max) != self.k_max or self.k_max < 1:
                raise ValidationError("adaptive truncation k_max must be a positive integer")

    @classmethod
    def fixed(cls, i):
        return cls(mode=TruncationMode.FIXED, i=i)

    @classmethod
    def adaptive(cls, tol=None, k_max=None):
        return cls(
            mode=TruncationMode.ADAPTIVE,
            tol=vfrac_settings("ML_TOL") if tol is None else tol,
            k_max=vfrac_settings("ML_K_MAX") if k_max is None else k_max,
        )


def _term(log_coefficient, z, k):
    if k == 0:
        return math.exp(log_coefficient)
    if z == 0.0:
        return 0.0
    log_magnitude = log_coefficient + k * math.log(abs(z))
    if log_magnitude > LOG_FLOAT_MAX:
        raise RangeOverflowError(f"series term k={k} overflows at z={z:g}")
    magnitude = math.exp(log_magnitude)
    return -magnitude if (z < 0.0 and k % 2) else magnitude


def _sum_series(log_coefficient, z, trunc, z_max=None):
    """
    Sums ``sum_k exp(log_coefficient(k)) z^k`` under a TruncationSpec.

    Adaptive mode stops at the first k where |term_k| < tol * max(1, |partial sum|)
    has held for ``ML_STOP_RUN`` consecutive k.
    """
    if trunc.mode is TruncationMode.FIXED:
        return math.fsum(_term(log_coefficient(k), z, k) for k in range(trunc.i + 1))

    z_max = vfrac_settings("Z_MAX") if z_max is None else z_max
    if abs(z) > z_max:
        raise DomainGuardError(f"|z|={abs(z):g} exceeds the adaptive evaluation limit {z_max:g}")
    required_run = vfrac_settings("ML_STOP_RUN")
    terms = []
    partial = 0.0
    run = 0
    for k in range(trunc.k_max + 1):
        term = _term(log_coefficient(k), z, k)
        terms.append(term)
        partial += term
        if abs(term) < trunc.tol * max(1.0, abs(partial)):
            run += 1
            if run >= required_run:
                logger.debug("series converged after %d terms at z=%g", k + 1, z)
                return math.fsum(terms)
        else:
            run = 0
    raise ConvergenceError(f"series at z={z:g} did not converge within k_max={trunc.k_max} terms")


def _six_parameter_log_coefficient(params):
    def log_coefficient(k):
        return (
            log_pochhammer(params.rho_p, params.q, k)
            - log_pochhammer(params.delta_p, params.p, k)
            - log_gamma(params.gamma_p * k + params.beta_p)[0]
        )

    return log_coefficient


def ml_eval(params, z, trunc=None, z_max=None):
    """
    Six-parameter Mittag-Leffler function E^{rho,delta,q}_{gamma,beta,p}(z).

    A fixed TruncationSpec returns the exact partial sum of the first i + 1 terms
    (the truncated function); the default adaptive spec sums to convergence.
    """
    trunc = trunc or TruncationSpec.adaptive()
    return _sum_series(_six_parameter_log_coefficient(params), float(z), trunc, z_max)


def ml_terms(params, z, i):
    """The individual terms k = 0..i of the six-parameter series."""
    log_coefficient = _six_parameter_log_coefficient(params)
    return [_term(log_coefficient(k), float(z), k) for k in range(i + 1)]


def h_terms(params, z, i):
    """The terms of H = Gamma(beta) * (truncated six-parameter function), k = 0..i."""
    if int(i) != i or i < 1:
        raise ValidationError("the H function needs a truncation index i >= 1")
    log_gamma_beta = log_gamma(params.beta_p)[0]
    log_coefficient = _six_parameter_log_coefficient(params)
    terms = [1.0]
    terms.extend(_term(log_gamma_beta + log_coefficient(k), float(z), k) for k in range(1, int(i) + 1))
    return terms


def h_eval(params, z, i):
    """
    The truncated function iH(z) = Gamma(beta) * iE(z); iH(0) == 1.

    Raises:
        ValidationError: i < 1, where H is identically 1 and the derivative degenerates
    """
    return math.fsum(h_terms(params, z, i))


# Independent evaluators for the reduced families, each summing its own series.


def ml_one(gamma_p, z, trunc=None):
    """E_gamma(z) = sum z^k / Gamma(gamma k + 1)."""
    trunc = trunc or TruncationSpec.adaptive()
    return _sum_series(lambda k: -log_gamma(gamma_p * k + 1.0)[0], float(z), trunc)


def ml_two(gamma_p, beta_p, z, trunc=None):
    """E_{gamma,beta}(z) = sum z^k / Gamma(gamma k + beta)."""
    trunc = trunc or TruncationSpec.adaptive()
    return _sum_series(lambda k: -log_gamma(gamma_p * k + beta_p)[0], float(z), trunc)


def ml_three(gamma_p, beta_p, rho_p, z, trunc=None):
    """E^rho_{gamma,beta}(z) = sum (rho)_k / k! z^k / Gamma(gamma k + beta)."""
    trunc = trunc or TruncationSpec.adaptive()

    def log_coefficient(k):
        return (
            log_pochhammer(rho_p, 1.0, k)
            - log_gamma(k + 1.0)[0]
            - log_gamma(gamma_p * k + beta_p)[0]
        )

    return _sum_series(log_coefficient, float(z), trunc)


def ml_four(gamma_p, beta_p, rho_p, q, z, trunc=None):
    """E^{rho,q}_{gamma,beta}(z) = sum (rho)_{qk} / k! z^k / Gamma(gamma k + beta)."""
    trunc = trunc or TruncationSpec.adaptive()

    def log_coefficient(k):
        return (
            log_pochhammer(rho_p, q, k)
            - log_gamma(k + 1.0)[0]
            - log_gamma(gamma_p * k + beta_p)[0]
        )

    return _sum_series(log_coefficient, float(z), trunc)


def ml_five(gamma_p, beta_p, rho_p, delta_p, q, z, trunc=None):
    """E^{rho,q}_{gamma,beta,delta}(z) = sum (rho)_{qk} / (delta)_k z^k / Gamma(gamma k + beta)."""
    trunc = trunc or TruncationSpec.adaptive()

    def log_coefficient(k):
        return (
            log_pochhammer(rho_p, q, k)
            - log_pochhammer(delta_p, 1.0, k)
            - log_gamma(gamma_p * k + beta_p)[0]
        )

    return _sum_series(log_coefficient, float(z), trunc)


def ml_two_derivative(gamma_p, beta_p, z, m, trunc=None):
    """
    m-th derivative of E_{gamma,beta}(z), differentiated term by term:
    sum_k Gamma(k + m + 1) / Gamma(k + 1) z^k / Gamma(gamma (k + m) + beta).
    """
    if int(m) != m or m < 0:
        raise ValidationError("derivative order m must be a non-negative integer")
    trunc = trunc or TruncationSpec.adaptive()

    def log_coefficient(k):
        return (
            log_gamma(k + m + 1.0)[0]
            - log_gamma(k + 1.0)[0]
            - log_gamma(gamma_p * (k + m) + beta_p)[0]
        )

    return _sum_series(log_coefficient, float(z), trunc)
