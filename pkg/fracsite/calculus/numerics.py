"""
Shared numerical kernels: extrapolated limits, adaptive quadrature and bracketed
root finding.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from django.core.exceptions import ValidationError
from scipy import optimize

from .conf import vfrac_settings
from .exceptions import DivergenceError, NoBracketError, QuadratureError, VFracError

logger = logging.getLogger(__name__)

MACHINE_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class EpsilonSchedule:
    """A geometric sequence of steps eps0, eps0*ratio, ... used to approach eps -> 0."""

    eps0: float
    ratio: float = 0.5
    levels: int = 6

    def __post_init__(self):
        self.clean()

    def clean(self):
        if not (math.isfinite(self.eps0) and self.eps0 > 0):
            raise ValidationError("epsilon schedule needs eps0 > 0")
        if not 0 < self.ratio < 1:
            raise ValidationError("epsilon schedule ratio must lie in (0, 1)")
        if int(self.levels) != self.levels or self.levels < 2:
            raise ValidationError("epsilon schedule needs at least 2 levels")

    @classmethod
    def for_point(cls, t, alpha, eps0=None, levels=None):
        """Default schedule at t: eps0 = EPS_SCALE * t^alpha keeps the H argument small."""
        return cls(
            eps0=eps0 if eps0 is not None else vfrac_settings("EPS_SCALE") * t**alpha,
            ratio=vfrac_settings("EPS_RATIO"),
            levels=levels if levels is not None else vfrac_settings("EPS_LEVELS"),
        )

    def steps(self):
        return self.eps0 * self.ratio ** np.arange(self.levels)


@dataclass(frozen=True)
class LimitEstimate:
    value: float
    err_estimate: float


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    err_estimate: float
    subdivisions: int

    def scaled(self, factor):
        return QuadratureResult(self.value * factor, self.err_estimate * abs(factor), self.subdivisions)


def extrapolated_limit(samples):
    """
    Richardson extrapolation of ``(eps, quotient)`` samples to eps = 0.

    Neville's scheme evaluates at zero the interpolating polynomial through the
    first m + 1 samples, for m = 0..n-1, which assumes an error expansion in integer
    powers of eps. The last extrapolant is returned together with its distance to
    the one before it.

    Raises:
        ValidationError: fewer than two samples, or eps not strictly decreasing
        DivergenceError: the extrapolants are not finite or keep moving apart
    """
    eps = np.array([float(s[0]) for s in samples])
    values = np.array([float(s[1]) for s in samples])
    if len(eps) < 2:
        raise ValidationError("extrapolation needs at least two samples")
    if np.any(np.diff(eps) >= 0):
        raise ValidationError("extrapolation samples must have strictly decreasing eps")
    if not np.all(np.isfinite(values)):
        raise DivergenceError("non-finite difference quotient in extrapolation samples")

    # tableau[i] holds P_{i..i+m}(0) after step m
    tableau = values.copy()
    diagonal = [tableau[0]]
    for m in range(1, len(eps)):
        for i in range(len(eps) - m):
            j = i + m
            tableau[i] = (eps[i] * tableau[i + 1] - eps[j] * tableau[i]) / (eps[i] - eps[j])
        diagonal.append(tableau[0])
    diagonal = np.array(diagonal)
    if not np.all(np.isfinite(diagonal)):
        raise DivergenceError("extrapolation produced non-finite values")

    steps = np.abs(np.diff(diagonal))
    value = float(diagonal[-1])
    if len(steps) >= 3 and steps[-1] > steps[-2] > steps[-3]:
        if steps[-1] > 1e-8 * max(1.0, abs(value)):
            raise DivergenceError(f"successive extrapolants grow: {steps[-3:].tolist()}")
    logger.debug("extrapolated limit %.17g (steps %s)", value, steps.tolist())
    return LimitEstimate(value=value, err_estimate=float(steps[-1]))


def central_difference(f, t, h0=None, levels=4, ratio=0.5):
    """
    f'(t) from central differences extrapolated in h^2.

    This is the explicit finite-difference fallback; the operators only use it
    when asked to.
    """
    if h0 is None:
        h0 = 1e-2 * abs(t) if t != 0 else 1e-2
    steps = h0 * ratio ** np.arange(levels)
    samples = [(h * h, (f(t + h) - f(t - h)) / (2.0 * h)) for h in steps]
    return extrapolated_limit(samples)


def _probe(f, x):
    try:
        value = float(f(x))
    except (VFracError, ZeroDivisionError, OverflowError, ValueError):
        return math.nan
    return value


def adaptive_quad(f, a, b, tol=None, *, weight_power=None, max_depth=None, max_subdivisions=None):
    """
    Adaptive Simpson quadrature of f over [a, b].

    With ``weight_power=w`` (w > -1) the integrand is f(x) * x^w; at a = 0 the
    substitution x = u^(1/(1+w)) turns it into the bounded f(u^(1/(1+w))) / (1+w).
    Without a declared weight, a non-finite f(0) at a = 0 triggers x = u^8, which
    regularises power singularities milder than x^(-7/8).

    Raises:
        ValidationError: a > b or a non-positive tolerance
        QuadratureError: the subdivision budget ran out or the integrand is not finite
    """
    tol = vfrac_settings("QUAD_TOL") if tol is None else tol
    max_depth = vfrac_settings("QUAD_MAX_DEPTH") if max_depth is None else max_depth
    max_subdivisions = (
        vfrac_settings("QUAD_MAX_SUBDIVISIONS") if max_subdivisions is None else max_subdivisions
    )
    a, b = float(a), float(b)
    if a > b:
        raise ValidationError("quadrature needs a <= b")
    if not tol > 0:
        raise ValidationError("quadrature tolerance must be positive")
    if a == b:
        return QuadratureResult(0.0, 0.0, 1)

    if weight_power is not None:
        if weight_power <= -1:
            raise ValidationError("the endpoint weight x^w is only integrable for w > -1")
        if a == 0.0:
            power = 1.0 / (1.0 + weight_power)

            def integrand(u):
                return power * f(u**power)

            lo, hi = 0.0, b ** (1.0 + weight_power)
        else:

            def integrand(x):
                return f(x) * math.exp(weight_power * math.log(x))

            lo, hi = a, b
    elif a == 0.0 and not math.isfinite(_probe(f, 0.0)):
        logger.debug("non-finite integrand at 0, substituting x = u^8")

        def integrand(u):
            return 0.0 if u == 0.0 else 8.0 * u**7 * f(u**8)

        lo, hi = 0.0, b**0.125
    else:
        integrand, lo, hi = f, a, b

    subdivisions = 0

    def evaluate(x):
        value = float(integrand(x))
        if not math.isfinite(value):
            raise QuadratureError(f"integrand is not finite at x={x!r}")
        return value

    def simpson(left, right, f_left, f_mid, f_right):
        return (right - left) / 6.0 * (f_left + 4.0 * f_mid + f_right)

    def refine(left, right, f_left, f_mid, f_right, whole, local_tol, depth):
        nonlocal subdivisions
        subdivisions += 1
        if subdivisions > max_subdivisions:
            raise QuadratureError(f"more than {max_subdivisions} subdivisions on [{a:g}, {b:g}]")
        mid = 0.5 * (left + right)
        f_lm = evaluate(0.5 * (left + mid))
        f_rm = evaluate(0.5 * (mid + right))
        left_half = simpson(left, mid, f_left, f_lm, f_mid)
        right_half = simpson(mid, right, f_mid, f_rm, f_right)
        delta = left_half + right_half - whole
        if (
            depth >= max_depth
            or abs(delta) <= 15.0 * local_tol
            or abs(delta) <= 64.0 * MACHINE_EPS * abs(left_half + right_half)
        ):
            return left_half + right_half + delta / 15.0, abs(delta) / 15.0
        value_l, err_l = refine(left, mid, f_left, f_lm, f_mid, left_half, 0.5 * local_tol, depth + 1)
        value_r, err_r = refine(mid, right, f_mid, f_rm, f_right, right_half, 0.5 * local_tol, depth + 1)
        return value_l + value_r, err_l + err_r

    f_lo, f_mid, f_hi = evaluate(lo), evaluate(0.5 * (lo + hi)), evaluate(hi)
    value, err = refine(lo, hi, f_lo, f_mid, f_hi, simpson(lo, hi, f_lo, f_mid, f_hi), tol, 0)
    logger.debug("quadrature on [%g, %g]: %d subdivisions, err %.3g", a, b, subdivisions, err)
    return QuadratureResult(value=value, err_estimate=err, subdivisions=subdivisions)


def find_root_bracketed(g, lo, hi, tol=None):
    """
    Bisection for a root of g in [lo, hi].

    Raises:
        NoBracketError: g(lo) and g(hi) have the same strict sign
    """
    tol = vfrac_settings("ROOT_TOL") if tol is None else tol
    g_lo, g_hi = float(g(lo)), float(g(hi))
    if g_lo == 0.0:
        return float(lo)
    if g_hi == 0.0:
        return float(hi)
    if g_lo * g_hi > 0:
        raise NoBracketError(f"g({lo:g}) and g({hi:g}) have the same sign")
    return float(optimize.bisect(g, lo, hi, xtol=tol, maxiter=500))


def scan_brackets(g, lo, hi, cells=None):
    """
    Sign-change scan of g on a uniform grid over [lo, hi].

    Returns a list of (left, right) brackets in grid order; an exact zero at a
    grid point x is reported as (x, x).
    """
    cells = vfrac_settings("ROOT_SCAN_CELLS") if cells is None else cells
    grid = np.linspace(lo, hi, cells + 1)
    values = np.array([g(x) for x in grid], dtype=float)
    signs = np.sign(values)
    brackets = []
    for k in range(cells + 1):
        if signs[k] == 0:
            brackets.append((float(grid[k]), float(grid[k])))
        elif k < cells and signs[k] * signs[k + 1] < 0:
            brackets.append((float(grid[k]), float(grid[k + 1])))
    return brackets


def find_root(g, lo, hi, tol=None, cells=None, interior=False):
    """
    First root of g on [lo, hi] found by the sign scan, refined by bisection.

    With ``interior=True`` roots sitting exactly on lo or hi are skipped.
    """
    for left, right in scan_brackets(g, lo, hi, cells):
        if left == right:
            if interior and (left == lo or left == hi):
                continue
            return left
        return find_root_bracketed(g, left, right, tol)
    raise NoBracketError(f"no sign change of g on [{lo:g}, {hi:g}]")
