"""
FnSpec: a real function of one variable with an optional analytic derivative,
plus the catalog of functions the operators are exercised on.
"""
import functools
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import expr
from .exceptions import MissingDerivativeError
from .special_functions import ml_two, ml_two_derivative


@dataclass(frozen=True, eq=False)
class FnSpec:
    """
    A callable ``t -> float``.

    Functions built from an expression keep their AST and differentiate it
    symbolically; closure-based functions carry ``derivative_factory``, a
    zero-argument callable returning the derivative as another FnSpec.
    """

    label: str
    func: Callable[[float], float] = field(repr=False)
    derivative_factory: Optional[Callable[[], "FnSpec"]] = field(default=None, repr=False)
    ast: Optional[expr.Node] = field(default=None, repr=False)

    @classmethod
    def from_ast(cls, node):
        return cls(
            label=expr.to_source(node),
            func=expr.compile_ast(node),
            derivative_factory=lambda: cls.from_ast(expr.differentiate(node)),
            ast=node,
        )

    @classmethod
    def from_expression(cls, src):
        return cls.from_ast(expr.parse(src))

    def __call__(self, t):
        return float(self.func(t))

    @property
    def has_derivative(self):
        return self.derivative_factory is not None

    @functools.cached_property
    def derivative(self):
        if self.derivative_factory is None:
            raise MissingDerivativeError(f"no analytic derivative for {self.label}")
        return self.derivative_factory()

    def nth_derivative(self, n):
        fn = self
        for _ in range(n):
            fn = fn.derivative
        return fn

    def without_derivative(self):
        """The same function with its derivative hidden (forces the numeric paths)."""
        return FnSpec(label=self.label, func=self.func)

    # Combinators. Two AST-backed operands combine symbolically.

    def _combine(self, other, op, func, derivative_factory):
        if self.ast is not None and other.ast is not None:
            return FnSpec.from_ast(expr.BinOp(op, self.ast, other.ast))
        if not (self.has_derivative and other.has_derivative):
            derivative_factory = None
        return FnSpec(label=f"({self.label}) {op} ({other.label})", func=func,
                      derivative_factory=derivative_factory)

    def __add__(self, other):
        other = _as_fn(other)
        return self._combine(other, "+", lambda t: self(t) + other(t),
                             lambda: self.derivative + other.derivative)

    def __sub__(self, other):
        other = _as_fn(other)
        return self._combine(other, "-", lambda t: self(t) - other(t),
                             lambda: self.derivative - other.derivative)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return self.scaled(other)
        return self._combine(other, "*", lambda t: self(t) * other(t),
                             lambda: self.derivative * other + self * other.derivative)

    def __rmul__(self, other):
        return self.scaled(other)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return self.scaled(1.0 / other)
        return self._combine(
            other, "/", lambda t: self(t) / other(t),
            lambda: (self.derivative * other - self * other.derivative) / (other * other),
        )

    def __neg__(self):
        return self.scaled(-1.0)

    def scaled(self, factor):
        factor = float(factor)
        if self.ast is not None:
            return FnSpec.from_ast(expr.BinOp("*", expr.Const(factor), self.ast))
        return FnSpec(
            label=f"{factor:g} * ({self.label})",
            func=lambda t: factor * self(t),
            derivative_factory=(lambda: self.derivative.scaled(factor)) if self.has_derivative else None,
        )

    def compose(self, inner):
        """t -> self(inner(t)), differentiated by the chain rule."""
        if self.ast is not None and inner.ast is not None:
            return FnSpec.from_ast(expr.substitute(self.ast, inner.ast))
        derivative_factory = None
        if self.has_derivative and inner.has_derivative:
            derivative_factory = lambda: self.derivative.compose(inner) * inner.derivative  # noqa: E731
        return FnSpec(label=f"({self.label}) o ({inner.label})", func=lambda t: self(inner(t)),
                      derivative_factory=derivative_factory)

    def absolute(self):
        """|f|; no derivative, since |f| has corners where f changes sign."""
        return FnSpec(label=f"|{self.label}|", func=lambda t: abs(self(t)))


def _as_fn(value):
    if isinstance(value, FnSpec):
        return value
    return const(value)


# Catalog


def const(c):
    return FnSpec.from_ast(expr.Const(float(c)))


def power(a):
    return FnSpec.from_ast(expr.make_pow(expr.T, float(a)))


def _linear(a):
    return expr.make_mul(expr.Const(float(a)), expr.T)


def exp_at(a):
    """exp(a t)"""
    return FnSpec.from_ast(expr.Call("exp", _linear(a)))


def sin_at(a):
    return FnSpec.from_ast(expr.Call("sin", _linear(a)))


def cos_at(a):
    return FnSpec.from_ast(expr.Call("cos", _linear(a)))


def _t_alpha_over_alpha(alpha):
    return expr.BinOp("/", expr.make_pow(expr.T, float(alpha)), expr.Const(float(alpha)))


def t_alpha_over_alpha(alpha):
    """t^alpha / alpha, whose V-fractional derivative of order alpha is the constant C."""
    return FnSpec.from_ast(_t_alpha_over_alpha(alpha))


def sin_t_alpha(alpha):
    return FnSpec.from_ast(expr.Call("sin", _t_alpha_over_alpha(alpha)))


def cos_t_alpha(alpha):
    return FnSpec.from_ast(expr.Call("cos", _t_alpha_over_alpha(alpha)))


def exp_t_alpha(alpha):
    return FnSpec.from_ast(expr.Call("exp", _t_alpha_over_alpha(alpha)))


def mlf(mu, kappa, order=0):
    """
    t -> d^order/dt^order E_{mu,kappa}(t), the two-parameter Mittag-Leffler
    function and its series derivatives of every order.
    """
    if order == 0:
        func = functools.partial(ml_two, mu, kappa)
        label = f"E_{{{mu:g},{kappa:g}}}(t)"
    else:
        func = lambda t: ml_two_derivative(mu, kappa, t, order)  # noqa: E731
        label = f"E_{{{mu:g},{kappa:g}}}^({order})(t)"
    return FnSpec(label=label, func=func, derivative_factory=lambda: mlf(mu, kappa, order + 1))


def catalog(alpha):
    """The functions the derivative agreement checks sweep, keyed by label."""
    entries = [
        const(7.0),
        power(2.0),
        power(3.5),
        exp_at(1.0),
        exp_at(-0.5),
        sin_at(2.0),
        cos_at(1.5),
        t_alpha_over_alpha(alpha),
        sin_t_alpha(alpha),
        cos_t_alpha(alpha),
        exp_t_alpha(alpha),
        mlf(0.5, 1.0),
        FnSpec.from_expression("(t - 1) * (t - 3)"),
    ]
    return {fn.label: fn for fn in entries}


def is_constant(fn):
    return fn.ast is not None and isinstance(fn.ast, expr.Const)
