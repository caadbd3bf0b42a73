"""
Exceptions raised by the numerical core.

Invalid parameter values are reported with Django's ``ValidationError`` from the
``clean()`` methods of the value objects; everything here describes a failure that
happens while computing with otherwise valid inputs.
"""


class VFracError(Exception):
    """Base class for numerical failures in the calculus app."""


class PoleError(VFracError):
    """The gamma function was evaluated at a non-positive integer."""


class RangeOverflowError(VFracError):
    """A result left the representable floating point range."""


class ConvergenceError(VFracError):
    """A series did not meet its stopping rule within the allowed number of terms."""


class DomainGuardError(VFracError):
    """An argument lies outside the range where the evaluator is trusted."""


class DivergenceError(VFracError):
    """Successive extrapolants grow instead of settling."""


class QuadratureError(VFracError):
    """Adaptive quadrature exhausted its subdivision budget."""


class NoBracketError(VFracError):
    """No sign change was found for a bracketed root search."""


class ExprSyntaxError(VFracError):
    """Malformed expression text. ``position`` is the 0-based offending offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownIdentifierError(ExprSyntaxError):
    """An identifier that is neither ``t``, a known function nor a named constant."""

    def __init__(self, name, position):
        super().__init__(f"unknown identifier '{name}'", position)
        self.name = name


class ExprDomainError(VFracError):
    """An expression was evaluated outside its natural domain."""


class MissingDerivativeError(VFracError):
    """A closed-form operator needs f' and none is available."""


class PreconditionError(VFracError):
    """Inputs violate a theorem's hypotheses (e.g. f(a) != f(b) for Rolle)."""


class NoWitnessError(VFracError):
    """The sign scan found no point satisfying a mean-value type equation."""
