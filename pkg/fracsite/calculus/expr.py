"""
A small expression language for user-supplied functions f(t).

Grammar (whitespace insensitive, operators left-associative, '^' binds tightest)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' exponent)?
    base   := number | 't' | 'pi' | 'e' | '(' expr ')' | ident '(' args ')'

Exponents are numeric constants, optionally signed or parenthesised
(``t^-0.5``, ``t^(1/3)``). ``pow(expr, number)`` is an alias for ``^``.
"""
import functools
import math
import re
from dataclasses import dataclass
from typing import Optional, Union

from .exceptions import ExprDomainError, ExprSyntaxError, UnknownIdentifierError

FUNCTIONS = ("exp", "ln", "sin", "cos", "sqrt", "pow")
CONSTANTS = {"pi": math.pi, "e": math.e}


@dataclass(frozen=True)
class Const:
    value: float
    name: Optional[str] = None  # 'pi' or 'e' when written by name


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    name: str  # exp, ln, sin, cos or sqrt
    arg: "Node"


Node = Union[Const, Var, Neg, BinOp, Call]

T = Var()
ZERO = Const(0.0)
ONE = Const(1.0)


# Tokenizer

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),−]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # number, ident, op or end
    text: str
    position: int


def _tokenize(src):
    tokens = []
    position = 0
    while position < len(src):
        if src[position].isspace():
            position += 1
            continue
        match = _TOKEN_RE.match(src, position)
        if match is None or match.lastgroup is None:
            raise ExprSyntaxError(f"unexpected character '{src[position]}'", position)
        start = match.start(match.lastgroup)
        text = match.group(match.lastgroup)
        if text == "−":
            text = "-"
        tokens.append(_Token(match.lastgroup, text, start))
        position = match.end()
    tokens.append(_Token("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src):
        self.tokens = _tokenize(src)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.current
        self.index += 1
        return token

    def accept(self, text):
        if self.current.kind == "op" and self.current.text == text:
            return self.advance()
        return None

    def expect(self, text):
        token = self.accept(text)
        if token is None:
            self.fail(f"expected '{text}'")
        return token

    def fail(self, message):
        token = self.current
        if token.kind == "end":
            raise ExprSyntaxError("unexpected end of input", token.position)
        raise ExprSyntaxError(f"{message}, found '{token.text}'", token.position)

    def parse(self):
        node = self.expr()
        if self.current.kind != "end":
            self.fail("expected an operator")
        return node

    def expr(self):
        node = self.term()
        while True:
            if self.accept("+"):
                node = BinOp("+", node, self.term())
            elif self.accept("-"):
                node = BinOp("-", node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            if self.accept("*"):
                node = BinOp("*", node, self.factor())
            elif self.accept("/"):
                node = BinOp("/", node, self.factor())
            else:
                return node

    def factor(self):
        if self.accept("-"):
            operand = self.factor()
            # a negated literal is a literal, so printed negative constants reparse identically
            if isinstance(operand, Const) and operand.name is None:
                return Const(-operand.value)
            return Neg(operand)
        node = self.base()
        if self.accept("^"):
            node = BinOp("^", node, self.exponent())
        return node

    def exponent(self):
        token = self.current
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return Const(_fold_constant(inner, token.position))
        sign = -1.0 if self.accept("-") else 1.0
        if self.current.kind != "number":
            self.fail("exponent must be a number")
        return Const(sign * float(self.advance().text))

    def base(self):
        token = self.current
        if token.kind == "number":
            self.advance()
            return Const(float(token.text))
        if token.kind == "ident":
            self.advance()
            if token.text == "t":
                return T
            if token.text in CONSTANTS:
                return Const(CONSTANTS[token.text], token.text)
            if token.text not in FUNCTIONS:
                raise UnknownIdentifierError(token.text, token.position)
            self.expect("(")
            arg = self.expr()
            if token.text == "pow":
                self.expect(",")
                exponent_token = self.current
                exponent = _fold_constant(self.expr(), exponent_token.position)
                self.expect(")")
                return BinOp("^", arg, Const(exponent))
            self.expect(")")
            return Call(token.text, arg)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        self.fail("expected a number, 't', a function call or '('")


def _fold_constant(node, position):
    if _contains_variable(node):
        raise ExprSyntaxError("exponent must not depend on t", position)
    return evaluate(node, 0.0)


def _contains_variable(node):
    if isinstance(node, Var):
        return True
    if isinstance(node, Const):
        return False
    if isinstance(node, Neg):
        return _contains_variable(node.operand)
    if isinstance(node, Call):
        return _contains_variable(node.arg)
    return _contains_variable(node.left) or _contains_variable(node.right)


def parse(src):
    """
    Parses expression text into an immutable AST.

    Raises:
        ExprSyntaxError: malformed input; ``position`` is the 0-based offset
        UnknownIdentifierError: an identifier other than t, pi, e or a known function
    """
    if not src or not src.strip():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(src).parse()


# Evaluation


def _power(base, exponent):
    try:
        return math.pow(base, exponent)
    except ValueError as exc:
        raise ExprDomainError(f"{base!r}^{exponent!r} is not a real number") from exc
    except OverflowError as exc:
        raise ExprDomainError(f"{base!r}^{exponent!r} overflows") from exc


def _divide(numerator, denominator):
    if denominator == 0.0:
        raise ExprDomainError("division by zero")
    return numerator / denominator


def _ln(x):
    if x <= 0.0:
        raise ExprDomainError(f"ln is undefined at {x!r}")
    return math.log(x)


def _sqrt(x):
    if x < 0.0:
        raise ExprDomainError(f"sqrt is undefined at {x!r}")
    return math.sqrt(x)


def _exp(x):
    try:
        return math.exp(x)
    except OverflowError as exc:
        raise ExprDomainError(f"exp overflows at {x!r}") from exc


_CALLS = {"exp": _exp, "ln": _ln, "sin": math.sin, "cos": math.cos, "sqrt": _sqrt}

_BINARY = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": _divide,
    "^": _power,
}


@functools.lru_cache(maxsize=512)
def compile_ast(node):
    """Turns an AST into a plain closure t -> float."""
    if isinstance(node, Const):
        value = node.value
        return lambda t: value
    if isinstance(node, Var):
        return lambda t: t
    if isinstance(node, Neg):
        operand = compile_ast(node.operand)
        return lambda t: -operand(t)
    if isinstance(node, Call):
        function, arg = _CALLS[node.name], compile_ast(node.arg)
        return lambda t: function(arg(t))
    operation = _BINARY[node.op]
    left, right = compile_ast(node.left), compile_ast(node.right)
    return lambda t: operation(left(t), right(t))


def evaluate(node, t):
    """
    Evaluates ``node`` at t.

    Raises:
        ExprDomainError: ln or sqrt outside their domain, division by zero,
            a fractional power of a negative number, or overflow
    """
    return compile_ast(node)(float(t))


# Symbolic differentiation with trivial simplification


def _is_const(node, value=None):
    return isinstance(node, Const) and (value is None or node.value == value)


def make_neg(a):
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def make_add(a, b):
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    return BinOp("+", a, b)


def make_sub(a, b):
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return make_neg(b)
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    return BinOp("-", a, b)


def make_mul(a, b):
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return ZERO
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    return BinOp("*", a, b)


def make_div(a, b):
    if _is_const(a, 0.0):
        return ZERO
    if _is_const(b, 1.0):
        return a
    if _is_const(a) and _is_const(b) and b.value != 0.0:
        return Const(a.value / b.value)
    return BinOp("/", a, b)


def make_pow(base, exponent):
    if exponent == 0.0:
        return ONE
    if exponent == 1.0:
        return base
    return BinOp("^", base, Const(exponent))


def differentiate(node):
    """d/dt of an AST by the sum, product, quotient and chain rules."""
    if isinstance(node, Const):
        return ZERO
    if isinstance(node, Var):
        return ONE
    if isinstance(node, Neg):
        return make_neg(differentiate(node.operand))
    if isinstance(node, Call):
        u, du = node.arg, differentiate(node.arg)
        if node.name == "exp":
            outer = node
        elif node.name == "ln":
            return make_div(du, u)
        elif node.name == "sin":
            outer = Call("cos", u)
        elif node.name == "cos":
            outer = make_neg(Call("sin", u))
        else:  # sqrt
            return make_div(du, make_mul(Const(2.0), node))
        return make_mul(outer, du)

    u, v = node.left, node.right
    if node.op == "+":
        return make_add(differentiate(u), differentiate(v))
    if node.op == "-":
        return make_sub(differentiate(u), differentiate(v))
    if node.op == "*":
        return make_add(make_mul(differentiate(u), v), make_mul(u, differentiate(v)))
    if node.op == "/":
        numerator = make_sub(make_mul(differentiate(u), v), make_mul(u, differentiate(v)))
        return make_div(numerator, make_pow(v, 2.0))
    # u ^ c
    c = v.value
    return make_mul(make_mul(Const(c), make_pow(u, c - 1.0)), differentiate(u))


def substitute(node, inner):
    """Replaces every occurrence of t in ``node`` by the AST ``inner``."""
    if isinstance(node, Var):
        return inner
    if isinstance(node, Const):
        return node
    if isinstance(node, Neg):
        return Neg(substitute(node.operand, inner))
    if isinstance(node, Call):
        return Call(node.name, substitute(node.arg, inner))
    return BinOp(node.op, substitute(node.left, inner), substitute(node.right, inner))


# Printing

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _format_number(value):
    if value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def _precedence(node):
    if isinstance(node, BinOp):
        return _PRECEDENCE[node.op]
    if isinstance(node, Neg) or (isinstance(node, Const) and node.value < 0):
        return 3
    return 5


def to_source(node):
    """Prints an AST so that ``parse(to_source(ast)) == ast``."""
    if isinstance(node, Const):
        return node.name or _format_number(node.value)
    if isinstance(node, Var):
        return "t"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, _precedence(node.operand) < 3)
    if isinstance(node, Call):
        return f"{node.name}({to_source(node.arg)})"
    if node.op == "^":
        exponent = node.right.value
        text = _format_number(exponent)
        if exponent < 0:
            text = f"({text})"
        return f"{_wrap(node.left, _precedence(node.left) < 5)}^{text}"
    precedence = _PRECEDENCE[node.op]
    left = _wrap(node.left, _precedence(node.left) < precedence)
    right = _wrap(node.right, _precedence(node.right) <= precedence)
    return f"{left} {node.op} {right}"


def _wrap(node, needs_parentheses):
    text = to_source(node)
    return f"({text})" if needs_parentheses else text
