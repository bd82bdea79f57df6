"""Two-variable expression trees with exact mixed-partial differentiation.

Expressions are parsed from text over the alphabet
{numbers, x, y, + - * / ^, unary -, exp, log, sin, cos, abs, sqrt}.
Evaluation accepts scalars or numpy arrays (broadcasting elementwise).
The mixed second partial f_xy is computed by propagating (f, f_x, f_y, f_xy)
through every operation (a nested dual number), so it is exact to rounding;
a central-difference fallback is available for kinked integrands.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

Scalar = Union[float, np.ndarray]


class ExpressionError(Exception):
    """Base class for everything this module raises on purpose."""


class LexError(ExpressionError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ParseError(ExpressionError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownIdentifierError(ParseError):
    pass


class EvaluationError(ExpressionError):
    """Runtime evaluation failure (domain violations and the like)."""

    def __init__(self, message: str, subterm: str):
        super().__init__(f"{message} in subterm '{subterm}'")
        self.subterm = subterm


class NonDifferentiableError(EvaluationError):
    """A kink (abs at zero) was hit while carrying derivatives."""


# ---------------------------------------------------------------------------
# Dual numbers carrying (value, d/dx, d/dy, d2/dxdy)


@dataclass(frozen=True)
class DualValue:
    """Value plus first partials and the mixed second partial.

    Seeding x as DualValue(x, 1, 0, 0) and y as DualValue(y, 0, 1, 0) and
    running the expression yields (f, f_x, f_y, f_xy) at the point.
    Fields may be numpy arrays; all rules broadcast elementwise.
    """

    value: Scalar
    dx: Scalar = 0.0
    dy: Scalar = 0.0
    dxy: Scalar = 0.0

    @staticmethod
    def lift(c: Scalar) -> "DualValue":
        return c if isinstance(c, DualValue) else DualValue(c)

    def __add__(self, other) -> "DualValue":
        o = DualValue.lift(other)
        return DualValue(self.value + o.value, self.dx + o.dx,
                         self.dy + o.dy, self.dxy + o.dxy)

    __radd__ = __add__

    def __sub__(self, other) -> "DualValue":
        o = DualValue.lift(other)
        return DualValue(self.value - o.value, self.dx - o.dx,
                         self.dy - o.dy, self.dxy - o.dxy)

    def __rsub__(self, other) -> "DualValue":
        return DualValue.lift(other) - self

    def __neg__(self) -> "DualValue":
        return DualValue(-self.value, -self.dx, -self.dy, -self.dxy)

    def __mul__(self, other) -> "DualValue":
        o = DualValue.lift(other)
        return DualValue(
            self.value * o.value,
            self.dx * o.value + self.value * o.dx,
            self.dy * o.value + self.value * o.dy,
            self.dxy * o.value + self.dx * o.dy + self.dy * o.dx
            + self.value * o.dxy,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "DualValue":
        o = DualValue.lift(other)
        return self * o._chain(1.0 / o.value,
                               -1.0 / o.value ** 2,
                               2.0 / o.value ** 3)

    def __rtruediv__(self, other) -> "DualValue":
        return DualValue.lift(other) / self

    def _chain(self, f: Scalar, f1: Scalar, f2: Scalar) -> "DualValue":
        """Apply a smooth univariate map given f(v), f'(v), f''(v)."""
        return DualValue(
            f,
            f1 * self.dx,
            f1 * self.dy,
            f2 * self.dx * self.dy + f1 * self.dxy,
        )

    def powc(self, k: float) -> "DualValue":
        v = self.value
        # Low integer exponents short-circuit so v = 0 never hits 0**negative.
        if k == 0.0:
            return DualValue(v ** 0.0, 0.0 * v, 0.0 * v, 0.0 * v)
        if k == 1.0:
            return self
        if k == 2.0:
            return self._chain(v * v, 2.0 * v, 2.0 + 0.0 * v)
        return self._chain(v ** k, k * v ** (k - 1.0),
                           k * (k - 1.0) * v ** (k - 2.0))

    def apply(self, name: str) -> "DualValue":
        v = self.value
        if name == "exp":
            e = np.exp(v)
            return self._chain(e, e, e)
        if name == "log":
            return self._chain(np.log(v), 1.0 / v, -1.0 / v ** 2)
        if name == "sin":
            s, c = np.sin(v), np.cos(v)
            return self._chain(s, c, -s)
        if name == "cos":
            s, c = np.sin(v), np.cos(v)
            return self._chain(c, -s, -c)
        if name == "sqrt":
            r = np.sqrt(v)
            return self._chain(r, 0.5 / r, -0.25 / (r * v))
        if name == "abs":
            sg = np.sign(v)
            return self._chain(np.abs(v), sg, 0.0 * sg)
        raise ValueError(f"no dual rule for function '{name}'")


# ---------------------------------------------------------------------------
# Node tree

FUNCTIONS = ("exp", "log", "sin", "cos", "abs", "sqrt")

_NUMERIC_FUNCS = {
    "exp": np.exp, "log": np.log, "sin": np.sin,
    "cos": np.cos, "abs": np.abs, "sqrt": np.sqrt,
}


def _raw_value(v) -> Scalar:
    return v.value if isinstance(v, DualValue) else v


@dataclass(frozen=True)
class Num:
    value: float

    def evaluate(self, x, y):
        return self.value

    def to_string(self) -> str:
        return repr(self.value)


@dataclass(frozen=True)
class Var:
    name: str  # "x" or "y"

    def evaluate(self, x, y):
        return x if self.name == "x" else y

    def to_string(self) -> str:
        return self.name


@dataclass(frozen=True)
class Neg:
    operand: "Node"

    def evaluate(self, x, y):
        return -self.operand.evaluate(x, y)

    def to_string(self) -> str:
        return f"-({self.operand.to_string()})"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Node"
    right: "Node"

    def evaluate(self, x, y):
        lv = self.left.evaluate(x, y)
        rv = self.right.evaluate(x, y)
        if self.op == "+":
            return lv + rv
        if self.op == "-":
            return lv - rv
        if self.op == "*":
            return lv * rv
        den = _raw_value(rv)
        if np.any(den == 0):
            raise EvaluationError("division by zero", self.to_string())
        return lv / rv

    def to_string(self) -> str:
        return f"({self.left.to_string()} {self.op} {self.right.to_string()})"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: "Node"  # constant subtree, enforced at parse time

    def evaluate(self, x, y):
        k = float(self.exponent.evaluate(0.0, 0.0))
        bv = self.base.evaluate(x, y)
        raw = _raw_value(bv)
        if k != round(k) and np.any(raw < 0):
            raise EvaluationError("negative base with non-integer exponent",
                                  self.to_string())
        if k < 0 and np.any(raw == 0):
            raise EvaluationError("zero base with negative exponent",
                                  self.to_string())
        if isinstance(bv, DualValue):
            return bv.powc(k)
        return bv ** k

    def to_string(self) -> str:
        return f"({self.base.to_string()} ^ {self.exponent.to_string()})"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"

    def evaluate(self, x, y):
        av = self.arg.evaluate(x, y)
        raw = _raw_value(av)
        if self.func == "log" and np.any(raw <= 0):
            raise EvaluationError("log of a nonpositive value", self.to_string())
        if self.func == "sqrt" and np.any(raw < 0):
            raise EvaluationError("sqrt of a negative value", self.to_string())
        if isinstance(av, DualValue):
            if self.func == "abs" and np.any(raw == 0):
                raise NonDifferentiableError(
                    "abs is not differentiable at zero", self.to_string())
            return av.apply(self.func)
        return _NUMERIC_FUNCS[self.func](raw)

    def to_string(self) -> str:
        return f"{self.func}({self.arg.to_string()})"


Node = Union[Num, Var, Neg, BinOp, Pow, Call]


# ---------------------------------------------------------------------------
# Lexer / recursive-descent parser
#
# expr   := term (('+'|'-') term)*
# term   := factor (('*'|'/') factor)*
# factor := ('-')? power
# power  := atom ('^' factor)?          (right-associative via factor)
# atom   := number | 'x' | 'y' | func '(' expr ')' | '(' expr ')'

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_]\w*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(source: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            bad = source[pos:].lstrip()
            if not bad:
                break
            at = pos + (len(source[pos:]) - len(bad))
            raise LexError(f"unexpected character {bad[0]!r}", at)
        if m.lastgroup == "num":
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.lastgroup == "ident":
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("eof", "", len(source)))
    return tokens


def _contains_variable(node: Node) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, Num):
        return False
    if isinstance(node, Neg):
        return _contains_variable(node.operand)
    if isinstance(node, Call):
        return _contains_variable(node.arg)
    if isinstance(node, Pow):
        return _contains_variable(node.base) or _contains_variable(node.exponent)
    return _contains_variable(node.left) or _contains_variable(node.right)


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]]):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            shown = text if kind != "eof" else "end of input"
            raise ParseError(f"expected '{op}', found '{shown}'", pos)
        return self.advance()

    def parse_expr(self) -> Node:
        node = self.parse_term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                node = BinOp(text, node, self.parse_term())
            else:
                return node

    def parse_term(self) -> Node:
        node = self.parse_factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                node = BinOp(text, node, self.parse_factor())
            else:
                return node

    def parse_factor(self) -> Node:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return Neg(self.parse_power())
        return self.parse_power()

    def parse_power(self) -> Node:
        base = self.parse_atom()
        kind, text, pos = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            exponent = self.parse_factor()
            if _contains_variable(exponent):
                raise ParseError("exponent must be a constant", pos)
            return Pow(base, exponent)
        return base

    def parse_atom(self) -> Node:
        kind, text, pos = self.advance()
        if kind == "num":
            return Num(float(text))
        if kind == "ident":
            if text in ("x", "y"):
                return Var(text)
            if text in FUNCTIONS:
                self.expect_op("(")
                inner = self.parse_expr()
                self.expect_op(")")
                return Call(text, inner)
            raise UnknownIdentifierError(f"unknown identifier '{text}'", pos)
        if kind == "op" and text == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        shown = text if kind != "eof" else "end of input"
        raise ParseError(f"unexpected token '{shown}'", pos)


# ---------------------------------------------------------------------------
# Public surface


@dataclass(frozen=True)
class Expression:
    """Immutable parsed function of (x, y); safe to share across threads."""

    root: Node

    def eval(self, x: Scalar, y: Scalar) -> Scalar:
        """Evaluate f(x, y); scalars in, float out; arrays broadcast."""
        result = self.root.evaluate(x, y)
        if isinstance(x, np.ndarray) or isinstance(y, np.ndarray):
            shape = np.broadcast_shapes(np.shape(x), np.shape(y))
            return np.broadcast_to(np.asarray(result, dtype=float), shape)
        return float(result)

    def partials(self, x: Scalar, y: Scalar):
        """Return (f, f_x, f_y, f_xy) at the point, all exact to rounding."""
        dx_seed = DualValue(x, 1.0, 0.0, 0.0)
        dy_seed = DualValue(y, 0.0, 1.0, 0.0)
        out = self.root.evaluate(dx_seed, dy_seed)
        out = DualValue.lift(out)
        scalar = not (isinstance(x, np.ndarray) or isinstance(y, np.ndarray))
        if scalar:
            return (float(out.value), float(out.dx),
                    float(out.dy), float(out.dxy))
        shape = np.broadcast_shapes(np.shape(x), np.shape(y))

        def full(v):
            return np.broadcast_to(np.asarray(v, dtype=float), shape)

        return full(out.value), full(out.dx), full(out.dy), full(out.dxy)

    def mixed_partial(self, x: Scalar, y: Scalar, method: str = "dual",
                      h: float | None = None) -> Scalar:
        """d2f/dxdy at (x, y).

        method "dual" propagates derivatives exactly; "central_fd" uses the
        4-point cross stencil with step h (default eps^(1/3) scaled by the
        point's magnitude).
        """
        if method == "dual":
            return self.partials(x, y)[3]
        if method == "central_fd":
            if h is None:
                mag = np.maximum(1.0, np.maximum(np.abs(x), np.abs(y)))
                h = float(np.max(np.cbrt(np.finfo(float).eps) * mag))
            fpp = self.eval(x + h, y + h)
            fpm = self.eval(x + h, y - h)
            fmp = self.eval(x - h, y + h)
            fmm = self.eval(x - h, y - h)
            return (fpp - fpm - fmp + fmm) / (4.0 * h * h)
        raise ValueError(f"unknown derivative method '{method}'")

    def to_string(self) -> str:
        return self.root.to_string()

    def __str__(self) -> str:
        return self.to_string()


def parse(source: str) -> Expression:
    """Parse an expression in x and y; raises LexError/ParseError on bad input."""
    if not source or not source.strip():
        raise ParseError("empty expression", 0)
    parser = _Parser(_tokenize(source))
    root = parser.parse_expr()
    kind, text, pos = parser.peek()
    if kind != "eof":
        raise ParseError(f"unexpected token '{text}'", pos)
    return Expression(root)
