"""Parser and evaluator for textual plane-curve definitions.

Curves are written as a pair of component expressions with optional named
parameters::

    (a*(t - sin(t)), a*(-1 + cos(t))) with a=1

Grammar (whitespace insignificant)::

    curve    := "(" expr "," expr ")" [ "with" binding { "," binding } ]
    binding  := ident "=" number
    expr     := term { ("+"|"-") term }
    term     := unary { ("*"|"/") unary }
    unary    := "-" unary | power
    power    := atom [ "^" rational ]
    atom     := number | ident | "(" expr ")" | func "(" expr ")"
    func     := "sin" | "cos" | "sinh" | "cosh" | "exp"
    rational := ["-"] integer | "(" ["-"] integer "/" integer ")"

Precedence is ^  >  unary -  >  * /  >  + -, all left-associative.  Rational
exponents are stored reduced and evaluated with the signed fractional-power
convention of :func:`cuspkit.jets.signed_power`, so odd roots of negative
quantities stay real.  Expressions evaluate over any algebra implementing the
arithmetic operators (floats, numpy arrays, jets), which is how curve
derivatives are obtained exactly, without finite differences.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .jets import (
    DEFAULT_ORDER,
    Jet,
    PlaneJet,
    VecJet,
    _reduce_exponent,
    cos,
    cosh,
    exp,
    rational_pow,
    sin,
    sinh,
)

MAX_JET_ORDER = 12

FUNCTIONS = {"sin": sin, "cos": cos, "sinh": sinh, "cosh": cosh, "exp": exp}


class ParseError(ValueError):
    """Syntax or binding error in a curve definition, with position info."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


# -- expression tree ----------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expression"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Func:
    name: str
    arg: "Expression"


@dataclass(frozen=True)
class Power:
    base: "Expression"
    num: int
    den: int  # reduced, den >= 1


Expression = Union[Num, Sym, Neg, BinOp, Func, Power]


def evaluate(expr: Expression, t, params: dict[str, float]):
    """Evaluate an expression with the parameter symbol bound to ``t``.

    ``t`` may be a float, a numpy array, a Jet, or a VecJet; the result is
    whatever the algebra produces (a plain float if the expression does not
    involve t).
    """
    if isinstance(expr, Num):
        return expr.value
    if isinstance(expr, Sym):
        if expr.name == "t":
            return t
        try:
            return params[expr.name]
        except KeyError:
            raise ValueError(f"unbound parameter '{expr.name}'") from None
    if isinstance(expr, Neg):
        return -evaluate(expr.arg, t, params)
    if isinstance(expr, BinOp):
        a = evaluate(expr.left, t, params)
        b = evaluate(expr.right, t, params)
        if expr.op == "+":
            return a + b
        if expr.op == "-":
            return a - b
        if expr.op == "*":
            return a * b
        return a / b
    if isinstance(expr, Func):
        return FUNCTIONS[expr.name](evaluate(expr.arg, t, params))
    if isinstance(expr, Power):
        return rational_pow(evaluate(expr.base, t, params), expr.num, expr.den)
    raise TypeError(f"not an expression node: {expr!r}")


def free_symbols(expr: Expression) -> set[str]:
    if isinstance(expr, Sym):
        return {expr.name}
    if isinstance(expr, Neg):
        return free_symbols(expr.arg)
    if isinstance(expr, BinOp):
        return free_symbols(expr.left) | free_symbols(expr.right)
    if isinstance(expr, Func):
        return free_symbols(expr.arg)
    if isinstance(expr, Power):
        return free_symbols(expr.base)
    return set()


def _format_number(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


_PREC_ADD, _PREC_MUL, _PREC_UNARY, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(expr: Expression) -> int:
    if isinstance(expr, BinOp):
        return _PREC_ADD if expr.op in "+-" else _PREC_MUL
    if isinstance(expr, Neg):
        return _PREC_UNARY
    if isinstance(expr, Power):
        return _PREC_POW
    return _PREC_ATOM


def to_text(expr: Expression) -> str:
    """Render an expression in the DSL grammar (round-trips through parse)."""
    if isinstance(expr, Num):
        return _format_number(expr.value)
    if isinstance(expr, Sym):
        return expr.name
    if isinstance(expr, Neg):
        inner = to_text(expr.arg)
        if _prec(expr.arg) < _PREC_UNARY:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(expr, BinOp):
        p = _prec(expr)
        left = to_text(expr.left)
        if _prec(expr.left) < p:
            left = f"({left})"
        right = to_text(expr.right)
        if _prec(expr.right) < p or (_prec(expr.right) == p and expr.op in "-/"):
            right = f"({right})"
        return f"{left} {expr.op} {right}"
    if isinstance(expr, Func):
        return f"{expr.name}({to_text(expr.arg)})"
    if isinstance(expr, Power):
        base = to_text(expr.base)
        if _prec(expr.base) < _PREC_ATOM:
            base = f"({base})"
        if expr.den == 1:
            return f"{base}^{expr.num}"
        return f"{base}^({expr.num}/{expr.den})"
    raise TypeError(f"not an expression node: {expr!r}")


# -- tokenizer ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?|(?P<ident>[A-Za-z_]\w*)|(?P<op>[()+\-*/^,=]))"
)


@dataclass
class _Token:
    kind: str  # 'num', 'ident', 'op', 'end'
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_pos = len(text) - len(stripped)
            line = text.count("\n", 0, bad_pos) + 1
            column = bad_pos - (text.rfind("\n", 0, bad_pos) + 1) + 1
            raise ParseError(f"unexpected character {stripped[0]!r}", line, column)
        start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        line = text.count("\n", 0, start) + 1
        column = start - (text.rfind("\n", 0, start) + 1) + 1
        kind = "num" if m.group("num") else ("ident" if m.group("ident") else "op")
        tokens.append(_Token(kind, m.group(0).strip(), line, column))
        pos = m.end()
    end_line = text.count("\n") + 1
    end_col = len(text) - (text.rfind("\n") + 1) + 1
    tokens.append(_Token("end", "", end_line, end_col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.i]

    def _fail(self, expected: str):
        tok = self.current
        got = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"expected {expected}, got {got}", tok.line, tok.column)

    def accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str, expected: str | None = None):
        if not self.accept(text):
            self._fail(expected or f"'{text}'")

    def parse_expr(self):
        node = self.parse_term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.current.text
            self.i += 1
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self):
        node = self.parse_unary()
        while self.current.kind == "op" and self.current.text in "*/":
            op = self.current.text
            self.i += 1
            node = BinOp(op, node, self.parse_unary())
        return node

    def parse_unary(self):
        if self.accept("-"):
            return Neg(self.parse_unary())
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.accept("^"):
            m, n = self.parse_rational()
            return Power(base, m, n)
        return base

    def parse_rational(self) -> tuple[int, int]:
        if self.accept("("):
            m = self.parse_signed_integer()
            self.expect("/", "'/' in rational exponent")
            n = self.parse_signed_integer()
            self.expect(")", "')' closing the rational exponent")
        else:
            m, n = self.parse_signed_integer(), 1
        if n == 0:
            tok = self.tokens[self.i - 1]
            raise ParseError("zero denominator in rational exponent", tok.line, tok.column)
        return _reduce_exponent(m, n)

    def parse_signed_integer(self) -> int:
        sign = -1 if self.accept("-") else 1
        tok = self.current
        if tok.kind != "num" or ("." in tok.text or "e" in tok.text or "E" in tok.text):
            self._fail("an integer")
        self.i += 1
        return sign * int(tok.text)

    def parse_atom(self):
        tok = self.current
        if tok.kind == "num":
            self.i += 1
            return Num(float(tok.text))
        if tok.kind == "ident":
            self.i += 1
            if tok.text in FUNCTIONS:
                self.expect("(", f"'(' after function {tok.text}")
                arg = self.parse_expr()
                self.expect(")", f"')' closing {tok.text}(...)")
                return Func(tok.text, arg)
            return Sym(tok.text)
        if self.accept("("):
            node = self.parse_expr()
            self.expect(")", "')' closing the parenthesized expression")
            return node
        self._fail("a number, name, function call, or '('")


# -- curve specifications -----------------------------------------------------


@dataclass(frozen=True)
class CurveSpec:
    """A parsed plane curve: two component expressions plus bound parameters."""

    x_expr: Expression
    y_expr: Expression
    params: dict[str, float] = field(default_factory=dict)
    label: str = ""

    def __str__(self) -> str:
        text = f"({to_text(self.x_expr)}, {to_text(self.y_expr)})"
        if self.params:
            bindings = ", ".join(
                f"{k}={_format_number(v)}" for k, v in sorted(self.params.items())
            )
            text += f" with {bindings}"
        return text

    def with_params(self, **params: float) -> "CurveSpec":
        merged = dict(self.params)
        merged.update(params)
        return CurveSpec(self.x_expr, self.y_expr, merged, self.label)

    def point(self, t):
        """Position gamma(t); works on scalars and numpy arrays."""
        return np.array(
            [evaluate(self.x_expr, t, self.params), evaluate(self.y_expr, t, self.params)]
        )

    def jet(self, t0: float, order: int = DEFAULT_ORDER) -> PlaneJet:
        """Exact Taylor jet of the curve at t0 (automatic differentiation)."""
        if order > MAX_JET_ORDER:
            raise ValueError(f"jet order {order} exceeds the supported maximum {MAX_JET_ORDER}")
        t = Jet.variable(float(t0), order)
        x = evaluate(self.x_expr, t, self.params)
        y = evaluate(self.y_expr, t, self.params)
        if not isinstance(x, Jet):
            x = Jet.constant(float(x), order, float(t0))
        if not isinstance(y, Jet):
            y = Jet.constant(float(y), order, float(t0))
        return PlaneJet(x, y)

    def jets_at(self, ts, order: int) -> tuple[VecJet, VecJet]:
        """Vectorized jets at an array of base points (internal fast path)."""
        t = VecJet.variable(ts, order)
        x = evaluate(self.x_expr, t, self.params)
        y = evaluate(self.y_expr, t, self.params)
        n = np.atleast_1d(ts).size
        if not isinstance(x, VecJet):
            c = np.zeros((order + 1, n))
            c[0] = x
            x = VecJet(c)
        if not isinstance(y, VecJet):
            c = np.zeros((order + 1, n))
            c[0] = y
            y = VecJet(c)
        return x, y

    def derivatives_at(self, ts, max_order: int) -> np.ndarray:
        """Array of derivative vectors: shape (max_order+1, 2, len(ts)).

        Entry [k, :, i] is gamma^(k) at ts[i].
        """
        x, y = self.jets_at(ts, max_order)
        out = np.empty((max_order + 1, 2, np.atleast_1d(ts).size))
        for k in range(max_order + 1):
            out[k, 0] = x.derivative_values(k)
            out[k, 1] = y.derivative_values(k)
        return out


def parse_expression(text: str) -> Expression:
    """Parse a single scalar expression in the variable t (no parameters)."""
    parser = _Parser(text)
    expr = parser.parse_expr()
    if parser.current.kind != "end":
        parser._fail("end of input")
    unbound = free_symbols(expr) - {"t"}
    if unbound:
        raise ParseError(f"unbound parameter(s): {', '.join(sorted(unbound))}", 1, 1)
    return expr


def parse_curve(text: str, params: dict[str, float] | None = None) -> CurveSpec:
    """Parse a curve definition; extra parameter bindings may be supplied.

    Raises :class:`ParseError` (with line/column) on malformed input and on
    parameters that remain unbound after the with-clause.
    """
    parser = _Parser(text)
    parser.expect("(", "'(' opening the curve definition")
    x_expr = parser.parse_expr()
    parser.expect(",", "',' between the two curve components")
    if parser.current.kind == "op" and parser.current.text == ")":
        parser._fail("an expression for the second curve component")
    y_expr = parser.parse_expr()
    parser.expect(")", "')' closing the curve definition")

    bindings: dict[str, float] = dict(params or {})
    tok = parser.current
    if tok.kind == "ident" and tok.text == "with":
        parser.i += 1
        while True:
            name_tok = parser.current
            if name_tok.kind != "ident":
                parser._fail("a parameter name")
            parser.i += 1
            parser.expect("=", "'=' in parameter binding")
            sign = -1.0 if parser.accept("-") else 1.0
            val_tok = parser.current
            if val_tok.kind != "num":
                parser._fail("a numeric parameter value")
            parser.i += 1
            bindings[name_tok.text] = sign * float(val_tok.text)
            if not parser.accept(","):
                break
    if parser.current.kind != "end":
        parser._fail("end of input")

    unbound = (free_symbols(x_expr) | free_symbols(y_expr)) - {"t"} - set(bindings)
    if unbound:
        names = ", ".join(sorted(unbound))
        raise ParseError(f"unbound parameter(s): {names}", 1, 1)
    return CurveSpec(x_expr, y_expr, bindings, text.strip())


# -- named example curves -----------------------------------------------------

# Definitions are stored as DSL text so the parser is on the path of every
# catalog use.
_CATALOG: dict[str, tuple[str, tuple[str, ...]]] = {
    "cuspidal_cubic": ("(a*t^2, a*t^3)", ("a",)),
    "cycloid": ("(a*(t - sin(t)), a*(-1 + cos(t)))", ("a",)),
    "canonical_cusp": (
        "((2*a*t*sin(2*a*t) + cos(2*a*t))/(2*a^2),"
        " (sin(2*a*t) - 2*a*t*cos(2*a*t))/(2*a^2))",
        ("a",),
    ),
    "hyperbolic_cycloid": ("(a*(t - sinh(t)), a*(-1 + cosh(t)))", ("a",)),
    "cubic_graph": ("(a*t, a*t^3)", ("a",)),
    "skew_cycloid": ("(a*(t - sin(t)), a*(-t + cos(t)))", ("a",)),
    "circle": ("(r*cos(t), r*sin(t))", ("r",)),
    "parabola": ("(t, t^2)", ()),
    "line": ("(t, 2*t)", ()),
}

CATALOG_NAMES = tuple(sorted(_CATALOG))

# Curves whose parameter origin is a 3/2-cusp / a generic inflection point.
CATALOG_CUSPS = ("canonical_cusp", "cuspidal_cubic", "cycloid", "hyperbolic_cycloid")
CATALOG_INFLECTIONS = ("cubic_graph", "skew_cycloid")


def catalog_lookup(name: str, params: dict[str, float] | None = None) -> CurveSpec:
    """Fetch a named example curve with its parameters bound.

    Parameters required by the curve must be present and positive.
    """
    if name not in _CATALOG:
        known = ", ".join(CATALOG_NAMES)
        raise ValueError(f"unknown catalog curve '{name}' (known: {known})")
    text, required = _CATALOG[name]
    params = dict(params or {})
    for p in required:
        if p not in params:
            raise ValueError(f"catalog curve '{name}' requires parameter '{p}'")
        if not params[p] > 0:
            raise ValueError(
                f"catalog curve '{name}' needs {p} > 0, got {p}={params[p]}"
            )
    extra = set(params) - set(required)
    if extra:
        raise ValueError(f"catalog curve '{name}' takes no parameter(s): {', '.join(sorted(extra))}")
    spec = parse_curve(text, params)
    label = name if not params else (
        name + "(" + ", ".join(f"{k}={_format_number(v)}" for k, v in sorted(params.items())) + ")"
    )
    return CurveSpec(spec.x_expr, spec.y_expr, spec.params, label)
