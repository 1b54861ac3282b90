"""Boundary-data model: a small expression DSL over ``t`` (real line) or
``theta`` (circle), sampled tables with interpolation, and the
limit-at-infinity estimator required of real-line data.

The DSL has exactly one free variable per domain and no user-defined
names, which keeps evaluation total and the security surface nil.
Grammar (with ``^`` right-associative)::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := unary ('^' factor)?
    unary  := '-'? atom
    atom   := number | 'pi' | var | func '(' expr ')' | '(' expr ')'
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import (EvaluationError, NoFiniteLimit, ParseError,
                     UnknownIdentifier, WrongVariable)

CIRCLE = "circle"
REALLINE = "realline"

_VARIABLES = {CIRCLE: "theta", REALLINE: "t"}

_FUNCTIONS = {
    "sin": np.sin, "cos": np.cos, "tan": np.tan, "exp": np.exp,
    "log": np.log, "sqrt": np.sqrt, "abs": np.abs, "atan": np.arctan,
}


# --- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Pi:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Func:
    name: str
    arg: "Node"


Node = Union[Num, Var, Pi, Neg, Bin, Func]


@dataclass(frozen=True)
class BoundaryExpr:
    ast: Node
    domain: str
    text: str

    def __call__(self, arg):
        return evaluate(self, arg)


# --- tokenizer / parser ----------------------------------------------------

_OPS = set("+-*/^()")


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _OPS:
            tokens.append((c, c, i))
            i += 1
            continue
        if c.isdigit() or c == ".":
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            # exponent suffix like 1e-3
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    while k < n and text[k].isdigit():
                        k += 1
                    j = k
            try:
                value = float(text[i:j])
            except ValueError:
                raise ParseError(f"bad number {text[i:j]!r}", i, {"number"})
            tokens.append(("num", value, i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", i, {"token"})
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, tokens, domain):
        self.tokens = tokens
        self.pos = 0
        self.var = _VARIABLES[domain]
        self.other_var = _VARIABLES[REALLINE if domain == CIRCLE else CIRCLE]

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        kind_, value, off = self.peek()
        if kind_ != kind:
            raise ParseError(f"expected {kind!r}", off, {kind})
        return self.advance()

    def parse(self):
        node = self.expr()
        kind, _, off = self.peek()
        if kind != "end":
            raise ParseError("trailing input", off, {"end"})
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            node = Bin(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            node = Bin(op, node, self.factor())
        return node

    def factor(self):
        node = self.unary()
        if self.peek()[0] == "^":
            self.advance()
            node = Bin("^", node, self.factor())  # right-associative
        return node

    def unary(self):
        if self.peek()[0] == "-":
            self.advance()
            return Neg(self.atom())
        return self.atom()

    def atom(self):
        kind, value, off = self.advance()
        if kind == "num":
            return Num(value)
        if kind == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "ident":
            if value == "pi":
                return Pi()
            if value == self.var:
                return Var(value)
            if value in _FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Func(value, arg)
            if value == self.other_var:
                raise WrongVariable(
                    f"variable {value!r} does not belong to this domain", off,
                    {self.var})
            raise UnknownIdentifier(f"unknown identifier {value!r}", off,
                                    set(_FUNCTIONS) | {self.var, "pi"})
        raise ParseError("expected number, name, or '('", off,
                         {"number", "ident", "("})


def parse(text: str, domain: str) -> BoundaryExpr:
    if domain not in (CIRCLE, REALLINE):
        raise ValueError(f"unknown domain {domain!r}")
    if not text.strip():
        raise ParseError("empty expression", 0, {"expression"})
    ast = _Parser(_tokenize(text), domain).parse()
    return BoundaryExpr(ast=ast, domain=domain, text=text)


def _eval_node(node: Node, arg):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Pi):
        return math.pi
    if isinstance(node, Var):
        return arg
    if isinstance(node, Neg):
        return -_eval_node(node.operand, arg)
    if isinstance(node, Func):
        return _FUNCTIONS[node.name](_eval_node(node.arg, arg))
    if isinstance(node, Bin):
        a = _eval_node(node.left, arg)
        b = _eval_node(node.right, arg)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            return a / b
        return np.power(a, b)
    raise TypeError(f"unknown node {node!r}")


def evaluate(expr: BoundaryExpr, arg):
    """Strict evaluation; any NaN/Inf becomes an EvaluationError."""
    with np.errstate(all="ignore"):
        out = _eval_node(expr.ast, np.asarray(arg, dtype=float))
    out = np.asarray(out, dtype=float)
    if not np.all(np.isfinite(out)):
        raise EvaluationError(f"non-finite value from {expr.text!r}")
    if np.ndim(arg) == 0:
        return float(out)
    return out + np.zeros_like(np.asarray(arg, dtype=float))


# --- printer ---------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _render(node: Node, parent_prec=0, right_of=None):
    if isinstance(node, Num):
        v = node.value
        return repr(int(v)) if float(v).is_integer() and abs(v) < 1e15 else repr(v)
    if isinstance(node, Pi):
        return "pi"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Func):
        return f"{node.name}({_render(node.arg)})"
    if isinstance(node, Neg):
        inner = _render(node.operand, 5)
        text = f"-{inner}"
        return f"({text})" if parent_prec > 3 else text
    prec = _PREC[node.op]
    left = _render(node.left, prec if node.op != "^" else prec + 1)
    right = _render(node.right, prec + 1 if node.op in "+-*/" else prec)
    text = f"{left}{node.op}{right}"
    return f"({text})" if prec < parent_prec else text


def render(expr: BoundaryExpr) -> str:
    return _render(expr.ast)


# --- boundary data ---------------------------------------------------------

class BoundaryData:
    """Real boundary function on the unit circle (2*pi-periodic in theta)
    or the real line (with a finite limit at infinity)."""

    def __init__(self, fn: Callable, domain: str, source: str,
                 value_at_infinity: Optional[float] = None,
                 description: str = ""):
        if domain not in (CIRCLE, REALLINE):
            raise ValueError(f"unknown domain {domain!r}")
        self._fn = fn
        self.domain = domain
        self.source = source
        self.value_at_infinity = value_at_infinity
        self.description = description

    def __call__(self, arg):
        return self._fn(arg)

    def __repr__(self):
        return f"BoundaryData({self.description or self.source}, {self.domain})"

    @classmethod
    def from_expression(cls, text: str, domain: str) -> "BoundaryData":
        expr = parse(text, domain)
        if domain == CIRCLE:
            _check_periodic(expr, text)
        return cls(expr, domain, source="expression", description=text)

    @classmethod
    def from_callable(cls, fn: Callable, domain: str,
                      value_at_infinity: Optional[float] = None,
                      description: str = "") -> "BoundaryData":
        return cls(fn, domain, source="expression",
                   value_at_infinity=value_at_infinity,
                   description=description or "<callable>")

    @classmethod
    def from_samples(cls, args, values, domain: str,
                     value_at_infinity: Optional[float] = None) -> "BoundaryData":
        args = np.asarray(args, dtype=float)
        values = np.asarray(values, dtype=float)
        if args.shape != values.shape or args.ndim != 1:
            raise ValueError("args and values must be equal-length 1-D")
        if domain == CIRCLE:
            n = len(args)
            if n < 4 or n & (n - 1):
                raise ValueError("circle samples need a power-of-two count")
            expected = 2.0 * np.pi * np.arange(n) / n
            if not np.allclose(args, expected, atol=1e-9):
                raise ValueError("circle samples must sit on the uniform grid "
                                 "2*pi*k/N ascending in [0, 2*pi)")
            coeffs = np.fft.rfft(values) / n
            fn = _TrigInterpolant(coeffs, n)
            return cls(fn, domain, source="sample-table",
                       description=f"{n} circle samples")
        if value_at_infinity is None:
            raise NoFiniteLimit("real-line sample tables need a value at infinity")
        order = np.argsort(args)
        s = np.arctan(args[order])
        s = np.concatenate(([-np.pi / 2], s, [np.pi / 2]))
        v = np.concatenate(([value_at_infinity], values[order], [value_at_infinity]))
        interp = PchipInterpolator(s, v)

        def fn(t):
            return interp(np.arctan(t))

        return cls(fn, domain, source="sample-table",
                   value_at_infinity=float(value_at_infinity),
                   description=f"{len(args)} real-line samples")

    @classmethod
    def from_csv(cls, path, domain: str,
                 value_at_infinity: Optional[float] = None) -> "BoundaryData":
        """Two-column CSV "arg,value" with a header line."""
        args, values = [], []
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            next(reader)  # header
            for row in reader:
                if not row:
                    continue
                args.append(float(row[0]))
                values.append(float(row[1]))
        return cls.from_samples(args, values, domain,
                                value_at_infinity=value_at_infinity)


class _TrigInterpolant:
    """Evaluates the trigonometric interpolant of uniform circle samples."""

    def __init__(self, rfft_coeffs, n):
        self.coeffs = rfft_coeffs
        self.n = n

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        modes = np.arange(len(self.coeffs))
        weights = np.full(len(self.coeffs), 2.0)
        weights[0] = 1.0
        if self.n % 2 == 0:
            weights[-1] = 1.0  # Nyquist mode appears once
        phases = np.exp(1j * np.multiply.outer(theta, modes))
        out = np.real(phases @ (weights * self.coeffs))
        if theta.ndim == 0:
            return float(out)
        return out


def _check_periodic(expr, text):
    probe = np.linspace(0.1, 2 * np.pi, 8, endpoint=False)
    a = evaluate(expr, probe)
    b = evaluate(expr, probe + 2 * np.pi)
    if not np.allclose(a, b, atol=1e-10, rtol=0):
        raise EvaluationError(f"{text!r} is not 2*pi-periodic")


_LIMIT_PROBES = (1e6, -1e6, 1e8, -1e8)


def limit_at_infinity(u: BoundaryData) -> float:
    """Common value of u at t = +-1e6, +-1e8, or NoFiniteLimit if the four
    samples disagree beyond 1e-6*(1+|value|)."""
    if u.domain != REALLINE:
        raise ValueError("limit_at_infinity applies to real-line data")
    if u.value_at_infinity is not None:
        return u.value_at_infinity
    samples = np.array([float(u(t)) for t in _LIMIT_PROBES])
    far = samples[2:]  # +-1e8
    center = float(np.mean(far))
    # The far pair pins the limit; the +-1e6 pair only has to confirm the
    # trend, at a looser tolerance that admits O(1/t) decay.
    if np.max(np.abs(far - center)) > 1e-6 * (1.0 + abs(center)):
        raise NoFiniteLimit(f"samples at +-1e8 disagree: {far}")
    if np.max(np.abs(samples[:2] - center)) > 1e-4 * (1.0 + abs(center)):
        raise NoFiniteLimit(f"samples at +-1e6 off the limit: {samples[:2]}")
    return center


def trace_from_monogenic(phi, domain: str):
    """Boundary traces (u1, u4) of a monogenic function whose components
    extend continuously to the boundary; the manufactured-solution harness.
    """
    if domain == CIRCLE:
        def u1(theta):
            return phi.components(np.cos(theta), np.sin(theta))[0]

        def u4(theta):
            return phi.components(np.cos(theta), np.sin(theta))[3]

        return (BoundaryData.from_callable(u1, CIRCLE, description="trace U1"),
                BoundaryData.from_callable(u4, CIRCLE, description="trace U4"))

    def u1(t):
        return phi.components(t, np.zeros_like(np.asarray(t, dtype=float)))[0]

    def u4(t):
        return phi.components(t, np.zeros_like(np.asarray(t, dtype=float)))[3]

    u1_inf = float(np.mean([u1(np.asarray(t)) for t in _LIMIT_PROBES]))
    u4_inf = float(np.mean([u4(np.asarray(t)) for t in _LIMIT_PROBES]))
    return (BoundaryData.from_callable(u1, REALLINE, value_at_infinity=u1_inf,
                                       description="trace U1"),
            BoundaryData.from_callable(u4, REALLINE, value_at_infinity=u4_inf,
                                       description="trace U4"))
