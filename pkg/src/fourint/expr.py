"""A small expression language for real functions of one real variable.

Grammar (precedence from loosest to tightest)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' expo)?          right associative
    expo   := '-' expo | power          so that x^-2 is accepted
    atom   := number | var | func '(' expr ')' | 'lnk' '(' int ',' expr ')'
            | '(' expr ')'

``x`` and ``t`` both name the variable.  Functions: exp, log (natural),
sin, cos, sqrt, abs, sign and the iterated logarithm ``lnk(k, y)``.
Unary minus binds looser than ``^``, so ``-x^2`` is ``-(x^2)``.

Evaluation is vectorised over numpy arrays.  Points outside the natural
domain are reported as domain errors instead of producing inf/nan.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DomainError, ParseError

VARIABLES = ("x", "t")
FUNCTIONS = ("exp", "log", "sin", "cos", "sqrt", "abs", "sign")


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str = "x"


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


@dataclass(frozen=True)
class Lnk:
    k: int
    arg: "Node"


Node = Union[Num, Var, Neg, BinOp, Call, Lnk]


# ---------------------------------------------------------------------------
# Tokenizer and parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
""", re.VERBOSE)

_ATOM_START = ("number", "identifier", "'('")


@dataclass
class _Tok:
    kind: str  # num, ident, op, end
    text: str
    pos: int


def _tokenize(src):
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", pos,
                             _ATOM_START + ("operator",))
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.tok
        if t.kind == "op" and t.text == text:
            return self.advance()
        raise ParseError(f"unexpected {self._describe(t)}", t.pos, (f"'{text}'",))

    @staticmethod
    def _describe(t):
        return "end of input" if t.kind == "end" else f"token {t.text!r}"

    def is_op(self, *texts):
        t = self.tok
        return t.kind == "op" and t.text in texts

    def parse(self):
        node = self.expr()
        t = self.tok
        if t.kind != "end":
            raise ParseError(f"unexpected {self._describe(t)}", t.pos,
                             ("operator", "end of input"))
        return node

    def expr(self):
        node = self.term()
        while self.is_op("+", "-"):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.is_op("*", "/"):
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.is_op("-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.is_op("^"):
            self.advance()
            return BinOp("^", base, self.expo())
        return base

    def expo(self):
        if self.is_op("-"):
            self.advance()
            return Neg(self.expo())
        return self.power()

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            value = float(t.text)
            if not np.isfinite(value):
                raise ParseError("number out of range", t.pos)
            return Num(value)
        if t.kind == "ident":
            self.advance()
            name = t.text
            if name in VARIABLES:
                return Var(name)
            if name in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(name, arg)
            if name == "lnk":
                self.expect("(")
                kt = self.tok
                if kt.kind != "num" or not kt.text.isdigit() or int(kt.text) < 1:
                    raise ParseError("lnk order must be a positive integer literal",
                                     kt.pos, ("positive integer",))
                self.advance()
                self.expect(",")
                arg = self.expr()
                self.expect(")")
                return Lnk(int(kt.text), arg)
            raise ParseError(f"unknown identifier {name!r}", t.pos,
                             VARIABLES + FUNCTIONS + ("lnk",))
        if self.is_op("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {self._describe(t)}", t.pos, _ATOM_START + ("'-'",))


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def to_source(node: Node) -> str:
    """Fully parenthesised source text; parse(to_source(n)) == n."""
    if isinstance(node, Num):
        return repr(float(node.value))
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_source(node.arg)})"
    if isinstance(node, BinOp):
        return f"({to_source(node.left)}{node.op}{to_source(node.right)})"
    if isinstance(node, Call):
        return f"{node.func}({to_source(node.arg)})"
    if isinstance(node, Lnk):
        return f"lnk({node.k}, {to_source(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

# Domain-error reasons, indexed by code (0 = ok).
REASONS = (
    "",
    "log of non-positive argument",
    "division by zero",
    "zero raised to a negative power",
    "square root of negative argument",
    "negative base with non-integer exponent",
    "iterated logarithm outside its domain",
    "non-finite result",
)


def _mark(code, reason, where):
    code[(code == 0) & where] = reason


def _ev(node, x, code):
    if isinstance(node, Num):
        return np.full(x.shape, node.value)
    if isinstance(node, Var):
        return x.copy()
    if isinstance(node, Neg):
        return -_ev(node.arg, x, code)
    if isinstance(node, BinOp):
        a = _ev(node.left, x, code)
        b = _ev(node.right, x, code)
        op = node.op
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            zero = b == 0
            _mark(code, 2, zero)
            return a / np.where(zero, 1.0, b)
        # power
        int_exp = np.isfinite(b) & (b == np.round(b))
        bad0 = (a == 0) & (b < 0)
        badneg = (a < 0) & ~int_exp
        _mark(code, 3, bad0)
        _mark(code, 5, badneg)
        safe_a = np.where(bad0 | badneg, 1.0, a)
        return np.power(safe_a, b)
    if isinstance(node, Call):
        a = _ev(node.arg, x, code)
        f = node.func
        if f == "exp":
            return np.exp(a)
        if f == "log":
            bad = ~(a > 0)
            _mark(code, 1, bad)
            return np.log(np.where(bad, 1.0, a))
        if f == "sin":
            return np.sin(a)
        if f == "cos":
            return np.cos(a)
        if f == "sqrt":
            bad = a < 0
            _mark(code, 4, bad)
            return np.sqrt(np.where(bad, 0.0, a))
        if f == "abs":
            return np.abs(a)
        if f == "sign":
            return np.sign(a)
    if isinstance(node, Lnk):
        a = _ev(node.arg, x, code)
        for _ in range(node.k):
            bad = ~(a > 0)
            _mark(code, 6, bad)
            a = np.log(np.where(bad, 1.0, a))
        return a
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_array(node: Node, x):
    """Evaluate over an array.  Returns (values, reason_codes).

    values is nan wherever reason_codes is non-zero.
    """
    x = np.asarray(x, dtype=float)
    code = np.zeros(x.shape, dtype=np.int8)
    with np.errstate(all="ignore"):
        v = np.asarray(_ev(node, x, code), dtype=float)
        if v.shape != x.shape:
            v = np.broadcast_to(v, x.shape).copy()
    _mark(code, 7, ~np.isfinite(v))
    v = np.where(code == 0, v, np.nan)
    return v, code


def substitute(node: Node, replacement: Node) -> Node:
    """Replace every occurrence of the variable by ``replacement``."""
    if isinstance(node, Num):
        return node
    if isinstance(node, Var):
        return replacement
    if isinstance(node, Neg):
        return Neg(substitute(node.arg, replacement))
    if isinstance(node, BinOp):
        return BinOp(node.op, substitute(node.left, replacement),
                     substitute(node.right, replacement))
    if isinstance(node, Call):
        return Call(node.func, substitute(node.arg, replacement))
    if isinstance(node, Lnk):
        return Lnk(node.k, substitute(node.arg, replacement))
    raise TypeError(f"not an expression node: {node!r}")


def depth(node: Node) -> int:
    if isinstance(node, (Num, Var)):
        return 1
    if isinstance(node, BinOp):
        return 1 + max(depth(node.left), depth(node.right))
    return 1 + depth(node.arg)


@dataclass(frozen=True)
class Expression:
    """Parsed real function of one variable.  Immutable and reentrant."""

    ast: Node
    source: str = field(default="", compare=False)

    def __str__(self):
        return self.source or to_source(self.ast)

    def __call__(self, x):
        """Vectorised evaluation; raises DomainError on any bad point."""
        v, code = evaluate_array(self.ast, x)
        if np.any(code):
            i = int(np.flatnonzero(np.ravel(code))[0])
            bad_x = float(np.ravel(np.asarray(x, dtype=float))[i])
            raise DomainError(f"{REASONS[int(np.ravel(code)[i])]} at x={bad_x!r}")
        return v

    def reflected(self) -> "Expression":
        """The function x -> f(-x)."""
        name = "t"
        node = substitute(self.ast, Neg(Var(name)))
        return Expression(node, to_source(node))

    def shifted(self, a: float) -> "Expression":
        """The function x -> f(x + a)."""
        node = substitute(self.ast, BinOp("+", Var("x"), Num(float(a))))
        return Expression(node, to_source(node))

    @property
    def is_zero_literal(self) -> bool:
        return isinstance(self.ast, Num) and self.ast.value == 0.0


@dataclass(frozen=True)
class GridResult:
    """Pointwise evaluation with per-point error flags."""

    values: tuple  # float, or None where the point failed
    errors: tuple  # "" where ok, otherwise the domain-error reason

    @property
    def ok(self):
        return tuple(e == "" for e in self.errors)


def parse(source: str) -> Expression:
    """Parse source text into an :class:`Expression`."""
    if not isinstance(source, str):
        raise TypeError("expression source must be a string")
    return Expression(_Parser(source).parse(), source)


def eval(e: Expression, x: float) -> float:  # noqa: A001 - mirrors the public API name
    """Value of ``e`` at the scalar ``x``; raises DomainError off-domain."""
    return float(e(np.array([float(x)]))[0])


def eval_grid(e: Expression, points) -> GridResult:
    """Evaluate at each point; domain errors are recorded, not raised."""
    v, code = evaluate_array(e.ast, np.asarray(list(points), dtype=float))
    values = tuple(None if c else float(val) for val, c in zip(v, code))
    errors = tuple(REASONS[int(c)] for c in code)
    return GridResult(values, errors)


def constant(value: float) -> Expression:
    node = Num(float(value)) if value >= 0 else Neg(Num(-float(value)))
    return Expression(node, to_source(node))


ZERO = constant(0.0)
ONE = constant(1.0)
