"""A small language for self-referential generating functions.

Grammar (whitespace is ignored)::

    expr     := term (("+" | "-") term)*
    term     := factor (("*" | "/") factor)*
    factor   := base ("^" uint)?
    base     := rational | "x" | "G" | ident | "(" expr ")"
    rational := uint ("/" uint)?
    ident    := [a-z][a-z0-9_]*     (but not "x")

``x`` is the series variable and ``G`` stands for the series being defined,
so ``1/(1 - x - x^2*G)`` describes ``G = 1/(1 - x - x^2 G)``.  There is no
unary minus and no implicit multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .errors import GFSyntaxError, UnboundVariable, UnknownCharacter
from .series import PowerSeries, fixed_point_solve


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class X:
    pass


@dataclass(frozen=True)
class SelfRef:
    pass


@dataclass(frozen=True)
class Add:
    left: "GFExpr"
    right: "GFExpr"


@dataclass(frozen=True)
class Sub:
    left: "GFExpr"
    right: "GFExpr"


@dataclass(frozen=True)
class Mul:
    left: "GFExpr"
    right: "GFExpr"


@dataclass(frozen=True)
class Div:
    left: "GFExpr"
    right: "GFExpr"


@dataclass(frozen=True)
class Pow:
    base: "GFExpr"
    exponent: int


GFExpr = Union[Const, Var, X, SelfRef, Add, Sub, Mul, Div, Pow]
Bindings = Mapping[str, Fraction]

_BINARY = {"+": Add, "-": Sub, "*": Mul, "/": Div}
_SYMBOL = {Add: "+", Sub: "-", Mul: "*", Div: "/"}

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-zA-Z_][a-zA-Z0-9_]*)|([-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise UnknownCharacter(f"unknown character {text[bad]!r}", bad)
        num, word, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("uint", num, start))
        elif word is not None:
            if word == "x":
                tokens.append(("x", word, start))
            elif word == "G":
                tokens.append(("G", word, start))
            elif re.fullmatch(r"[a-z][a-z0-9_]*", word):
                tokens.append(("ident", word, start))
            else:
                raise UnknownCharacter(f"invalid identifier {word!r}", start)
        else:
            tokens.append((op, op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise GFSyntaxError(f"expected {kind!r}, found {found}", tok[2])
        return self.advance()

    def parse(self) -> GFExpr:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise GFSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def expr(self) -> GFExpr:
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            node = _BINARY[op](node, self.term())
        return node

    def term(self) -> GFExpr:
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            node = _BINARY[op](node, self.factor())
        return node

    def factor(self) -> GFExpr:
        node = self.base()
        if self.peek()[0] == "^":
            self.advance()
            node = Pow(node, int(self.expect("uint")[1]))
        return node

    def base(self) -> GFExpr:
        kind, text, pos = self.peek()
        if kind == "uint":
            self.advance()
            if self.peek()[0] == "/" and self.peek(1)[0] == "uint":
                self.advance()
                den = int(self.advance()[1])
                if den == 0:
                    raise GFSyntaxError("zero denominator in rational literal", pos)
                return Const(Fraction(int(text), den))
            return Const(Fraction(int(text)))
        if kind == "x":
            self.advance()
            return X()
        if kind == "G":
            self.advance()
            return SelfRef()
        if kind == "ident":
            self.advance()
            return Var(text)
        if kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise GFSyntaxError(f"unexpected {found}", pos)


def parse_gf(text: str) -> GFExpr:
    return _Parser(text).parse()


def _is_int_const(e: GFExpr) -> bool:
    return isinstance(e, Const) and e.value.denominator == 1 and e.value >= 0


def pretty_print(expr: GFExpr) -> str:
    """Fully parenthesized source text that parses back to ``expr``."""
    if isinstance(expr, Const):
        v = expr.value
        if v < 0:
            return f"(0-{pretty_print(Const(-v))})"
        return str(v.numerator) if v.denominator == 1 else f"({v.numerator}/{v.denominator})"
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, X):
        return "x"
    if isinstance(expr, SelfRef):
        return "G"
    if isinstance(expr, Pow):
        return f"({pretty_print(expr.base)}^{expr.exponent})"
    left, right = pretty_print(expr.left), pretty_print(expr.right)
    if isinstance(expr, Div) and _is_int_const(expr.left) and _is_int_const(expr.right):
        # "1/2" would read back as a single rational literal
        right = f"({right})"
    return f"({left}{_SYMBOL[type(expr)]}{right})"


def contains_selfref(expr: GFExpr) -> bool:
    if isinstance(expr, SelfRef):
        return True
    if isinstance(expr, Pow):
        return contains_selfref(expr.base)
    if isinstance(expr, (Add, Sub, Mul, Div)):
        return contains_selfref(expr.left) or contains_selfref(expr.right)
    return False


def free_variables(expr: GFExpr) -> set[str]:
    if isinstance(expr, Var):
        return {expr.name}
    if isinstance(expr, Pow):
        return free_variables(expr.base)
    if isinstance(expr, (Add, Sub, Mul, Div)):
        return free_variables(expr.left) | free_variables(expr.right)
    return set()


def substitute(expr: GFExpr, env: Bindings, g: PowerSeries | None, order: int) -> PowerSeries:
    """Evaluate ``expr`` with ``G`` replaced by the series ``g``."""
    if isinstance(expr, Const):
        return PowerSeries.constant(expr.value, order)
    if isinstance(expr, Var):
        try:
            return PowerSeries.constant(env[expr.name], order)
        except KeyError:
            raise UnboundVariable(expr.name) from None
    if isinstance(expr, X):
        return PowerSeries.monomial(1, order) if order >= 1 else PowerSeries.zero(order)
    if isinstance(expr, SelfRef):
        if g is None:
            raise ValueError("expression refers to G but no series was supplied")
        return g
    if isinstance(expr, Pow):
        return substitute(expr.base, env, g, order) ** expr.exponent
    left = substitute(expr.left, env, g, order)
    right = substitute(expr.right, env, g, order)
    if isinstance(expr, Add):
        return left + right
    if isinstance(expr, Sub):
        return left - right
    if isinstance(expr, Mul):
        return left * right
    return left / right


def _compile(expr: GFExpr, env: Bindings, order: int):
    """Series for G-free subtrees, else a function of the G series.

    G-free parts are evaluated once instead of on every iteration.
    """
    if not contains_selfref(expr):
        return substitute(expr, env, None, order)
    if isinstance(expr, SelfRef):
        return lambda g: g
    if isinstance(expr, Pow):
        base, k = _compile(expr.base, env, order), expr.exponent
        return lambda g: base(g) ** k
    left = _compile(expr.left, env, order)
    right = _compile(expr.right, env, order)
    lf = left if callable(left) else (lambda g: left)
    rf = right if callable(right) else (lambda g: right)
    if isinstance(expr, Add):
        return lambda g: lf(g) + rf(g)
    if isinstance(expr, Sub):
        return lambda g: lf(g) - rf(g)
    if isinstance(expr, Mul):
        return lambda g: lf(g) * rf(g)
    return lambda g: lf(g) / rf(g)


def eval_gf(expr: GFExpr, env: Bindings, order: int) -> PowerSeries:
    """Series defined by ``G = expr[G]``, through ``x^order``."""
    missing = sorted(free_variables(expr) - set(env))
    if missing:
        raise UnboundVariable(missing[0])
    env = {k: Fraction(v) for k, v in env.items()}
    compiled = _compile(expr, env, order)
    if not callable(compiled):
        return compiled
    return fixed_point_solve(compiled, order)
