"""Text grammar for operators and the canonical printer.

Grammar::

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' ['-'] int)?
    atom   := 't' | 'x' | 'dt' | 'dx' | 'i' | rational | param | '(' expr ')'

Juxtaposition is rejected, so ``dx x`` is a syntax error and ``dx*x`` is
required.  The printer emits exactly this grammar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .coeffs import PARAMS, PARAM_ALIASES, GaussianRational, ParamPoly, format_parampoly
from .operator import DT, DX, T, X, WeylOperator


class OperatorSyntaxError(ValueError):
    """Raised for malformed operator text; carries the character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-zλ_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise OperatorSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


# parse tree -----------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    name: str  # t, x, dt, dx, i, or a parameter name


@dataclass(frozen=True)
class Number:
    value: Fraction


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Product:
    factors: Tuple["Node", ...]


@dataclass(frozen=True)
class Sum:
    terms: Tuple[Tuple[int, "Node"], ...]  # (sign, node)


Node = Union[Atom, Number, Power, Product, Sum]

_VARIABLES = {"t": T, "x": X, "dt": DT, "dx": DX}


@dataclass(frozen=True)
class OperatorExpr:
    """Parse tree plus source text; ``evaluate`` gives the WeylOperator."""

    root: Node
    text: str = ""

    def evaluate(self) -> WeylOperator:
        return _evaluate(self.root)


def _is_invertible_scalar(op: WeylOperator) -> bool:
    return list(op.terms) == [(0, 0, 0, 0)] and op.terms[(0, 0, 0, 0)].is_constant()


def _evaluate(node: Node) -> WeylOperator:
    if isinstance(node, Number):
        return WeylOperator.scalar(node.value)
    if isinstance(node, Atom):
        if node.name in _VARIABLES:
            return _VARIABLES[node.name]
        if node.name == "i":
            return WeylOperator.scalar(GaussianRational(0, 1))
        return WeylOperator.scalar(ParamPoly.param(node.name))
    if isinstance(node, Power):
        base = _evaluate(node.base)
        e = node.exponent
        if e >= 0:
            return base**e
        # negative exponents: x and nonzero exact scalars only
        if base == X:
            return WeylOperator.monomial(j=e)
        if _is_invertible_scalar(base):
            c = base.terms[(0, 0, 0, 0)].constant_value()
            return WeylOperator.scalar(c**e)
        raise ValueError("negative powers are only allowed for x and numeric constants")
    if isinstance(node, Product):
        out = WeylOperator.scalar(1)
        for f in node.factors:
            out = out * _evaluate(f)
        return out
    if isinstance(node, Sum):
        out = WeylOperator()
        for sign, t in node.terms:
            v = _evaluate(t)
            out = out + v if sign > 0 else out - v
        return out
    raise TypeError(node)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise OperatorSyntaxError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def parse(self) -> Node:
        if self.peek()[0] == "end":
            raise OperatorSyntaxError("empty expression", 0)
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise OperatorSyntaxError(f"unexpected token {tok[1]!r} (use '*' between factors)", tok[2])
        return node

    def expr(self) -> Node:
        terms = []
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek()[:2] == ("op", "+"):
            self.take()
        terms.append((sign, self.term()))
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = 1 if self.take()[1] == "+" else -1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while self.peek()[:2] == ("op", "*"):
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Node:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            neg = False
            if self.peek()[:2] == ("op", "-"):
                self.take()
                neg = True
            tok = self.peek()
            if tok[0] != "num" or "/" in tok[1]:
                raise OperatorSyntaxError("exponent must be an integer", tok[2])
            self.take()
            e = int(tok[1])
            e = -e if neg else e
            if e < 0 and isinstance(base, Atom) and base.name in ("t", "dt", "dx"):
                raise OperatorSyntaxError(f"negative power of {base.name} is not allowed", tok[2])
            return Power(base, e)
        return base

    def atom(self) -> Node:
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return Number(Fraction(val))
        if kind == "name":
            if val in _VARIABLES or val == "i":
                return Atom(val)
            name = PARAM_ALIASES.get(val, val)
            if name in PARAMS:
                return Atom(name)
            raise OperatorSyntaxError(f"unknown identifier {val!r}", pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect("op", ")")
            return node
        raise OperatorSyntaxError(f"unexpected token {val or 'end of input'!r}", pos)


def parse_operator(text: str) -> OperatorExpr:
    """Parse operator text into a tree.  Errors carry the character position."""
    return OperatorExpr(_Parser(text).parse(), text)


def parse(text: str) -> WeylOperator:
    """Parse and evaluate in one step."""
    return parse_operator(text).evaluate()


# printing ---------------------------------------------------------------------


def _monomial(key) -> str:
    parts = []
    for sym, p in zip(("t", "x", "dt", "dx"), key):
        if p == 1:
            parts.append(sym)
        elif p:
            parts.append(f"{sym}^{p}")
    return "*".join(parts)


def format_operator(op: WeylOperator) -> str:
    """Canonical text; ``parse(format_operator(A)) == A``."""
    if op.is_zero():
        return "0"
    pieces = []
    for key, c in op.sorted_terms():
        mono = _monomial(key)
        ctext = format_parampoly(c)
        single = len(c.terms) == 1
        if not mono:
            piece = ctext if single else f"({ctext})"
        elif c == 1:
            piece = mono
        elif c == -1:
            piece = f"-{mono}"
        elif single:
            piece = f"{ctext}*{mono}"
        else:
            piece = f"({ctext})*{mono}"
        pieces.append(piece)
    text = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-"):
            text += f" - {piece[1:]}"
        else:
            text += f" + {piece}"
    return text
