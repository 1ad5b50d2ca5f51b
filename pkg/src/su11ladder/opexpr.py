"""Surface syntax for differential operators: parser and round-trip printer.

Grammar (``^`` binds tighter than ``*`` binds tighter than ``+``/``-``)::

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := ('-' | '+')* power
    power   := atom ('^' ['-'] INT)?
    atom    := RATIONAL | INT | NAME | '(' expr ')'

``x`` is multiplication by x, ``D`` is d/dx, other names resolve to either
symbolic parameters or built-in generators (``D3_osc``, ``Tp_hyd``, ...).
``*`` is operator composition and preserves factor order; ``x^-2`` needs no
parentheses.  ``format_operator`` in :mod:`.opalg` emits exactly this
syntax, so parse(print(op)) is the identity on canonical operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .opalg import Coefficient, DiffOperator, ParameterSet, format_operator, multiply
from .systems import SYMBOLS, SystemKind, generator_triple

__all__ = [
    "OperatorExprError",
    "ExprLexError",
    "ExprSyntaxError",
    "UnknownIdentifierError",
    "parse_operator_expression",
    "builtin_generators",
    "print_operator",
]


class OperatorExprError(ValueError):
    """Base error for operator expressions; carries the source span."""

    def __init__(self, message: str, position: int, end: Optional[int] = None):
        self.position = position
        self.end = position + 1 if end is None else end
        super().__init__(f"{message} at position {position}")


class ExprLexError(OperatorExprError):
    """Character that cannot start any token."""


class ExprSyntaxError(OperatorExprError):
    """Token stream does not match the grammar."""


class UnknownIdentifierError(OperatorExprError):
    """Identifier is neither a parameter nor a built-in operator."""


# -- built-in generator tables --------------------------------------------------

_KIND_TAGS = {
    "osc": SystemKind.OSCILLATOR,
    "hyd": SystemKind.HYDROGEN,
    "pseudo": SystemKind.PSEUDO_HARMONIC,
    "mie": SystemKind.MIE,
}


def builtin_generators() -> dict:
    """Name -> DiffOperator map of every named generator.

    ``D3_osc``/``Dp_osc``/``Dm_osc`` style for the x-variable triples (``T``
    prefix for the hydrogen-like kinds), ``tau*_hyd`` and ``*_osc_r`` for the
    radial-variable ones.
    """
    table = {}
    for tag, kind in _KIND_TAGS.items():
        prefix = "D" if kind.oscillator_like else "T"
        triple = generator_triple(kind, "x")
        table[f"{prefix}3_{tag}"] = triple.g3
        table[f"{prefix}p_{tag}"] = triple.gplus
        table[f"{prefix}m_{tag}"] = triple.gminus
    tau = generator_triple(SystemKind.HYDROGEN, "r")
    table["tau3_hyd"] = tau.g3
    table["taup_hyd"] = tau.gplus
    table["taum_hyd"] = tau.gminus
    osc_r = generator_triple(SystemKind.OSCILLATOR, "r")
    table["D3_osc_r"] = osc_r.g3
    table["Dp_osc_r"] = osc_r.gplus
    table["Dm_osc_r"] = osc_r.gminus
    return table


# -- lexer -----------------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # NAME | NUMBER | one of + - * ^ ( ) | EOF
    text: str
    position: int
    value: Optional[Fraction] = None


def _lex(text: str) -> list:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            numerator = int(text[start:i])
            if i < n and text[i] == "/":
                j = i + 1
                if j >= n or not text[j].isdigit():
                    raise ExprLexError("rational literal is missing a denominator", i)
                i = j
                while i < n and text[i].isdigit():
                    i += 1
                denominator = int(text[j:i])
                if denominator == 0:
                    raise ExprLexError("rational literal has a zero denominator", j)
                tokens.append(_Token("NUMBER", text[start:i], start,
                                     Fraction(numerator, denominator)))
            else:
                tokens.append(_Token("NUMBER", text[start:i], start,
                                     Fraction(numerator)))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("NAME", text[start:i], start))
            continue
        raise ExprLexError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("EOF", "", n))
    return tokens


# -- abstract syntax ---------------------------------------------------------------


@dataclass(frozen=True)
class _Number:
    value: Fraction
    position: int


@dataclass(frozen=True)
class _Name:
    name: str
    position: int


@dataclass(frozen=True)
class _Neg:
    operand: object
    position: int


@dataclass(frozen=True)
class _Pow:
    base: object
    exponent: int
    position: int


@dataclass(frozen=True)
class _BinOp:
    op: str  # '+', '-', '*'
    left: object
    right: object
    position: int


class _Parser:
    def __init__(self, tokens: list):
        self.tokens = tokens
        self.i = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        token = self.tokens[self.i]
        self.i += 1
        return token

    def expect(self, kind: str) -> _Token:
        if self.current.kind != kind:
            raise ExprSyntaxError(
                f"expected {kind!r}, found {self.current.text or 'end of input'!r}",
                self.current.position)
        return self.advance()

    def parse(self):
        node = self.expr()
        if self.current.kind != "EOF":
            raise ExprSyntaxError(
                f"unexpected {self.current.text!r}", self.current.position)
        return node

    def expr(self):
        node = self.term()
        while self.current.kind in ("+", "-"):
            op = self.advance()
            node = _BinOp(op.kind, node, self.term(), op.position)
        return node

    def term(self):
        node = self.factor()
        while self.current.kind == "*":
            op = self.advance()
            node = _BinOp("*", node, self.factor(), op.position)
        return node

    def factor(self):
        if self.current.kind in ("+", "-"):
            op = self.advance()
            inner = self.factor()
            return _Neg(inner, op.position) if op.kind == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.current.kind != "^":
            return base
        caret = self.advance()
        negative = False
        if self.current.kind == "-":
            negative = True
            self.advance()
        token = self.current
        if token.kind != "NUMBER" or token.value.denominator != 1:
            raise ExprSyntaxError("exponent must be an integer", token.position)
        self.advance()
        exponent = int(token.value)
        return _Pow(base, -exponent if negative else exponent, caret.position)

    def atom(self):
        token = self.current
        if token.kind == "NUMBER":
            self.advance()
            return _Number(token.value, token.position)
        if token.kind == "NAME":
            self.advance()
            return _Name(token.text, token.position)
        if token.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ExprSyntaxError(
            f"expected a value, found {token.text or 'end of input'!r}",
            token.position)


# -- lowering to DiffOperator -------------------------------------------------------


def _lower(node, params: ParameterSet, builtins: dict) -> DiffOperator:
    if isinstance(node, _Number):
        return DiffOperator.from_coefficient(Coefficient.rational(params, node.value))
    if isinstance(node, _Name):
        if node.name == "x":
            return DiffOperator.x_power(params, 1)
        if node.name == "D":
            return DiffOperator.derivative(params, 1)
        if node.name in params:
            return DiffOperator.from_coefficient(Coefficient.symbol(params, node.name))
        if node.name in builtins:
            op = builtins[node.name]
            if op.params != params:
                raise UnknownIdentifierError(
                    f"builtin {node.name!r} lives in a different parameter set",
                    node.position, node.position + len(node.name))
            return op
        raise UnknownIdentifierError(
            f"unknown identifier {node.name!r}", node.position,
            node.position + len(node.name))
    if isinstance(node, _Neg):
        return -_lower(node.operand, params, builtins)
    if isinstance(node, _Pow):
        base = _lower(node.base, params, builtins)
        if node.exponent >= 0:
            return base ** node.exponent
        try:
            return base.inverse_monomial() ** (-node.exponent)
        except Exception:
            raise ExprSyntaxError(
                "negative powers apply only to invertible monomials like x or k2",
                node.position) from None
    if isinstance(node, _BinOp):
        left = _lower(node.left, params, builtins)
        right = _lower(node.right, params, builtins)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return multiply(left, right)
    raise TypeError(f"unexpected AST node {node!r}")


def parse_operator_expression(text: str, params: ParameterSet = SYMBOLS,
                              builtins: Optional[dict] = None) -> DiffOperator:
    """Parse surface syntax into a canonical operator.

    ``*`` lowers to operator composition in source order; identifiers resolve
    through ``params`` and then through the built-in generator table (which
    defaults to :func:`builtin_generators` when parsing over the shared
    symbol set).
    """
    if not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    if builtins is None:
        builtins = builtin_generators() if params == SYMBOLS else {}
    ast = _Parser(_lex(text)).parse()
    return _lower(ast, params, builtins)


def print_operator(op: DiffOperator) -> str:
    """Canonical textual form; parses back to the same operator."""
    return format_operator(op)
