"""Tiny arithmetic expression language used by map rules and user metrics.

Grammar (whitespace-insensitive)::

    expr  := term (("+" | "-") term)*
    term  := unary (("*" | "/") unary)*
    unary := "-" unary | atom
    atom  := NUMBER | NAME | FUNC "(" expr ")" | "(" expr ")"

FUNC is one of ``abs``, ``exp``, ``ln``.  NAME is a variable; the caller
supplies the set of names that are legal in its context.  Fractions such as
``7/2`` are ordinary divisions and evaluate to the same value.

The printer is precedence-exact: ``parse(to_source(tree)) == tree`` for every
tree this module can build.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import ExpressionError, MapParseError

# --- tokens -----------------------------------------------------------------

_NUMBER_RE = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
# multi-character operators must come first
_OPERATORS = ("->", ">=", "==", "+", "-", "*", "/", "(", ")", "{", "}", ",", ";", "=", "<")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    value: float
    line: int
    col: int


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        m = _NUMBER_RE.match(source, i)
        if m:
            text = m.group(0)
            tokens.append(Token("num", text, float(text), line, col))
            i = m.end()
            col += len(text)
            continue
        m = _NAME_RE.match(source, i)
        if m:
            text = m.group(0)
            tokens.append(Token("name", text, 0.0, line, col))
            i = m.end()
            col += len(text)
            continue
        for op in _OPERATORS:
            if source.startswith(op, i):
                tokens.append(Token("op", op, 0.0, line, col))
                i += len(op)
                col += len(op)
                break
        else:
            raise MapParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("end", "", 0.0, line, col))
    return tokens


class TokenStream:
    """Cursor over a token list with parse-error helpers."""

    def __init__(self, tokens: list[Token]):
        self._tokens = tokens
        self._pos = 0

    def peek(self, offset: int = 0) -> Token:
        return self._tokens[min(self._pos + offset, len(self._tokens) - 1)]

    def advance(self) -> Token:
        tok = self._tokens[self._pos]
        if tok.kind != "end":
            self._pos += 1
        return tok

    def match_op(self, text: str) -> bool:
        tok = self.peek()
        if tok.kind == "op" and tok.text == text:
            self.advance()
            return True
        return False

    def expect_op(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            raise MapParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        return self.advance()

    def error(self, message: str) -> MapParseError:
        tok = self.peek()
        return MapParseError(message, tok.line, tok.col)


# --- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value) or self.value < 0:
            raise ValueError("numeric literals must be finite and nonnegative")


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Var, Unary, Binary, Call]

FUNCTIONS = ("abs", "exp", "ln")


def const(value: float) -> Expr:
    """Literal node for ``value``; negatives become a unary minus."""
    if value < 0:
        return Unary("-", Num(-value))
    return Num(float(value))


# --- parsing -----------------------------------------------------------------


def parse_expr(stream: TokenStream, variables: Iterable[str]) -> Expr:
    names = frozenset(variables)

    def expression() -> Expr:
        node = term()
        while True:
            tok = stream.peek()
            if tok.kind == "op" and tok.text in ("+", "-"):
                stream.advance()
                node = Binary(tok.text, node, term())
            else:
                return node

    def term() -> Expr:
        node = unary()
        while True:
            tok = stream.peek()
            if tok.kind == "op" and tok.text in ("*", "/"):
                stream.advance()
                node = Binary(tok.text, node, unary())
            else:
                return node

    def unary() -> Expr:
        if stream.match_op("-"):
            return Unary("-", unary())
        return atom()

    def atom() -> Expr:
        tok = stream.peek()
        if tok.kind == "num":
            stream.advance()
            return Num(tok.value)
        if tok.kind == "name":
            stream.advance()
            if tok.text in FUNCTIONS:
                stream.expect_op("(")
                inner = expression()
                stream.expect_op(")")
                return Call(tok.text, inner)
            if tok.text not in names:
                raise MapParseError(f"unknown variable {tok.text!r}", tok.line, tok.col)
            return Var(tok.text)
        if stream.match_op("("):
            inner = expression()
            stream.expect_op(")")
            return inner
        raise stream.error(f"expected an expression, found {tok.text or 'end of input'!r}")

    return expression()


def parse_expression(source: str, variables: Iterable[str]) -> Expr:
    """Parse a standalone expression; the whole source must be consumed."""
    stream = TokenStream(tokenize(source))
    node = parse_expr(stream, variables)
    tok = stream.peek()
    if tok.kind != "end":
        raise MapParseError(f"unexpected trailing input {tok.text!r}", tok.line, tok.col)
    return node


# --- evaluation / inspection ---------------------------------------------------


def evaluate(expr: Expr, env: Mapping[str, float]) -> float:
    if isinstance(expr, Num):
        return expr.value
    if isinstance(expr, Var):
        return env[expr.name]
    if isinstance(expr, Unary):
        return -evaluate(expr.operand, env)
    if isinstance(expr, Binary):
        left = evaluate(expr.left, env)
        right = evaluate(expr.right, env)
        if expr.op == "+":
            value = left + right
        elif expr.op == "-":
            value = left - right
        elif expr.op == "*":
            value = left * right
        else:
            if right == 0.0:
                raise ExpressionError("division by zero")
            value = left / right
        if not math.isfinite(value):
            raise ExpressionError("expression value overflowed")
        return value
    if isinstance(expr, Call):
        arg = evaluate(expr.arg, env)
        if expr.func == "abs":
            return abs(arg)
        if expr.func == "exp":
            try:
                return math.exp(arg)
            except OverflowError as exc:
                raise ExpressionError("overflow in exp") from exc
        if expr.func == "ln":
            if arg <= 0.0:
                raise ExpressionError("ln of a non-positive value")
            return math.log(arg)
    raise TypeError(f"not an expression node: {expr!r}")


def variables(expr: Expr) -> set[str]:
    if isinstance(expr, Var):
        return {expr.name}
    if isinstance(expr, Unary):
        return variables(expr.operand)
    if isinstance(expr, Binary):
        return variables(expr.left) | variables(expr.right)
    if isinstance(expr, Call):
        return variables(expr.arg)
    return set()


# --- printing ------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _precedence(expr: Expr) -> int:
    if isinstance(expr, Binary):
        return _PREC[expr.op]
    if isinstance(expr, Unary):
        return 3
    return 4


def to_source(expr: Expr) -> str:
    if isinstance(expr, Num):
        return repr(expr.value)
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Unary):
        inner = to_source(expr.operand)
        if _precedence(expr.operand) < 3:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(expr, Binary):
        prec = _PREC[expr.op]
        left = to_source(expr.left)
        if _precedence(expr.left) < prec:
            left = f"({left})"
        right = to_source(expr.right)
        # equal precedence on the right would re-associate; keep the tree shape
        if _precedence(expr.right) <= prec:
            right = f"({right})"
        return f"{left} {expr.op} {right}"
    if isinstance(expr, Call):
        return f"{expr.func}({to_source(expr.arg)})"
    raise TypeError(f"not an expression node: {expr!r}")
