"""Piecewise self-mappings: predicates, the map DSL, and map constructors.

A map is an ordered list of (guard, expression-vector) rules ending in a
mandatory ``otherwise`` catch-all; the first matching guard wins, so
evaluation is total on the ambient space.  The concrete DSL::

    map      := (rule ";")* "otherwise" "->" exprlist
    rule     := guard "->" exprlist
    guard    := "x in {" numlist "}"
              | "on_circle(" center "," num ")"
              | "in_ball(" center "," num ")"
              | "abs(x)" (">=" | "<") num
              | "x" ("=" | "==") num
              | "x" INDEX "=" num
    exprlist := expr ("," expr)*

Numbers are decimals or simple fractions ``p/q``; whitespace is free.  The
``on_circle``/``in_ball`` guards are membership tests under an ambient
S-metric, so sources using them parse only when a space is supplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from . import expressions
from .errors import DimensionMismatchError, ExpressionError, MapParseError
from .expressions import Expr, TokenStream, tokenize
from .geometry import Circle, ClosedBall
from .spaces import Point, PointLike, SMetricSpace, as_point, point_distance

DEFAULT_GUARD_TOL = 1e-9


# --- predicates ----------------------------------------------------------------


@dataclass(frozen=True)
class InFiniteSet:
    points: tuple[Point, ...]
    tol: float = DEFAULT_GUARD_TOL

    def matches(self, x: Point) -> bool:
        return any(point_distance(x, p) <= self.tol for p in self.points)


@dataclass(frozen=True)
class OnCircle:
    circle: Circle
    tol: float = DEFAULT_GUARD_TOL

    def matches(self, x: Point) -> bool:
        return self.circle.contains(x, self.tol)


@dataclass(frozen=True)
class InClosedBall:
    ball: ClosedBall
    tol: float = DEFAULT_GUARD_TOL

    def matches(self, x: Point) -> bool:
        return self.ball.contains(x, self.tol)


@dataclass(frozen=True)
class AbsAtLeast:
    threshold: float

    def matches(self, x: Point) -> bool:
        return abs(x[0]) >= self.threshold


@dataclass(frozen=True)
class AbsLessThan:
    threshold: float

    def matches(self, x: Point) -> bool:
        return abs(x[0]) < self.threshold


@dataclass(frozen=True)
class CoordEquals:
    index: int
    value: float
    tol: float = DEFAULT_GUARD_TOL

    def matches(self, x: Point) -> bool:
        return abs(x[self.index] - self.value) <= self.tol


@dataclass(frozen=True)
class Otherwise:
    def matches(self, x: Point) -> bool:
        return True


Predicate = Union[InFiniteSet, OnCircle, InClosedBall, AbsAtLeast, AbsLessThan, CoordEquals, Otherwise]


# --- the map -----------------------------------------------------------------


@dataclass(frozen=True)
class Rule:
    predicate: Predicate
    exprs: tuple[Expr, ...]


@dataclass(frozen=True)
class PiecewiseMap:
    rules: tuple[Rule, ...]
    dimension: int
    name: str = ""

    def __post_init__(self):
        if not self.rules:
            raise ValueError("a piecewise map needs at least the otherwise rule")
        for i, rule in enumerate(self.rules):
            is_last = i == len(self.rules) - 1
            if isinstance(rule.predicate, Otherwise) != is_last:
                raise ValueError("exactly the last rule must be the otherwise catch-all")
            if len(rule.exprs) != self.dimension:
                raise DimensionMismatchError(
                    f"rule {i} produces {len(rule.exprs)} coordinates, expected {self.dimension}"
                )

    def apply(self, x: PointLike) -> Point:
        """Value of the first matching rule's expressions at ``x``."""
        p = as_point(x, self.dimension)
        env = _point_env(p)
        for i, rule in enumerate(self.rules):
            if rule.predicate.matches(p):
                try:
                    return tuple(expressions.evaluate(e, env) for e in rule.exprs)
                except ExpressionError as exc:
                    label = self.name or "piecewise map"
                    raise ExpressionError(
                        f"{label}: rule {i} ({print_predicate(rule.predicate)}): {exc}"
                    ) from exc
        raise AssertionError("unreachable: otherwise rule always matches")

    __call__ = apply


def _point_env(p: Point) -> dict[str, float]:
    env = {f"x{i}": c for i, c in enumerate(p, start=1)}
    if len(p) == 1:
        env["x"] = p[0]
    return env


def _map_variables(dimension: int) -> frozenset[str]:
    names = {f"x{i}" for i in range(1, dimension + 1)}
    if dimension == 1:
        names.add("x")
    return frozenset(names)


def apply_map(mapping: PiecewiseMap, x: PointLike) -> Point:
    """Function form of :meth:`PiecewiseMap.apply`."""
    return mapping.apply(x)


# --- parsing -----------------------------------------------------------------


def _parse_signed_number(ts: TokenStream) -> float:
    sign = 1.0
    while ts.match_op("-"):
        sign = -sign
    tok = ts.peek()
    if tok.kind != "num":
        raise ts.error(f"expected a number, found {tok.text or 'end of input'!r}")
    ts.advance()
    value = tok.value
    if ts.peek().kind == "op" and ts.peek().text == "/" and ts.peek(1).kind == "num":
        ts.advance()
        denom = ts.advance().value
        if denom == 0.0:
            raise ts.error("zero denominator in fraction")
        value = value / denom
    return sign * value


def _parse_center(ts: TokenStream, dimension: int) -> Point:
    if ts.match_op("("):
        coords = [_parse_signed_number(ts)]
        while ts.match_op(","):
            coords.append(_parse_signed_number(ts))
        ts.expect_op(")")
    else:
        coords = [_parse_signed_number(ts)]
    if len(coords) != dimension:
        raise ts.error(f"center has {len(coords)} coordinates, expected {dimension}")
    return tuple(coords)


def _parse_set_member(ts: TokenStream, dimension: int) -> Point:
    if ts.peek().kind == "op" and ts.peek().text == "(":
        return _parse_center(ts, dimension)
    value = _parse_signed_number(ts)
    if dimension != 1:
        raise ts.error("scalar set members need a one-dimensional map")
    return (value,)


def _parse_guard(ts: TokenStream, dimension: int, space: SMetricSpace | None) -> Predicate:
    tok = ts.peek()
    if tok.kind != "name":
        raise ts.error(f"expected a guard, found {tok.text or 'end of input'!r}")

    if tok.text == "otherwise":
        ts.advance()
        return Otherwise()

    if tok.text in ("on_circle", "in_ball"):
        if space is None:
            raise MapParseError(
                f"guard {tok.text!r} needs an ambient metric; pass space= to parse_map",
                tok.line,
                tok.col,
            )
        ts.advance()
        ts.expect_op("(")
        center = _parse_center(ts, dimension)
        ts.expect_op(",")
        radius = _parse_signed_number(ts)
        ts.expect_op(")")
        if tok.text == "on_circle":
            return OnCircle(Circle(center, radius, space))
        return InClosedBall(ClosedBall(center, radius, space))

    if tok.text == "abs":
        ts.advance()
        ts.expect_op("(")
        var = ts.advance()
        if var.kind != "name" or var.text != "x":
            raise MapParseError("abs-guards take the bare variable x", var.line, var.col)
        if dimension != 1:
            raise MapParseError("abs(x) guards need a one-dimensional map", tok.line, tok.col)
        ts.expect_op(")")
        if ts.match_op(">="):
            return AbsAtLeast(_parse_signed_number(ts))
        if ts.match_op("<"):
            return AbsLessThan(_parse_signed_number(ts))
        raise ts.error("expected >= or < after abs(x)")

    if tok.text == "x":
        nxt = ts.peek(1)
        if nxt.kind == "name" and nxt.text == "in":
            ts.advance()
            ts.advance()
            ts.expect_op("{")
            members = [_parse_set_member(ts, dimension)]
            while ts.match_op(","):
                members.append(_parse_set_member(ts, dimension))
            ts.expect_op("}")
            return InFiniteSet(tuple(members))
        if nxt.kind == "op" and nxt.text in ("=", "=="):
            if dimension != 1:
                raise MapParseError("bare x = guards need a one-dimensional map", tok.line, tok.col)
            ts.advance()
            ts.advance()
            return CoordEquals(0, _parse_signed_number(ts))
        raise MapParseError("expected 'in', '=' or '==' after x in a guard", nxt.line, nxt.col)

    # coordinate guard: x<k> = value
    if tok.text.startswith("x") and tok.text[1:].isdigit():
        index = int(tok.text[1:])
        if not 1 <= index <= dimension:
            raise MapParseError(f"coordinate {tok.text!r} out of range for dimension {dimension}", tok.line, tok.col)
        ts.advance()
        if not (ts.match_op("=") or ts.match_op("==")):
            raise ts.error(f"expected = after {tok.text}")
        return CoordEquals(index - 1, _parse_signed_number(ts))

    raise MapParseError(f"unknown guard {tok.text!r}", tok.line, tok.col)


def parse_map(
    source: str,
    dimension: int,
    space: SMetricSpace | None = None,
    name: str = "",
) -> PiecewiseMap:
    """Parse DSL source into a map; rejects sources without a terminal otherwise."""
    if dimension < 1:
        raise ValueError("dimension must be >= 1")
    ts = TokenStream(tokenize(source))
    variables = _map_variables(dimension)
    rules: list[Rule] = []
    while True:
        predicate = _parse_guard(ts, dimension, space)
        ts.expect_op("->")
        exprs = [expressions.parse_expr(ts, variables)]
        while ts.match_op(","):
            exprs.append(expressions.parse_expr(ts, variables))
        if len(exprs) != dimension:
            raise ts.error(f"rule produces {len(exprs)} coordinates, expected {dimension}")
        rules.append(Rule(predicate, tuple(exprs)))
        if isinstance(predicate, Otherwise):
            break
        if not ts.match_op(";"):
            raise ts.error("expected ';' and more rules ending in an otherwise rule")
    tok = ts.peek()
    if tok.kind != "end":
        raise MapParseError(f"unexpected input after otherwise rule: {tok.text!r}", tok.line, tok.col)
    return PiecewiseMap(tuple(rules), dimension, name)


# --- printing ------------------------------------------------------------------


def _format_point(p: Point) -> str:
    if len(p) == 1:
        return repr(p[0])
    return "(" + ", ".join(repr(c) for c in p) + ")"


def print_predicate(predicate: Predicate) -> str:
    if isinstance(predicate, Otherwise):
        return "otherwise"
    if isinstance(predicate, InFiniteSet):
        return "x in {" + ", ".join(_format_point(p) for p in predicate.points) + "}"
    if isinstance(predicate, OnCircle):
        c = predicate.circle
        return f"on_circle({_format_point(c.center)}, {c.radius!r})"
    if isinstance(predicate, InClosedBall):
        b = predicate.ball
        return f"in_ball({_format_point(b.center)}, {b.radius!r})"
    if isinstance(predicate, AbsAtLeast):
        return f"abs(x) >= {predicate.threshold!r}"
    if isinstance(predicate, AbsLessThan):
        return f"abs(x) < {predicate.threshold!r}"
    if isinstance(predicate, CoordEquals):
        var = "x" if predicate.index == 0 else f"x{predicate.index + 1}"
        return f"{var} = {predicate.value!r}"
    raise TypeError(f"not a predicate: {predicate!r}")


def print_map(mapping: PiecewiseMap) -> str:
    """Render a map back to DSL source; reparsing yields an identical map."""
    parts = []
    for rule in mapping.rules:
        exprs = ", ".join(expressions.to_source(e) for e in rule.exprs)
        parts.append(f"{print_predicate(rule.predicate)} -> {exprs}")
    return " ; ".join(parts)


# --- constructors ----------------------------------------------------------------


def _identity_exprs(dimension: int) -> tuple[Expr, ...]:
    if dimension == 1:
        return (expressions.Var("x"),)
    return tuple(expressions.Var(f"x{i}") for i in range(1, dimension + 1))


def _constant_exprs(p: Point) -> tuple[Expr, ...]:
    return tuple(expressions.const(c) for c in p)


def make_multi_circle_map(
    circles: Sequence[Circle],
    alpha: PointLike,
    tol: float = DEFAULT_GUARD_TOL,
    name: str = "multi_circle",
) -> PiecewiseMap:
    """Map fixing every given circle pointwise and sending the rest to ``alpha``.

    All circles must share one space, and ``alpha`` must lie on none of them
    (its self-distance to each center must differ from that radius).
    """
    if not circles:
        raise ValueError("need at least one circle")
    space = circles[0].space
    for c in circles[1:]:
        if c.space != space:
            raise ValueError("all circles must share one S-metric space")
    a = as_point(alpha, space.dimension)
    for c in circles:
        if c.contains(a, tol):
            raise ValueError(
                f"alpha {a!r} lies on the circle around {c.center!r} with radius {c.radius!r}"
            )
    rules = [Rule(OnCircle(c, tol), _identity_exprs(space.dimension)) for c in circles]
    rules.append(Rule(Otherwise(), _constant_exprs(a)))
    return PiecewiseMap(tuple(rules), space.dimension, name)


def fixed_point_set(
    mapping: PiecewiseMap,
    sample: Sequence[PointLike],
    space: SMetricSpace,
    tol: float = 1e-9,
) -> list[Point]:
    """Sampled points whose displacement ``S(x,x,Tx)`` stays within ``tol``.

    This is the brute-force oracle the condition checkers are validated
    against.
    """
    fixed = []
    for raw in sample:
        x = as_point(raw, space.dimension)
        if space.self_distance(x, mapping.apply(x)) <= tol:
            fixed.append(x)
    return sorted(fixed)
