"""S-metric spaces over real coordinate tuples.

An S-metric assigns a nonnegative value to every ordered triple of points,
vanishing exactly on the diagonal and obeying the ternary triangle
inequality ``S(x,y,z) <= S(x,x,a) + S(y,y,a) + S(z,z,a)``.  The family
registry below covers the one- and two-dimensional spaces this package
works with, the half-sum metric on the plane, and metrics generated from an
ordinary two-point distance via ``S_d(x,y,z) = d(x,z) + d(y,z)``.

User-defined ternary functions come in through the expression DSL (family
``"dsl"``).  They are *candidate* metrics only; nothing here assumes they
are valid, and :mod:`smetric.axioms` exists to falsify them on samples.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence, Union

from . import expressions
from .errors import DimensionMismatchError, SMetricError

Point = tuple[float, ...]
PointLike = Union[float, int, Sequence[float]]


def as_point(value: PointLike, dimension: int | None = None) -> Point:
    """Coerce a scalar or coordinate sequence to a validated point tuple."""
    if isinstance(value, (int, float)):
        coords = (float(value),)
    else:
        coords = tuple(float(c) for c in value)
    if not coords:
        raise ValueError("a point needs at least one coordinate")
    for c in coords:
        if not math.isfinite(c):
            raise ValueError(f"non-finite coordinate in point {coords!r}")
    if dimension is not None and len(coords) != dimension:
        raise DimensionMismatchError(
            f"point {coords!r} has dimension {len(coords)}, expected {dimension}"
        )
    return coords


def point_distance(a: Point, b: Point) -> float:
    """Coordinatewise sup-distance, used for tolerance comparisons."""
    return max(abs(x - y) for x, y in zip(a, b))


# --- built-in metrics for the generated families ------------------------------


def _euclidean(a: Point, b: Point) -> float:
    return math.hypot(*(x - y for x, y in zip(a, b)))


def _absolute(a: Point, b: Point) -> float:
    return abs(a[0] - b[0])


def _discrete(a: Point, b: Point) -> float:
    return 0.0 if a == b else 1.0


METRIC_DESCRIPTORS: dict[str, Callable[[Point, Point], float]] = {
    "euclidean": _euclidean,
    "abs": _absolute,
    "discrete": _discrete,
}


# --- family evaluators ---------------------------------------------------------


def _eval_usual1d(space: "SMetricSpace", x: Point, y: Point, z: Point) -> float:
    return abs(x[0] - z[0]) + abs(y[0] - z[0])


def _eval_symskew(space: "SMetricSpace", x: Point, y: Point, z: Point) -> float:
    total = 0.0
    for xi, yi, zi in zip(x, y, z):
        total += abs(xi - zi) + abs(xi + zi - 2.0 * yi)
    return total


def _eval_exp(space: "SMetricSpace", x: Point, y: Point, z: Point) -> float:
    total = 0.0
    for xi, yi, zi in zip(x, y, z):
        ex, ey, ez = math.exp(xi), math.exp(yi), math.exp(zi)
        total += abs(ex - ez) + abs(ex + ez - 2.0 * ey)
    return total


def _eval_halfsum(space: "SMetricSpace", x: Point, y: Point, z: Point) -> float:
    return (_euclidean(x, z) + _euclidean(y, z)) / 2.0


def _make_generated(metric: Callable[[Point, Point], float]):
    def _eval(space: "SMetricSpace", x: Point, y: Point, z: Point) -> float:
        return metric(x, z) + metric(y, z)

    return _eval


def _dsl_variables(dimension: int) -> frozenset[str]:
    names = set()
    for prefix in ("x", "y", "z"):
        if dimension == 1:
            names.add(prefix)
        for i in range(1, dimension + 1):
            names.add(f"{prefix}{i}")
    return frozenset(names)


@functools.lru_cache(maxsize=None)
def _compile_dsl(source: str, dimension: int) -> expressions.Expr:
    return expressions.parse_expression(source, _dsl_variables(dimension))


def _dsl_env(x: Point, y: Point, z: Point) -> dict[str, float]:
    env: dict[str, float] = {}
    for prefix, pt in (("x", x), ("y", y), ("z", z)):
        if len(pt) == 1:
            env[prefix] = pt[0]
        for i, c in enumerate(pt, start=1):
            env[f"{prefix}{i}"] = c
    return env


def _eval_dsl(space: "SMetricSpace", x: Point, y: Point, z: Point) -> float:
    expr = _compile_dsl(space.dsl_source or "", space.dimension)
    return expressions.evaluate(expr, _dsl_env(x, y, z))


@dataclass(frozen=True)
class _Family:
    fixed_dimension: int | None  # None: dimension chosen at construction
    default_dimension: int
    evaluate: Callable[["SMetricSpace", Point, Point, Point], float]


_FAMILIES: dict[str, _Family] = {
    "usual1d": _Family(1, 1, _eval_usual1d),
    "symskew1d": _Family(1, 1, _eval_symskew),
    "symskew2d": _Family(2, 2, _eval_symskew),
    "exp2d": _Family(2, 2, _eval_exp),
    "halfsum": _Family(None, 2, _eval_halfsum),
    "generated:euclidean": _Family(None, 2, _make_generated(_euclidean)),
    "generated:abs": _Family(1, 1, _make_generated(_absolute)),
    "generated:discrete": _Family(None, 1, _make_generated(_discrete)),
    "dsl": _Family(None, 1, _eval_dsl),
}

FAMILY_NAMES: tuple[str, ...] = tuple(_FAMILIES)


@dataclass(frozen=True)
class SMetricSpace:
    """A named S-metric family instantiated at a fixed dimension.

    ``params`` is a sorted tuple of (name, value) pairs so instances stay
    hashable; it is carried for the scenario-file contract even though the
    built-in families currently take no parameters.
    """

    family: str
    dimension: int
    params: tuple[tuple[str, float], ...] = ()
    dsl_source: str | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise SMetricError(f"unknown S-metric family {self.family!r}")
        info = _FAMILIES[self.family]
        if info.fixed_dimension is not None and self.dimension != info.fixed_dimension:
            raise DimensionMismatchError(
                f"family {self.family!r} is defined on dimension {info.fixed_dimension}"
            )
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.family == "dsl":
            if not self.dsl_source:
                raise SMetricError("family 'dsl' needs dsl_source")
            _compile_dsl(self.dsl_source, self.dimension)  # validates eagerly
        elif self.dsl_source is not None:
            raise SMetricError("dsl_source is only meaningful for family 'dsl'")

    def evaluate(self, x: PointLike, y: PointLike, z: PointLike) -> float:
        """S(x, y, z).  Deterministic, exact up to float arithmetic."""
        px = as_point(x, self.dimension)
        py = as_point(y, self.dimension)
        pz = as_point(z, self.dimension)
        return _FAMILIES[self.family].evaluate(self, px, py, pz)

    def self_distance(self, x: PointLike, center: PointLike) -> float:
        """S(x, x, center): the effective two-point distance."""
        return self.evaluate(x, x, center)

    def self_distance_fn(self, center: PointLike) -> Callable[[Point], float]:
        """Closure computing ``S(p, p, center)`` without per-call validation.

        For hot loops (grid tracing); callers must pass points of the right
        dimension.
        """
        c = as_point(center, self.dimension)
        evaluate = _FAMILIES[self.family].evaluate
        return lambda p: evaluate(self, p, p, c)

    def describe(self) -> str:
        extra = f" source={self.dsl_source!r}" if self.dsl_source else ""
        return f"{self.family}(dim={self.dimension}{extra})"


def make_space(
    family: str,
    dimension: int | None = None,
    params: Mapping[str, float] | Iterable[tuple[str, float]] | None = None,
    dsl_source: str | None = None,
) -> SMetricSpace:
    """Build a space, defaulting the dimension from the family registry."""
    if family not in _FAMILIES:
        raise SMetricError(f"unknown S-metric family {family!r}")
    info = _FAMILIES[family]
    dim = dimension if dimension is not None else (info.fixed_dimension or info.default_dimension)
    if params is None:
        ptuple: tuple[tuple[str, float], ...] = ()
    else:
        items = params.items() if isinstance(params, Mapping) else params
        ptuple = tuple(sorted((str(k), float(v)) for k, v in items))
    return SMetricSpace(family=family, dimension=dim, params=ptuple, dsl_source=dsl_source)


def generate_from_metric(metric: str, dimension: int | None = None) -> SMetricSpace:
    """Space with ``S_d(x,y,z) = d(x,z) + d(y,z)`` for a built-in metric d."""
    if metric not in METRIC_DESCRIPTORS:
        raise SMetricError(
            f"unknown metric descriptor {metric!r}; choose from {sorted(METRIC_DESCRIPTORS)}"
        )
    return make_space(f"generated:{metric}", dimension)


def eval_s(space: SMetricSpace, x: PointLike, y: PointLike, z: PointLike) -> float:
    """Function form of :meth:`SMetricSpace.evaluate`."""
    return space.evaluate(x, y, z)
