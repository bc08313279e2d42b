"""Circles, balls, diameters and orbits in an S-metric space.

A circle is the level set ``{x : S(x,x,center) = radius}`` of the
self-distance to a center; a closed ball is the corresponding sublevel set.
Circles are represented concretely in two ways: exact two-point solutions on
the line for families whose self-distance is ``2|x - center|``, and traced
point clouds in the plane extracted from a sign-change scan of the residual
field over a grid, refined by bisection along grid edges.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import UnsupportedFamilyError
from .spaces import Point, PointLike, SMetricSpace, as_point, point_distance

Window = Sequence[tuple[float, float]]

DEFAULT_RESOLUTION = 512
DEFAULT_BAND_TOL = 1e-8
DEFAULT_N_MAX = 64
DEFAULT_ESCAPE_BOUND = 1e9
DEFAULT_CYCLE_TOL = 1e-9


@dataclass(frozen=True)
class Circle:
    """Level set of the self-distance to ``center`` at value ``radius``."""

    center: Point
    radius: float
    space: SMetricSpace

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center, self.space.dimension))
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise ValueError("circle radius must be a positive finite real")

    def residual(self, x: PointLike) -> float:
        """Signed residual ``S(x,x,center) - radius``; negative is interior."""
        return self.space.self_distance(x, self.center) - self.radius

    def contains(self, x: PointLike, tol: float = 1e-9) -> bool:
        return abs(self.residual(x)) <= tol


@dataclass(frozen=True)
class ClosedBall:
    """Sublevel set ``{x : S(x,x,center) <= radius}``."""

    center: Point
    radius: float
    space: SMetricSpace

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center, self.space.dimension))
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise ValueError("ball radius must be a positive finite real")

    def residual(self, x: PointLike) -> float:
        return self.space.self_distance(x, self.center) - self.radius

    def contains(self, x: PointLike, tol: float = 1e-9) -> bool:
        return self.residual(x) <= tol


def circle_membership(circle: Circle, x: PointLike, tol: float = 1e-9) -> tuple[bool, float]:
    """Membership verdict plus the signed residual classifying in/exterior."""
    residual = circle.residual(x)
    return abs(residual) <= tol, residual


FINITE = "finite"
TRACED = "traced"
EMPTY = "empty"


@dataclass(frozen=True)
class CircleSolution:
    """Concrete representation of a circle: a finite set or a traced cloud."""

    kind: str  # "finite" | "traced" | "empty"
    points: tuple[Point, ...]
    residuals: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.points)


# Families whose 1D self-distance reduces to 2|x - center|, giving the exact
# two-point solution {center - r/2, center + r/2}.
_EXACT_1D_FAMILIES = ("usual1d", "symskew1d", "generated:abs")


def _supports_exact_1d(space: SMetricSpace) -> bool:
    if space.family in _EXACT_1D_FAMILIES:
        return True
    return space.family == "generated:euclidean" and space.dimension == 1


def solve_circle_1d(space: SMetricSpace, center: PointLike, radius: float) -> CircleSolution:
    """Exact solution set of ``S(x,x,center) = radius`` on the line."""
    if space.dimension != 1:
        raise UnsupportedFamilyError("solve_circle_1d needs a one-dimensional space")
    if not _supports_exact_1d(space):
        raise UnsupportedFamilyError(
            f"family {space.family!r} has no 2|x - center| closed form; "
            "sample membership residuals on a grid instead"
        )
    if not (radius > 0.0 and math.isfinite(radius)):
        raise ValueError("radius must be a positive finite real")
    c = as_point(center, 1)
    pts = ((c[0] - radius / 2.0,), (c[0] + radius / 2.0,))
    residuals = tuple(space.self_distance(p, c) - radius for p in pts)
    return CircleSolution(kind=FINITE, points=pts, residuals=residuals)


def _validate_window(window: Window, dimension: int) -> list[tuple[float, float]]:
    axes = [(float(lo), float(hi)) for lo, hi in window]
    if len(axes) != dimension:
        raise ValueError(f"window has {len(axes)} axes, expected {dimension}")
    for lo, hi in axes:
        if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
            raise ValueError("window axes must be finite with positive extent")
    return axes


def trace_circle_2d(
    space: SMetricSpace,
    center: PointLike,
    radius: float,
    window: Window,
    resolution: int = DEFAULT_RESOLUTION,
    band_tol: float = DEFAULT_BAND_TOL,
    max_bisect: int = 200,
) -> CircleSolution:
    """Trace the residual zero set over a grid window.

    Grid nodes already inside the residual band are emitted as-is; each grid
    edge whose endpoint residuals have strictly opposite signs is refined by
    bisection until the midpoint residual enters the band.  A sign change
    that never converges into the band (a jump discontinuity rather than a
    crossing) emits nothing, so every returned point genuinely satisfies
    ``|residual| <= band_tol``.  The cloud is deduplicated and returned in
    lexicographic order, so parallel and serial evaluation would produce
    identical output.
    """
    if space.dimension != 2:
        raise UnsupportedFamilyError("trace_circle_2d needs a two-dimensional space")
    if resolution < 8:
        raise ValueError("resolution must be >= 8")
    if not (radius > 0.0 and math.isfinite(radius)):
        raise ValueError("radius must be a positive finite real")
    (x_lo, x_hi), (y_lo, y_hi) = _validate_window(window, 2)
    c = as_point(center, 2)
    self_distance = space.self_distance_fn(c)

    def residual_at(p: Point) -> float:
        return self_distance(p) - radius

    hx = (x_hi - x_lo) / resolution
    hy = (y_hi - y_lo) / resolution
    xs = [x_lo + i * hx for i in range(resolution + 1)]
    ys = [y_lo + j * hy for j in range(resolution + 1)]
    values = [[residual_at((x, y)) for y in ys] for x in xs]

    found: dict[Point, float] = {}

    def emit(p: Point, value: float) -> None:
        found.setdefault(p, value)

    def refine(pa: Point, pb: Point, va: float, vb: float) -> None:
        for _ in range(max_bisect):
            pm = ((pa[0] + pb[0]) / 2.0, (pa[1] + pb[1]) / 2.0)
            vm = residual_at(pm)
            if abs(vm) <= band_tol:
                emit(pm, vm)
                return
            if (vm > 0.0) == (va > 0.0):
                pa, va = pm, vm
            else:
                pb, vb = pm, vm
        # the edge straddles a jump, not a crossing: nothing lies in the band

    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            v = values[i][j]
            if abs(v) <= band_tol:
                emit((x, y), v)
            if i + 1 <= resolution:
                vr = values[i + 1][j]
                if v * vr < 0.0:
                    refine((x, y), (xs[i + 1], y), v, vr)
            if j + 1 <= resolution:
                vu = values[i][j + 1]
                if v * vu < 0.0:
                    refine((x, y), (x, ys[j + 1]), v, vu)

    pts = sorted(found)
    if not pts:
        return CircleSolution(kind=EMPTY, points=(), residuals=())
    return CircleSolution(
        kind=TRACED,
        points=tuple(pts),
        residuals=tuple(found[p] for p in pts),
    )


def diameter(space: SMetricSpace, points: Sequence[PointLike]) -> float:
    """Largest self-distance over pairs; 0 for a singleton."""
    pts = [as_point(p, space.dimension) for p in points]
    if not pts:
        raise ValueError("diameter needs a nonempty point set")
    best = 0.0
    for a, b in itertools.combinations(pts, 2):
        best = max(best, space.self_distance(a, b))
    return best


@dataclass(frozen=True)
class OrbitSet:
    """Forward iterates of a point under a self-map, with stopping metadata.

    ``points`` holds the distinct iterates (first application onward).
    ``cycle_found`` means iteration closed on an earlier iterate, which is
    the only way boundedness is actually established; ``escaped`` means a
    coordinate left the escape bound, and the diameter is reported infinite.
    """

    seed: Point
    points: tuple[Point, ...]
    cycle_found: bool
    escaped: bool
    diameter: float

    @property
    def bounded(self) -> bool:
        return self.cycle_found

    @property
    def truncated(self) -> bool:
        return not (self.cycle_found or self.escaped)


def orbit(
    step: Callable[[Point], Point],
    seed: PointLike,
    space: SMetricSpace,
    n_max: int = DEFAULT_N_MAX,
    escape_bound: float = DEFAULT_ESCAPE_BOUND,
    cycle_tol: float = DEFAULT_CYCLE_TOL,
) -> OrbitSet:
    """Collect iterates ``step^n(seed)`` for n = 1..n_max with early stopping."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    start = as_point(seed, space.dimension)
    pts: list[Point] = []
    current = start
    escaped = False
    cycle_found = False
    for _ in range(n_max):
        current = as_point(step(current), space.dimension)
        if any(abs(c) > escape_bound for c in current):
            escaped = True
            break
        if any(point_distance(current, p) <= cycle_tol for p in pts):
            cycle_found = True
            break
        pts.append(current)
    if escaped:
        diam = math.inf
    elif pts:
        diam = diameter(space, pts)
    else:
        diam = 0.0
    return OrbitSet(
        seed=start,
        points=tuple(pts),
        cycle_found=cycle_found,
        escaped=escaped,
        diameter=diam,
    )
