"""Executable checkers for the fixed-circle conditions.

Each checker evaluates one inequality family over concrete samples and
returns a :class:`ConditionReport` with honest quantifier semantics: a
``Holds`` verdict is only issued when the quantified set was checked
exhaustively (finite analytic circles); sampled continuous domains get
``HoldsOnSample``; an empty domain is ``Vacuous`` rather than vacuously
true.  ``Fails`` always carries at least one concrete witness.

Condition ids (the wire tokens used in reports and scenario files):

========== ===========================================================
thm1_S1    S(x,x,Tx) <= phi(x) + phi(Tx) - 2r          on the circle
thm1_S2    S(x,x,Tx) + S(Tx,Tx,x0) <= r                on the circle
thm2_S1    S(x,x,Tx) <= phi(x) - phi(Tx)               on the circle
thm2_S2    h*S(x,x,Tx) + S(Tx,Tx,x0) >= r              on the circle
I_S        S(x,x,Tx) <= (phi(x) - phi(Tx)) / h         on the whole space
Rhoades_S25   S(Tx,Tx,Ty) < max of five cross-distances   (strict)
Diam_S25a  S(Tx,Tx,Ty) < diam(U_x u U_y)               (strict, orbits)
eqn1       S(x,x,Tx) < R_S(x, x0) where displaced      (strict)
eqn2       S(Tx,Tx,x0) = r on the candidate circle     (equality)
========== ===========================================================

where ``phi(x) = S(x,x,x0)`` is the self-distance to the chosen center and
``R_S`` is the five-term maximum from the strict contraction condition.

Margin conventions: for ``<=`` conditions the margin is ``rhs - lhs``; for
``>=`` it is ``lhs - rhs``; for equalities it is ``-|lhs - rhs|``.  A
non-strict condition is satisfied when the margin is at least ``-tol``; a
strict one needs margin strictly above ``strict_tol`` (default 0, so ties
are violations).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import RadiusUndefinedError
from .geometry import (
    DEFAULT_CYCLE_TOL,
    DEFAULT_ESCAPE_BOUND,
    DEFAULT_N_MAX,
    Circle,
    diameter,
    orbit,
    solve_circle_1d,
)
from .maps import PiecewiseMap, fixed_point_set
from .spaces import Point, PointLike, SMetricSpace, as_point, point_distance

CONDITION_IDS = (
    "thm1_S1",
    "thm1_S2",
    "thm2_S1",
    "thm2_S2",
    "I_S",
    "Rhoades_S25",
    "Diam_S25a",
    "eqn1",
    "eqn2",
)

HOLDS = "Holds"
FAILS = "Fails"
HOLDS_ON_SAMPLE = "HoldsOnSample"
VACUOUS = "Vacuous"

DEFAULT_MAX_WITNESSES = 8


@dataclass(frozen=True)
class Witness:
    points: tuple[Point, ...]
    lhs: float
    rhs: float
    margin: float

    def as_dict(self) -> dict:
        return {
            "points": [list(p) for p in self.points],
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
        }


@dataclass(frozen=True)
class ConditionReport:
    condition_id: str
    verdict: str
    h_param: float | None
    witnesses: tuple[Witness, ...]
    sample_descriptor: str

    @property
    def holds(self) -> bool:
        return self.verdict in (HOLDS, HOLDS_ON_SAMPLE)

    def as_dict(self) -> dict:
        return {
            "condition_id": self.condition_id,
            "verdict": self.verdict,
            "h_param": self.h_param,
            "witnesses": [w.as_dict() for w in self.witnesses],
            "sample_descriptor": self.sample_descriptor,
        }


@dataclass(frozen=True)
class FixedCircleVerdict:
    circle: Circle
    fixed: bool
    checked_points: int
    max_displacement: float
    ball_fixed: bool | None = None

    def as_dict(self) -> dict:
        return {
            "circle": {"center": list(self.circle.center), "radius": self.circle.radius},
            "fixed": self.fixed,
            "checked_points": self.checked_points,
            "max_displacement": self.max_displacement,
            "ball_fixed": self.ball_fixed,
        }


Instance = tuple[tuple[Point, ...], float, float]


def _margin(relation: str, lhs: float, rhs: float) -> float:
    if relation in ("le", "lt"):
        return rhs - lhs
    if relation == "ge":
        return lhs - rhs
    if relation == "eq":
        return -abs(lhs - rhs)
    raise ValueError(f"unknown relation {relation!r}")


def _build_report(
    condition_id: str,
    relation: str,
    instances: Sequence[Instance],
    *,
    tol: float,
    strict_tol: float = 0.0,
    exhaustive: bool,
    descriptor: str,
    h_param: float | None = None,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> ConditionReport:
    if not instances:
        return ConditionReport(condition_id, VACUOUS, h_param, (), descriptor)
    scored = [
        Witness(points, lhs, rhs, _margin(relation, lhs, rhs)) for points, lhs, rhs in instances
    ]
    if relation == "lt":
        violations = [w for w in scored if w.margin <= strict_tol]
    else:
        violations = [w for w in scored if w.margin < -tol]
    if violations:
        violations.sort(key=lambda w: (w.margin, w.points))
        return ConditionReport(
            condition_id, FAILS, h_param, tuple(violations[:max_witnesses]), descriptor
        )
    worst = min(scored, key=lambda w: (w.margin, w.points))
    verdict = HOLDS if exhaustive else HOLDS_ON_SAMPLE
    return ConditionReport(condition_id, verdict, h_param, (worst,), descriptor)


def _coerce_circle_sample(
    circle: Circle, sample: Sequence[PointLike], tol: float
) -> list[Point]:
    pts = [as_point(p, circle.space.dimension) for p in sample]
    for p in pts:
        residual = circle.residual(p)
        if abs(residual) > tol:
            raise ValueError(
                f"sample point {p!r} is off the circle (residual {residual!r} beyond tol {tol!r})"
            )
    return pts


def _fixed_circle_verdict(
    circle: Circle, pts: Sequence[Point], displacements: Sequence[float], tol: float
) -> FixedCircleVerdict:
    max_disp = max(displacements) if displacements else 0.0
    return FixedCircleVerdict(
        circle=circle,
        fixed=bool(pts) and max_disp <= tol,
        checked_points=len(pts),
        max_displacement=max_disp,
    )


# --- the two existence condition pairs -----------------------------------------


def check_thm1(
    mapping: PiecewiseMap,
    circle: Circle,
    sample: Sequence[PointLike],
    tol: float = 1e-9,
    *,
    exhaustive: bool = False,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> tuple[ConditionReport, ConditionReport, FixedCircleVerdict]:
    """Check ``thm1_S1`` and ``thm1_S2`` at every sampled circle point.

    Also reports, via the verdict, whether the sampled points were actually
    fixed; when both conditions hold on the full circle that is forced.
    """
    space = circle.space
    x0 = circle.center
    r = circle.radius
    pts = _coerce_circle_sample(circle, sample, tol)
    descriptor = f"{len(pts)} circle point(s), exhaustive={exhaustive}"
    s1: list[Instance] = []
    s2: list[Instance] = []
    displacements = []
    for x in pts:
        tx = mapping.apply(x)
        disp = space.self_distance(x, tx)
        phi_x = space.self_distance(x, x0)
        phi_tx = space.self_distance(tx, x0)
        displacements.append(disp)
        s1.append(((x,), disp, phi_x + phi_tx - 2.0 * r))
        s2.append(((x,), disp + phi_tx, r))
    r1 = _build_report(
        "thm1_S1", "le", s1, tol=tol, exhaustive=exhaustive, descriptor=descriptor,
        max_witnesses=max_witnesses,
    )
    r2 = _build_report(
        "thm1_S2", "le", s2, tol=tol, exhaustive=exhaustive, descriptor=descriptor,
        max_witnesses=max_witnesses,
    )
    return r1, r2, _fixed_circle_verdict(circle, pts, displacements, tol)


def check_thm2(
    mapping: PiecewiseMap,
    circle: Circle,
    sample: Sequence[PointLike],
    h: float = 0.0,
    tol: float = 1e-9,
    *,
    exhaustive: bool = False,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> tuple[ConditionReport, ConditionReport, FixedCircleVerdict]:
    """Check ``thm2_S1`` and ``thm2_S2`` (with parameter ``h in [0,1)``)."""
    if not 0.0 <= h < 1.0:
        raise ValueError("h must lie in [0, 1)")
    space = circle.space
    x0 = circle.center
    r = circle.radius
    pts = _coerce_circle_sample(circle, sample, tol)
    descriptor = f"{len(pts)} circle point(s), exhaustive={exhaustive}"
    s1: list[Instance] = []
    s2: list[Instance] = []
    displacements = []
    for x in pts:
        tx = mapping.apply(x)
        disp = space.self_distance(x, tx)
        phi_x = space.self_distance(x, x0)
        phi_tx = space.self_distance(tx, x0)
        displacements.append(disp)
        s1.append(((x,), disp, phi_x - phi_tx))
        s2.append(((x,), h * disp + phi_tx, r))
    r1 = _build_report(
        "thm2_S1", "le", s1, tol=tol, exhaustive=exhaustive, descriptor=descriptor,
        h_param=h, max_witnesses=max_witnesses,
    )
    r2 = _build_report(
        "thm2_S2", "ge", s2, tol=tol, exhaustive=exhaustive, descriptor=descriptor,
        h_param=h, max_witnesses=max_witnesses,
    )
    return r1, r2, _fixed_circle_verdict(circle, pts, displacements, tol)


def sweep_thm2_h(
    mapping: PiecewiseMap,
    circle: Circle,
    sample: Sequence[PointLike],
    h_values: Sequence[float],
    tol: float = 1e-9,
    **kwargs,
) -> list[tuple[float, ConditionReport, ConditionReport, FixedCircleVerdict]]:
    """Run :func:`check_thm2` over a grid of ``h`` values."""
    return [(h, *check_thm2(mapping, circle, sample, h, tol, **kwargs)) for h in h_values]


# --- identity characterization -------------------------------------------------


def check_identity_condition(
    mapping: PiecewiseMap,
    space: SMetricSpace,
    center: PointLike,
    sample: Sequence[PointLike],
    h: float = 3.0,
    tol: float = 1e-9,
    *,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> tuple[ConditionReport, bool]:
    """Check ``I_S`` over the whole sample (h > 2) and report pointwise fixedness.

    For a genuine S-metric the condition at a single point already forces
    that point to be fixed, so whenever the report holds the boolean must
    come back true; callers exercise exactly that implication.
    """
    if not h > 2.0:
        raise ValueError("h must be > 2")
    x0 = as_point(center, space.dimension)
    pts = [as_point(p, space.dimension) for p in sample]
    instances: list[Instance] = []
    max_disp = 0.0
    for x in pts:
        tx = mapping.apply(x)
        disp = space.self_distance(x, tx)
        max_disp = max(max_disp, disp)
        phi_x = space.self_distance(x, x0)
        phi_tx = space.self_distance(tx, x0)
        instances.append(((x,), disp, (phi_x - phi_tx) / h))
    report = _build_report(
        "I_S", "le", instances, tol=tol, exhaustive=False,
        descriptor=f"{len(pts)} sample point(s), center {list(x0)}",
        h_param=h, max_witnesses=max_witnesses,
    )
    return report, max_disp <= tol


# --- uniqueness conditions -------------------------------------------------------


def compute_R_S(mapping: PiecewiseMap, x: PointLike, y: PointLike, space: SMetricSpace) -> float:
    """Five-term maximum forming the right side of the strict contraction."""
    px = as_point(x, space.dimension)
    py = as_point(y, space.dimension)
    tx = mapping.apply(px)
    ty = mapping.apply(py)
    return max(
        space.evaluate(px, px, py),
        space.evaluate(tx, tx, px),
        space.evaluate(ty, ty, py),
        space.evaluate(ty, ty, px),
        space.evaluate(tx, tx, py),
    )


def check_rhoades_uniqueness(
    mapping: PiecewiseMap,
    circle: Circle,
    circle_sample: Sequence[PointLike],
    off_circle_sample: Sequence[PointLike],
    tol: float = 1e-9,
    strict_tol: float = 0.0,
    *,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> ConditionReport:
    """Strict five-term contraction over pairs (x on circle, y off circle).

    Ties count as violations with margin 0; the uniqueness argument needs
    strictness, so a single non-strict pair already refutes it.
    """
    space = circle.space
    xs = _coerce_circle_sample(circle, circle_sample, tol)
    skipped_on = 0
    skipped_coincident = 0
    instances: list[Instance] = []
    tx_cache = {x: mapping.apply(x) for x in xs}
    for raw in off_circle_sample:
        y = as_point(raw, space.dimension)
        if abs(circle.residual(y)) <= tol:
            skipped_on += 1
            continue
        ty = mapping.apply(y)
        for x in xs:
            if point_distance(x, y) <= tol:
                skipped_coincident += 1
                continue
            tx = tx_cache[x]
            lhs = space.evaluate(tx, tx, ty)
            rhs = max(
                space.evaluate(x, x, y),
                space.evaluate(tx, tx, x),
                space.evaluate(ty, ty, y),
                space.evaluate(ty, ty, x),
                space.evaluate(tx, tx, y),
            )
            instances.append(((x, y), lhs, rhs))
    descriptor = (
        f"{len(xs)} circle point(s) x {len(off_circle_sample)} candidate(s); "
        f"skipped {skipped_on} on-circle, {skipped_coincident} coincident"
    )
    return _build_report(
        "Rhoades_S25", "lt", instances, tol=tol, strict_tol=strict_tol,
        exhaustive=False, descriptor=descriptor, max_witnesses=max_witnesses,
    )


def check_diameter_uniqueness(
    mapping: PiecewiseMap,
    circle: Circle,
    circle_sample: Sequence[PointLike],
    off_circle_sample: Sequence[PointLike],
    n_max: int = DEFAULT_N_MAX,
    tol: float = 1e-9,
    strict_tol: float = 0.0,
    *,
    escape_bound: float = DEFAULT_ESCAPE_BOUND,
    cycle_tol: float = DEFAULT_CYCLE_TOL,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> ConditionReport:
    """Strict orbit-diameter contraction over pairs (x on circle, y off).

    Pairs whose orbits never close up within ``n_max`` iterations (or that
    escape) have unverified boundedness; they are excluded and counted as
    precondition failures in the descriptor rather than condition failures.
    """
    space = circle.space
    xs = _coerce_circle_sample(circle, circle_sample, tol)
    orbits: dict[Point, object] = {}

    def orbit_of(p: Point):
        if p not in orbits:
            orbits[p] = orbit(
                mapping.apply, p, space,
                n_max=n_max, escape_bound=escape_bound, cycle_tol=cycle_tol,
            )
        return orbits[p]

    skipped_on = 0
    skipped_coincident = 0
    unbounded_pairs = 0
    instances: list[Instance] = []
    for raw in off_circle_sample:
        y = as_point(raw, space.dimension)
        if abs(circle.residual(y)) <= tol:
            skipped_on += 1
            continue
        oy = orbit_of(y)
        ty = mapping.apply(y)
        for x in xs:
            if point_distance(x, y) <= tol:
                skipped_coincident += 1
                continue
            ox = orbit_of(x)
            if not (ox.bounded and oy.bounded):
                unbounded_pairs += 1
                continue
            tx = mapping.apply(x)
            lhs = space.evaluate(tx, tx, ty)
            rhs = diameter(space, list(ox.points) + list(oy.points))
            instances.append(((x, y), lhs, rhs))
    descriptor = (
        f"{len(xs)} circle point(s) x {len(off_circle_sample)} candidate(s); "
        f"skipped {skipped_on} on-circle, {skipped_coincident} coincident; "
        f"{unbounded_pairs} pair(s) dropped with unverified orbit bounds (n_max={n_max})"
    )
    return _build_report(
        "Diam_S25a", "lt", instances, tol=tol, strict_tol=strict_tol,
        exhaustive=False, descriptor=descriptor, max_witnesses=max_witnesses,
    )


# --- minimal-radius existence ------------------------------------------------------


@dataclass(frozen=True)
class Thm6Result:
    """Outcome of the minimal-displacement fixed-circle check."""

    radius: float
    radius_exact: bool  # displacement constant on the sampled non-fixed set
    eqn1: ConditionReport
    eqn2: ConditionReport
    inner_eqn2: ConditionReport
    verdict: FixedCircleVerdict

    def as_dict(self) -> dict:
        return {
            "radius": self.radius,
            "radius_exact": self.radius_exact,
            "eqn1": self.eqn1.as_dict(),
            "eqn2": self.eqn2.as_dict(),
            "inner_eqn2": self.inner_eqn2.as_dict(),
            "verdict": self.verdict.as_dict(),
        }


def check_thm6(
    mapping: PiecewiseMap,
    space: SMetricSpace,
    center: PointLike,
    domain_sample: Sequence[PointLike],
    circle_sample: Sequence[PointLike] | None = None,
    tol: float = 1e-9,
    strict_tol: float = 0.0,
    *,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> Thm6Result:
    """Minimal displacement radius, ``eqn1``/``eqn2``, and ball fixedness.

    ``r`` is the smallest displacement over sampled non-fixed points; it is
    flagged exact only when the displacement is constant (within tol) on
    that set, otherwise it is a sample-dependent lower estimate.  The
    equality ``eqn2`` is additionally evaluated in its inner-circle variant
    (radius ``phi(x)`` in place of ``r`` for sampled interior points) and
    reported separately.
    """
    if not domain_sample:
        raise ValueError("domain_sample must be nonempty")
    x0 = as_point(center, space.dimension)
    pts = [as_point(p, space.dimension) for p in domain_sample]
    images = {p: mapping.apply(p) for p in pts}
    displacement = {p: space.evaluate(images[p], images[p], p) for p in pts}
    non_fixed = [p for p in pts if displacement[p] > tol]
    if not non_fixed:
        raise RadiusUndefinedError("r undefined (map is identity on sample)")
    r = min(displacement[p] for p in non_fixed)
    r_max = max(displacement[p] for p in non_fixed)
    radius_exact = (r_max - r) <= tol

    eqn1_instances: list[Instance] = [
        ((p,), space.self_distance(p, images[p]), compute_R_S(mapping, p, x0, space))
        for p in non_fixed
    ]
    eqn1 = _build_report(
        "eqn1", "lt", eqn1_instances, tol=tol, strict_tol=strict_tol, exhaustive=False,
        descriptor=f"{len(non_fixed)} sampled point(s) with positive displacement"
        + ("" if radius_exact else "; r is sample-approximate"),
        max_witnesses=max_witnesses,
    )

    circle = Circle(x0, r, space)
    exhaustive_circle = False
    if circle_sample is None:
        solution = solve_circle_1d(space, x0, r)  # raises for unsupported families
        circle_pts = list(solution.points)
        exhaustive_circle = True
    else:
        circle_pts = _coerce_circle_sample(circle, circle_sample, tol)

    circle_images = {p: images.get(p, mapping.apply(p)) for p in circle_pts}
    circle_disp = [space.self_distance(p, circle_images[p]) for p in circle_pts]
    eqn2_instances: list[Instance] = [
        ((p,), space.evaluate(circle_images[p], circle_images[p], x0), r) for p in circle_pts
    ]
    eqn2 = _build_report(
        "eqn2", "eq", eqn2_instances, tol=tol, exhaustive=exhaustive_circle,
        descriptor=f"{len(circle_pts)} circle point(s) at r={r!r}",
        max_witnesses=max_witnesses,
    )

    ball_pts = [p for p in pts if space.self_distance(p, x0) <= r + tol]
    ball_fixed = bool(ball_pts) and all(displacement[p] <= tol for p in ball_pts)

    inner_instances: list[Instance] = []
    for p in ball_pts:
        phi = space.self_distance(p, x0)
        if tol < phi < r - tol:
            tp = images[p]
            inner_instances.append(((p,), space.evaluate(tp, tp, x0), phi))
    inner_eqn2 = _build_report(
        "eqn2", "eq", inner_instances, tol=tol, exhaustive=False,
        descriptor="inner-circle variant: radius phi(x) for sampled interior points",
        max_witnesses=max_witnesses,
    )

    verdict = FixedCircleVerdict(
        circle=circle,
        fixed=bool(circle_pts) and max(circle_disp, default=0.0) <= tol,
        checked_points=len(circle_pts),
        max_displacement=max(circle_disp, default=0.0),
        ball_fixed=ball_fixed,
    )
    return Thm6Result(
        radius=r,
        radius_exact=radius_exact,
        eqn1=eqn1,
        eqn2=eqn2,
        inner_eqn2=inner_eqn2,
        verdict=verdict,
    )


# --- brute-force discovery ----------------------------------------------------------


def discover_fixed_circles(
    mapping: PiecewiseMap,
    space: SMetricSpace,
    domain_sample: Sequence[PointLike],
    centers: Sequence[PointLike],
    tol: float = 1e-9,
) -> list[FixedCircleVerdict]:
    """Brute-force fixed circles: radii come from the sampled fixed-point set.

    For each candidate center the distinct self-distances of fixed points
    are clustered within ``tol``; a radius is reported only when *every*
    sampled point at that self-distance is fixed, so the output
    cross-validates against the fixed-point oracle by construction.
    """
    pts = [as_point(p, space.dimension) for p in domain_sample]
    fixed = fixed_point_set(mapping, pts, space, tol)
    fixed_set = set(fixed)
    displacement = {p: space.self_distance(p, mapping.apply(p)) for p in pts}
    results: list[FixedCircleVerdict] = []
    for raw_center in centers:
        c = as_point(raw_center, space.dimension)
        values = sorted({space.self_distance(p, c) for p in fixed})
        radii: list[float] = []
        for v in values:
            if radii and v - radii[-1] <= tol:
                continue
            radii.append(v)
        for r in radii:
            if r <= tol:
                continue
            on_circle = [q for q in pts if abs(space.self_distance(q, c) - r) <= tol]
            if on_circle and all(q in fixed_set for q in on_circle):
                results.append(
                    FixedCircleVerdict(
                        circle=Circle(c, r, space),
                        fixed=True,
                        checked_points=len(on_circle),
                        max_displacement=max(displacement[q] for q in on_circle),
                    )
                )
    results.sort(key=lambda v: (v.circle.center, v.circle.radius))
    return results
