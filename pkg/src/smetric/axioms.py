"""Sampled verification (and falsification) of the S-metric axioms.

Two defining conditions are checked: the value vanishes exactly on the
diagonal (both directions, plus nonnegativity), and the ternary triangle
inequality ``S(x,y,z) <= S(x,x,a) + S(y,y,a) + S(z,z,a)`` holds for every
choice of pivot ``a``.  The two-point symmetry ``S(x,x,y) = S(y,y,x)`` is a
consequence for genuine S-metrics and gets its own checker so user-supplied
DSL candidates can be falsified on concrete pairs.

Checks over a finite sample enumerate triples/quadruples exhaustively while
the instance count stays under ``budget``; beyond that a seeded uniform
subsample of ``budget`` instances is used, so results are deterministic and
runtime stays bounded.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .spaces import Point, PointLike, SMetricSpace, as_point, point_distance

AXIOM_NONNEG = "nonneg"
AXIOM_ZERO_IMPLIES_EQUAL = "zero_implies_equal"
AXIOM_EQUAL_IMPLIES_ZERO = "equal_implies_zero"
AXIOM_TRIANGLE = "triangle"
AXIOM_SYMMETRY = "symmetry"

DEFAULT_BUDGET = 10**6
DEFAULT_SEED = 0


@dataclass(frozen=True)
class Violation:
    """One falsified instance: the points involved and both sides."""

    axiom: str
    points: tuple[Point, ...]
    lhs: float
    rhs: float


@dataclass(frozen=True)
class AxiomReport:
    n_trials: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _coerce_sample(space: SMetricSpace, sample: Sequence[PointLike]) -> list[Point]:
    pts = [as_point(p, space.dimension) for p in sample]
    if not pts:
        raise ValueError("sample must be nonempty")
    return pts


def _all_close(pts: Sequence[Point], tol: float) -> bool:
    first = pts[0]
    return all(point_distance(first, p) <= tol for p in pts[1:])


def _index_tuples(n: int, arity: int, budget: int, seed: int):
    """All index tuples when n**arity fits the budget, else a seeded subsample."""
    total = n**arity
    if total <= budget:
        return itertools.product(range(n), repeat=arity), total
    rng = random.Random(seed)
    return (tuple(rng.randrange(n) for _ in range(arity)) for _ in range(budget)), budget


def _check_triple(space, x, y, z, tol, point_tol, out: list[Violation]):
    value = space.evaluate(x, y, z)
    if value < -tol:
        out.append(Violation(AXIOM_NONNEG, (x, y, z), value, 0.0))
        return
    equal = _all_close((x, y, z), point_tol)
    if equal and value > tol:
        out.append(Violation(AXIOM_EQUAL_IMPLIES_ZERO, (x, y, z), value, 0.0))
    elif not equal and abs(value) <= tol:
        out.append(Violation(AXIOM_ZERO_IMPLIES_EQUAL, (x, y, z), value, 0.0))


def _check_quadruple(space, x, y, z, a, tol, out: list[Violation]):
    lhs = space.evaluate(x, y, z)
    rhs = space.self_distance(x, a) + space.self_distance(y, a) + space.self_distance(z, a)
    if lhs > rhs + tol:
        out.append(Violation(AXIOM_TRIANGLE, (x, y, z, a), lhs, rhs))


def check_axioms(
    space: SMetricSpace,
    sample: Sequence[PointLike],
    tol: float = 1e-9,
    *,
    point_tol: float = 1e-7,
    budget: int = DEFAULT_BUDGET,
    seed: int = DEFAULT_SEED,
) -> AxiomReport:
    """Check both defining axioms over a finite sample.

    The diagonal condition is checked in both directions with a separate
    coordinate tolerance ``point_tol``, decoupling value noise from
    coordinate noise.
    """
    pts = _coerce_sample(space, sample)
    n = len(pts)
    violations: list[Violation] = []
    triples, n_triples = _index_tuples(n, 3, budget, seed)
    for i, j, k in triples:
        _check_triple(space, pts[i], pts[j], pts[k], tol, point_tol, violations)
    quadruples, n_quads = _index_tuples(n, 4, budget, seed)
    for i, j, k, l in quadruples:
        _check_quadruple(space, pts[i], pts[j], pts[k], pts[l], tol, violations)
    violations.sort(key=lambda v: (v.axiom, v.points))
    return AxiomReport(n_trials=n_triples + n_quads, violations=tuple(violations))


def check_symmetry(
    space: SMetricSpace,
    sample: Sequence[PointLike],
    tol: float = 1e-9,
) -> AxiomReport:
    """Check ``|S(x,x,y) - S(y,y,x)| <= tol`` over all pairs in the sample."""
    pts = _coerce_sample(space, sample)
    violations: list[Violation] = []
    n_trials = 0
    for x, y in itertools.combinations_with_replacement(pts, 2):
        n_trials += 1
        lhs = space.self_distance(x, y)
        rhs = space.self_distance(y, x)
        if abs(lhs - rhs) > tol:
            violations.append(Violation(AXIOM_SYMMETRY, (x, y), lhs, rhs))
    violations.sort(key=lambda v: (v.axiom, v.points))
    return AxiomReport(n_trials=n_trials, violations=tuple(violations))


# --- randomized fuzzing --------------------------------------------------------


def random_points(
    dimension: int,
    count: int,
    lo: float,
    hi: float,
    rng: random.Random,
) -> list[Point]:
    return [tuple(rng.uniform(lo, hi) for _ in range(dimension)) for _ in range(count)]


def fuzz_axioms(
    space: SMetricSpace,
    trials: int,
    *,
    lo: float = -3.0,
    hi: float = 3.0,
    seed: int = DEFAULT_SEED,
    tol: float = 1e-9,
    point_tol: float = 1e-7,
) -> AxiomReport:
    """Draw ``trials`` random triples and quadruples and check both axioms.

    A fraction of trials deliberately repeats coordinates (y = x, z = x, or
    a full diagonal triple) so both directions of the vanishing condition
    actually get exercised.
    """
    rng = random.Random(seed)
    violations: list[Violation] = []
    for _ in range(trials):
        x, y, z = random_points(space.dimension, 3, lo, hi, rng)
        pattern = rng.randrange(4)
        if pattern == 1:
            y = x
        elif pattern == 2:
            z = y
        elif pattern == 3:
            y = x
            z = x
        _check_triple(space, x, y, z, tol, point_tol, violations)
    for _ in range(trials):
        x, y, z, a = random_points(space.dimension, 4, lo, hi, rng)
        _check_quadruple(space, x, y, z, a, tol, violations)
    violations.sort(key=lambda v: (v.axiom, v.points))
    return AxiomReport(n_trials=2 * trials, violations=tuple(violations))


def fuzz_symmetry(
    space: SMetricSpace,
    trials: int,
    *,
    lo: float = -3.0,
    hi: float = 3.0,
    seed: int = DEFAULT_SEED,
    tol: float = 1e-9,
) -> AxiomReport:
    """Draw ``trials`` random pairs and check the two-point symmetry."""
    rng = random.Random(seed)
    violations: list[Violation] = []
    for _ in range(trials):
        x, y = random_points(space.dimension, 2, lo, hi, rng)
        lhs = space.self_distance(x, y)
        rhs = space.self_distance(y, x)
        if abs(lhs - rhs) > tol:
            violations.append(Violation(AXIOM_SYMMETRY, (x, y), lhs, rhs))
    violations.sort(key=lambda v: (v.axiom, v.points))
    return AxiomReport(n_trials=trials, violations=tuple(violations))
