"""Randomized piecewise maps for counterexample hunting.

The generator stays inside the total fragment of the expression language
(no division, logarithm or exponential), so every generated map can be
applied anywhere without domain errors and values stay small on desk-scale
samples.
"""

from __future__ import annotations

import random

from .axioms import random_points
from .expressions import Binary, Call, Expr, Var, const
from .maps import (
    AbsAtLeast,
    AbsLessThan,
    CoordEquals,
    InFiniteSet,
    Otherwise,
    PiecewiseMap,
    Predicate,
    Rule,
)
from .spaces import SMetricSpace, as_point

_SAFE_OPS = ("+", "-", "*")


def _var_names(dimension: int) -> list[str]:
    if dimension == 1:
        return ["x"]
    return [f"x{i}" for i in range(1, dimension + 1)]


def random_expr(rng: random.Random, dimension: int, depth: int = 3) -> Expr:
    """Random expression over the map variables using only total operations."""
    if depth <= 0 or rng.random() < 0.35:
        if rng.random() < 0.55:
            return Var(rng.choice(_var_names(dimension)))
        return const(round(rng.uniform(-4.0, 4.0), 2))
    roll = rng.random()
    if roll < 0.2:
        return Call("abs", random_expr(rng, dimension, depth - 1))
    op = rng.choice(_SAFE_OPS)
    return Binary(op, random_expr(rng, dimension, depth - 1), random_expr(rng, dimension, depth - 1))


def random_predicate(rng: random.Random, dimension: int) -> Predicate:
    roll = rng.random()
    if roll < 0.4:
        members = tuple(
            as_point([round(rng.uniform(-4.0, 4.0), 2) for _ in range(dimension)])
            for _ in range(rng.randrange(1, 4))
        )
        return InFiniteSet(members)
    if dimension == 1 and roll < 0.6:
        return AbsAtLeast(round(rng.uniform(0.5, 4.0), 2))
    if dimension == 1 and roll < 0.8:
        return AbsLessThan(round(rng.uniform(0.5, 4.0), 2))
    index = rng.randrange(dimension)
    return CoordEquals(index, round(rng.uniform(-4.0, 4.0), 2))


def random_piecewise_map(rng: random.Random, dimension: int = 1) -> PiecewiseMap:
    """Random map: up to two guarded rules plus a random (or identity) tail."""
    rules = []
    for _ in range(rng.randrange(0, 3)):
        exprs = tuple(random_expr(rng, dimension) for _ in range(dimension))
        rules.append(Rule(random_predicate(rng, dimension), exprs))
    if rng.random() < 0.3:
        names = _var_names(dimension)
        tail = tuple(Var(n) for n in names)
    else:
        tail = tuple(random_expr(rng, dimension) for _ in range(dimension))
    rules.append(Rule(Otherwise(), tail))
    return PiecewiseMap(tuple(rules), dimension, name="fuzzed")


def fuzz_identity_condition(
    space: SMetricSpace,
    trials: int = 10000,
    *,
    h: float = 3.0,
    points_per_map: int = 20,
    lo: float = -5.0,
    hi: float = 5.0,
    seed: int = 0,
    tol: float = 1e-9,
    fix_tol: float = 1e-7,
) -> tuple[int, list[tuple[PiecewiseMap, tuple[float, ...]]]]:
    """Hunt for points where the identity condition holds yet the point moves.

    For a genuine S-metric the condition at a point forces that point to be
    fixed, so the returned counterexample list must stay empty; ``fix_tol``
    absorbs the floating-point slack ``h*tol/(h-2)`` in that implication.
    """
    if not h > 2.0:
        raise ValueError("h must be > 2")
    rng = random.Random(seed)
    counterexamples = []
    checked = 0
    for _ in range(trials):
        mapping = random_piecewise_map(rng, space.dimension)
        center = as_point([rng.uniform(lo, hi) for _ in range(space.dimension)])
        for x in random_points(space.dimension, points_per_map, lo, hi, rng):
            checked += 1
            tx = mapping.apply(x)
            disp = space.self_distance(x, tx)
            bound = (space.self_distance(x, center) - space.self_distance(tx, center)) / h
            if disp <= bound + tol and disp > fix_tol:
                counterexamples.append((mapping, x))
    return checked, counterexamples
