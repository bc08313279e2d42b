"""Acceptance suite: one test per criterion, one printed verdict line each.

Expected values are frozen from independent oracles: hand evaluation of the
closed-form distances, the brute-force fixed-point scan, complex arithmetic
for the inversion map, and the analytic curve descriptions for the traced
figures.  Run with ``pytest tests/test_acceptance.py -v -s`` to see the
per-criterion lines.
"""

import math

from smetric.catalog import catalog, catalog_entry
from smetric.conditions import (
    check_identity_condition,
    check_rhoades_uniqueness,
    check_thm1,
    check_thm2,
    check_thm6,
    discover_fixed_circles,
)
from smetric.fuzzing import fuzz_identity_condition
from smetric.axioms import fuzz_axioms, fuzz_symmetry
from smetric.cli import main
from smetric.geometry import Circle, solve_circle_1d, trace_circle_2d
from smetric.maps import fixed_point_set, make_multi_circle_map, parse_map
from smetric.scenario import angular_circle_sample
from smetric.spaces import eval_s, make_space

USUAL = make_space("usual1d")
SKEW1 = make_space("symskew1d")
SKEW2 = make_space("symskew2d")
EXP2 = make_space("exp2d")


def _announce(number: int, label: str, ok: bool):
    print(f"ACCEPTANCE {number:02d} ({label}): {'PASS' if ok else 'FAIL'}")
    assert ok


def grid(lo, hi, step):
    return [(lo + i * step,) for i in range(int(round((hi - lo) / step)) + 1)]


def test_criterion_01_exact_circle_solving():
    cases = [
        (USUAL, 0.0, 2.0, (-1.0, 1.0)),
        (USUAL, 4.5, 11.0, (-1.0, 10.0)),
        (USUAL, 1.0, 2.0, (0.0, 2.0)),
        (SKEW1, 0.0, 3.0, (-1.5, 1.5)),
    ]
    ok = True
    for space, center, radius, expected in cases:
        solution = solve_circle_1d(space, center, radius)
        ok = ok and tuple(p[0] for p in solution.points) == expected
        ok = ok and all(abs(r) <= 1e-12 for r in solution.residuals)
    _announce(1, "exact circle solving", ok)


def test_criterion_02_verdict_matrix():
    mismatches = []
    for name in ("T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8"):
        entry = catalog_entry(name)
        circle = entry.test_circle
        if entry.space.dimension == 1:
            sample = solve_circle_1d(entry.space, circle.center, circle.radius).points
            exhaustive = True
        elif entry.space.family == "symskew2d":
            sample = trace_circle_2d(
                entry.space, circle.center, circle.radius, [(-1, 1), (-1, 1)],
                resolution=512, band_tol=1e-8,
            ).points
            exhaustive = False
        else:
            sample = trace_circle_2d(
                entry.space, circle.center, circle.radius, [(-4, 1), (-4, 1)],
                resolution=640, band_tol=1e-12,
            ).points
            exhaustive = False
        if entry.theorem == "thm1":
            r1, r2, _ = check_thm1(entry.map, circle, sample, exhaustive=exhaustive)
        else:
            r1, r2, _ = check_thm2(entry.map, circle, sample, h=entry.h, exhaustive=exhaustive)
        actual = {r1.condition_id: r1.holds, r2.condition_id: r2.holds}
        for condition_id, token in entry.expected:
            if actual[condition_id] != (token == "holds"):
                mismatches.append((name, condition_id, token, actual[condition_id]))
    print(f"  checked 8 mappings / 16 verdicts; mismatches: {mismatches}")
    _announce(2, "theorem-condition verdict matrix", not mismatches)


def test_criterion_03_minimal_radius_existence():
    entry = catalog_entry("outward_shift")
    result = check_thm6(entry.map, USUAL, (0.0,), grid(-6, 6, 0.25))
    ok = result.radius == 4.0 and result.radius_exact
    circle_xs = tuple(p[0] for p in solve_circle_1d(USUAL, 0.0, result.radius).points)
    ok = ok and circle_xs == (-2.0, 2.0) and result.verdict.fixed
    ok = ok and result.verdict.ball_fixed is True
    # every sampled ball point is fixed, every non-fixed point clears eqn1 strictly
    ball = [p for p in grid(-6, 6, 0.25) if USUAL.self_distance(p, (0.0,)) <= 4.0]
    displacements = [USUAL.self_distance(p, entry.map.apply(p)) for p in ball]
    ok = ok and max(displacements) == 0.0
    ok = ok and result.eqn1.verdict == "HoldsOnSample"
    ok = ok and all(w.margin > 0.0 for w in result.eqn1.witnesses)
    _announce(3, "minimal-radius fixed circle and ball", ok)


def test_criterion_04_converse_failure():
    entry = catalog_entry("ball_retraction")
    domain = grid(-2, 2, 0.125)
    result = check_thm6(entry.map, USUAL, (0.0,), domain)
    ok = result.eqn1.verdict == "Fails"
    found = discover_fixed_circles(entry.map, USUAL, domain, [(0.0,)])
    radii = [v.circle.radius for v in found]
    ok = ok and radii == [0.25, 0.5, 0.75, 1.0]
    ok = ok and all(v.fixed for v in found)
    _announce(4, "converse fails yet circles are fixed", ok)


def test_criterion_05_nonuniqueness_detection():
    t1 = catalog_entry("T1")
    found = discover_fixed_circles(t1.map, USUAL, grid(-12, 12, 0.25), [(0.0,), (4.5,)])
    ok = len(found) >= 2
    ok = ok and {(v.circle.center[0], v.circle.radius) for v in found} == {
        (0.0, 2.0),
        (4.5, 11.0),
    }
    circle = Circle((0.0,), 2.0, USUAL)
    sample = solve_circle_1d(USUAL, 0.0, 2.0).points
    report = check_rhoades_uniqueness(t1.map, circle, sample, [(10.0,)])
    ok = ok and report.verdict == "Fails"
    ok = ok and any(
        w.points == ((-1.0,), (10.0,)) and w.margin == 0.0 for w in report.witnesses
    )
    _announce(5, "non-uniqueness detected via strict-contraction tie", ok)


def test_criterion_06_multi_circle_constructor():
    two = make_multi_circle_map(
        (Circle((0.0,), 2.0, SKEW1), Circle((0.0,), 4.0, SKEW1)), 5.0
    )
    fixed = fixed_point_set(two, grid(-6, 6, 0.25), SKEW1)
    ok = [p for p in fixed if p != (5.0,)] == [(-2.0,), (-1.0,), (1.0,), (2.0,)]

    three = make_multi_circle_map(
        (
            Circle((0.0,), 1.0, SKEW1),
            Circle((0.0,), 2.0, SKEW1),
            Circle((0.0,), 3.0, SKEW1),
        ),
        5.0,
    )
    circle_points = []
    for radius in (1.0, 2.0, 3.0):
        circle_points.extend(solve_circle_1d(SKEW1, 0.0, radius).points)
    assert len(circle_points) == 6
    fixed3 = fixed_point_set(three, circle_points + grid(-4, 4, 0.5), SKEW1)
    ok = ok and all(p in fixed3 for p in circle_points)
    _announce(6, "multi-circle constructor generalizes", ok)


def test_criterion_07_identity_characterization():
    identity = parse_map("otherwise -> x", 1, name="identity")
    sample = grid(-5, 5, 0.01)
    assert len(sample) == 1001
    report, is_identity = check_identity_condition(identity, USUAL, (0.0,), sample)
    ok = report.holds and is_identity
    for x in sample:
        tx = identity.apply(x)
        lhs = USUAL.self_distance(x, tx)
        rhs = (USUAL.self_distance(x, (0.0,)) - USUAL.self_distance(tx, (0.0,))) / 3.0
        ok = ok and lhs == 0.0 and rhs == 0.0

    # every catalog mapping moves some point, and the condition sees it
    samples = {
        1: grid(-5, 5, 0.5),
        2: [(a, b) for a in (0.5, 1.0, 2.0) for b in (0.5, 1.0, 2.0)],
    }
    for entry in catalog():
        pts = samples[entry.space.dimension]
        report, _ = check_identity_condition(
            entry.map, entry.space, entry.test_circle.center, pts
        )
        ok = ok and report.verdict == "Fails" and len(report.witnesses) > 0

    checked, counterexamples = fuzz_identity_condition(
        USUAL, trials=10000, points_per_map=20, seed=7
    )
    print(f"  fuzz checked {checked} map/point instances")
    ok = ok and checked == 200000 and counterexamples == []
    _announce(7, "identity condition characterizes the identity", ok)


def test_criterion_08_axiom_suite():
    families = [
        make_space("usual1d"),
        make_space("symskew1d"),
        make_space("symskew2d"),
        make_space("exp2d"),
        make_space("halfsum"),
        make_space("generated:abs"),
        make_space("generated:euclidean", 2),
        make_space("generated:discrete", 1),
    ]
    ok = True
    for space in families:
        ok = ok and fuzz_axioms(space, 10000, seed=7, tol=1e-9).ok
        ok = ok and fuzz_symmetry(space, 10000, seed=7, tol=1e-9).ok
    gen_abs = make_space("generated:abs")
    pts = [(-5.0 + i * 0.01,) for i in range(1001)]
    for i in range(0, 1001, 7):
        x, y, z = pts[i], pts[(i * 3 + 1) % 1001], pts[(i * 5 + 2) % 1001]
        ok = ok and abs(eval_s(gen_abs, x, y, z) - eval_s(USUAL, x, y, z)) <= 1e-12
    _announce(8, "axiom suite across built-in families", ok)


def test_criterion_09_figure_reproduction():
    fig5 = trace_circle_2d(SKEW2, (0.0, 0.0), 1.0, [(-1, 1), (-1, 1)], resolution=512, band_tol=1e-8)
    ok = len(fig5.points) >= 500
    ok = ok and all(abs(r) <= 1e-8 for r in fig5.residuals)
    # |(|x1| + |x2|) - 1/2| bounds the max-norm distance to the diamond
    ok = ok and all(abs(abs(p[0]) + abs(p[1]) - 0.5) <= 2.0 / 512 for p in fig5.points)

    fig6 = trace_circle_2d(EXP2, (0.0, 0.0), 2.0, [(-4, 1), (-4, 1)], resolution=640, band_tol=1e-8)
    target = (math.log(2.0), 0.0)
    gap = min(max(abs(a - b) for a, b in zip(p, target)) for p in fig6.points)
    ok = ok and gap <= 1e-6 and all(abs(r) <= 1e-8 for r in fig6.residuals)
    print(f"  fig5 points={len(fig5.points)}, fig6 points={len(fig6.points)}, vertex gap={gap:.2e}")
    _announce(9, "figure clouds match their analytic curves", ok)


def test_criterion_10_inversion_fixes_the_unit_circle():
    entry = catalog_entry("unit_inversion")
    circle = Circle((0.0, 0.0), 1.0, entry.space)
    sample = angular_circle_sample(circle, 64)
    assert len(sample.points) == 64
    displacements = [
        entry.space.self_distance(p, entry.map.apply(p)) for p in sample.points
    ]
    ok = max(displacements) <= 1e-9
    _announce(10, "inversion fixes 64 unit-circle points", ok)


def test_criterion_11_reproduction_is_byte_deterministic(tmp_path):
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    code_a = main(["reproduce-paper", "--seed", "7", "--out-dir", str(out_a)])
    code_b = main(["reproduce-paper", "--seed", "7", "--out-dir", str(out_b)])
    ok = code_a == 0 and code_b == 0
    rel_a = sorted(p.relative_to(out_a) for p in out_a.rglob("*") if p.is_file())
    rel_b = sorted(p.relative_to(out_b) for p in out_b.rglob("*") if p.is_file())
    ok = ok and rel_a == rel_b and len(rel_a) >= 15
    compared = [p for p in rel_a if p.suffix in (".json", ".csv", ".svg")]
    for rel in compared:
        ok = ok and (out_a / rel).read_bytes() == (out_b / rel).read_bytes()
    print(f"  compared {len(compared)} report/CSV/SVG files byte-for-byte")
    _announce(11, "bundled reproduction is deterministic", ok)
