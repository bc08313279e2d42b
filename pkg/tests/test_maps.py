import pytest

from smetric.catalog import catalog, catalog_entry
from smetric.geometry import Circle, solve_circle_1d
from smetric.maps import (
    InClosedBall,
    apply_map,
    fixed_point_set,
    make_multi_circle_map,
    parse_map,
    print_map,
)
from smetric.scenario import angular_circle_sample
from smetric.spaces import make_space

USUAL = make_space("usual1d")
SKEW1 = make_space("symskew1d")


def test_catalog_shape():
    entries = catalog()
    assert len(entries) == 13
    names = [e.name for e in entries]
    assert len(set(names)) == 13
    assert names[:10] == [f"T{i}" for i in range(1, 11)]
    assert len({e.scenario for e in entries}) == 13


def test_catalog_sources_roundtrip():
    for entry in catalog():
        reparsed = parse_map(
            entry.source, entry.space.dimension, space=entry.space, name=entry.name
        )
        assert reparsed == entry.map, entry.name
        printed = print_map(entry.map)
        assert (
            parse_map(printed, entry.space.dimension, space=entry.space, name=entry.name)
            == entry.map
        ), entry.name


def test_catalog_documented_1d_circles_are_fixed(grid1d):
    for entry in catalog():
        if entry.space.dimension != 1:
            continue
        for circle in entry.fixed_circles:
            solution = solve_circle_1d(entry.space, circle.center, circle.radius)
            sample = list(solution.points) + grid1d(-6, 6, 0.5)
            fixed = fixed_point_set(entry.map, sample, entry.space)
            assert all(p in fixed for p in solution.points), (entry.name, circle.radius)


def test_catalog_documented_2d_circles_are_fixed():
    from smetric.geometry import trace_circle_2d

    t2 = catalog_entry("T2")
    cloud = trace_circle_2d(t2.space, (0.0, 0.0), 1.0, [(-1, 1), (-1, 1)], resolution=64)
    assert cloud.points
    fixed = fixed_point_set(t2.map, cloud.points, t2.space)
    assert len(fixed) == len(cloud.points)

    t6 = catalog_entry("T6")
    cloud = trace_circle_2d(
        t6.space, (0.0, 0.0), 2.0, [(-4, 1), (-4, 1)], resolution=64, band_tol=1e-12
    )
    assert cloud.points
    fixed = fixed_point_set(t6.map, cloud.points, t6.space)
    assert len(fixed) == len(cloud.points)

    inv = catalog_entry("unit_inversion")
    sample = angular_circle_sample(inv.fixed_circles[0], 16)
    fixed = fixed_point_set(inv.map, sample.points, inv.space)
    assert len(fixed) == 16


def test_ball_retraction_parameterization():
    entry = catalog_entry("ball_retraction", ball_radius=2.0)
    guard = entry.map.rules[0].predicate
    assert isinstance(guard, InClosedBall) and guard.ball.radius == 2.0
    assert apply_map(entry.map, 1.0) == (1.0,)  # S(1,1,0) = 2 <= 2
    assert apply_map(entry.map, 1.25) == (0.0,)
    with pytest.raises(ValueError):
        catalog(ball_radius=0.0)
    with pytest.raises(KeyError):
        catalog_entry("T99")


def test_multi_circle_map_reproduces_t9(grid1d):
    circles = (Circle((0.0,), 2.0, SKEW1), Circle((0.0,), 4.0, SKEW1))
    built = make_multi_circle_map(circles, 5.0)
    t9 = catalog_entry("T9").map
    for p in grid1d(-6, 6, 0.25):
        assert apply_map(built, p) == apply_map(t9, p)
    fixed = fixed_point_set(built, grid1d(-6, 6, 0.25), SKEW1)
    # alpha itself is trivially fixed; the circle points are the four others
    assert fixed == [(-2.0,), (-1.0,), (1.0,), (2.0,), (5.0,)]


def test_multi_circle_map_images():
    circle = Circle((0.0, 0.0), 1.0, make_space("symskew2d"))
    built = make_multi_circle_map([circle], (1.0, 0.0))
    assert apply_map(built, (0.25, 0.25)) == (0.25, 0.25)  # on the diamond
    assert apply_map(built, (0.7, 0.7)) == (1.0, 0.0)
    t2 = catalog_entry("T2").map
    for p in [(0.25, 0.25), (0.5, 0.0), (0.7, 0.7), (0.0, 0.0)]:
        assert apply_map(built, p) == apply_map(t2, p)


def test_multi_circle_map_rejects_alpha_on_circle():
    circles = (Circle((0.0,), 2.0, USUAL),)
    with pytest.raises(ValueError, match="lies on the circle"):
        make_multi_circle_map(circles, 1.0)  # S(1,1,0) = 2 = r
    with pytest.raises(ValueError, match="share one"):
        make_multi_circle_map(
            (Circle((0.0,), 2.0, USUAL), Circle((0.0,), 2.0, SKEW1)), 5.0
        )
    with pytest.raises(ValueError, match="at least one"):
        make_multi_circle_map((), 5.0)


def test_s_metric_circles_differ_from_ordinary_metric_circles(grid1d):
    # under S(x,y,z) = |x-z| + |y-z| the circle of radius 2 around 0 is
    # {-1, 1}, not the ordinary-metric {-2, 2}; T1 fixes only the former
    t1 = catalog_entry("T1")
    s_circle = [p[0] for p in solve_circle_1d(USUAL, 0.0, 2.0).points]
    assert s_circle == [-1.0, 1.0]
    d_circle = [(-2.0,), (2.0,)]
    fixed = fixed_point_set(t1.map, d_circle + grid1d(-3, 3, 0.5), USUAL)
    assert not any(p in fixed for p in d_circle)

    # same contrast for the exp/affine map: d-circle {-1, 3} moves, the
    # radius-1 d-circle {0, 2} (= the S-circle of radius 2 around 1) is fixed
    t5 = catalog_entry("T5")
    assert apply_map(t5.map, -1.0) == (3.0,)
    assert apply_map(t5.map, 3.0) == (3.0,)
    assert fixed_point_set(t5.map, [(0.0,), (2.0,)], USUAL) == [(0.0,), (2.0,)]


def test_orbit_of_a_fixed_point_is_singleton_for_every_cataloged_map():
    import math

    from smetric.geometry import orbit

    known_fixed = {
        "T1": (-1.0,),
        "T2": (0.5, 0.0),
        "T5": (0.0,),
        "T6": (math.log(2.0), 0.0),
        "T9": (1.0,),
        "T10": (0.0,),
        "outward_shift": (2.0,),
        "ball_retraction": (0.25,),
        "unit_inversion": (1.0, 0.0),
    }
    for entry in catalog():
        if not entry.fixed_circles:
            continue
        seed = known_fixed[entry.name]
        result = orbit(entry.map.apply, seed, entry.space)
        assert len(result.points) == 1, entry.name
        assert result.diameter == 0.0 and result.bounded, entry.name


def test_fixed_point_set_examples(grid1d):
    t1 = catalog_entry("T1").map
    assert fixed_point_set(t1, grid1d(-3, 3, 0.25), USUAL) == [(-1.0,), (1.0,)]

    identity = parse_map("otherwise -> x", 1)
    sample = grid1d(-2, 2, 0.5)
    assert fixed_point_set(identity, sample, USUAL) == sorted(sample)

    shift = catalog_entry("outward_shift").map
    fixed = fixed_point_set(shift, grid1d(-5, 5, 0.25), USUAL)
    assert fixed == [p for p in sorted(grid1d(-5, 5, 0.25)) if abs(p[0]) < 3.0]
