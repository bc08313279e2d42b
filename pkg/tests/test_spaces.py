import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smetric.errors import DimensionMismatchError, MapParseError, SMetricError
from smetric.spaces import (
    FAMILY_NAMES,
    as_point,
    eval_s,
    generate_from_metric,
    make_space,
)


def test_as_point_coercion():
    assert as_point(1) == (1.0,)
    assert as_point((1, 2)) == (1.0, 2.0)
    with pytest.raises(ValueError):
        as_point(float("nan"))
    with pytest.raises(ValueError):
        as_point([1.0, float("inf")])
    with pytest.raises(DimensionMismatchError):
        as_point((1, 2), dimension=3)
    with pytest.raises(ValueError):
        as_point([])


def test_usual1d_values():
    u = make_space("usual1d")
    assert eval_s(u, 1, 2, 3) == 3.0  # |1-3| + |2-3|
    assert eval_s(u, 5, 5, 5) == 0.0
    assert u.self_distance(-1, 0) == 2.0


def test_skew_families():
    s1 = make_space("symskew1d")
    assert eval_s(s1, 1.5, 1.5, 3.5) == 4.0  # |x-z| + |x+z-2y|
    assert s1.self_distance(1.5, 0) == 3.0
    s2 = make_space("symskew2d")
    assert eval_s(s2, (1, 0), (1, 0), (0, 0)) == 2.0


def test_exp_family():
    e = make_space("exp2d")
    expected = abs(math.e - 1.0) + abs(math.e + 1.0 - 2.0) + 0.0
    assert eval_s(e, (1, 0), (0, 0), (0, 0)) == pytest.approx(expected, abs=1e-12)
    assert e.self_distance((math.log(2.0), 0.0), (0.0, 0.0)) == 2.0


def test_halfsum_modulus():
    h = make_space("halfsum")
    assert h.self_distance((0.6, 0.8), (0.0, 0.0)) == pytest.approx(1.0, abs=1e-15)
    assert eval_s(h, (3, 0), (0, 4), (0, 0)) == 3.5  # (3 + 4)/2


def test_generated_families():
    gabs = generate_from_metric("abs")
    u = make_space("usual1d")
    for triple in [(1, 2, 3), (0.1, -0.7, 2.3), (5, 5, 5)]:
        assert eval_s(gabs, *triple) == eval_s(u, *triple)
    ge = generate_from_metric("euclidean", 2)
    assert eval_s(ge, (3, 0), (0, 4), (0, 0)) == 7.0
    assert ge.self_distance((1, 0), (0, 0)) == 2.0  # 2 * euclidean
    gd = generate_from_metric("discrete", 1)
    assert eval_s(gd, 0, 1, 2) == 2.0
    assert eval_s(gd, 2, 2, 2) == 0.0
    with pytest.raises(SMetricError):
        generate_from_metric("manhattan")


def test_dimension_validation():
    u = make_space("usual1d")
    with pytest.raises(DimensionMismatchError):
        eval_s(u, (1, 2), 0, 0)
    with pytest.raises(DimensionMismatchError):
        make_space("symskew2d", dimension=3)
    with pytest.raises(SMetricError):
        make_space("nosuch")


def test_dsl_metric():
    bad = make_space("dsl", 1, dsl_source="x - z")
    assert eval_s(bad, 1, 1, 0) == 1.0
    assert eval_s(bad, 0, 0, 1) == -1.0  # not a real S-metric; the fuzzer's job
    asym = make_space("dsl", 1, dsl_source="abs(x - z) + abs(y)")
    assert asym.self_distance(0, 1) == 1.0
    assert asym.self_distance(1, 0) == 2.0
    with pytest.raises(MapParseError):
        make_space("dsl", 1, dsl_source="x - w")
    with pytest.raises(SMetricError):
        make_space("dsl", 1)  # missing source
    with pytest.raises(SMetricError):
        make_space("usual1d", dsl_source="x")


def test_dsl_metric_evaluation_failures_raise():
    from smetric.errors import ExpressionError

    logspace = make_space("dsl", 1, dsl_source="ln(x) + ln(z)")
    assert eval_s(logspace, 1.0, 1.0, 1.0) == 0.0
    with pytest.raises(ExpressionError, match="ln"):
        eval_s(logspace, -1.0, 1.0, 1.0)
    ratio = make_space("dsl", 1, dsl_source="(x - z)/y")
    with pytest.raises(ExpressionError, match="division"):
        eval_s(ratio, 1.0, 0.0, 0.0)


def test_family_registry_is_the_wire_contract():
    assert set(FAMILY_NAMES) == {
        "usual1d",
        "symskew1d",
        "symskew2d",
        "exp2d",
        "halfsum",
        "generated:euclidean",
        "generated:abs",
        "generated:discrete",
        "dsl",
    }


_COORD = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


@given(x=_COORD, y=_COORD, z=_COORD)
def test_one_dimensional_families_nonnegative_and_vanish_on_diagonal(x, y, z):
    for family in ("usual1d", "symskew1d", "generated:abs"):
        space = make_space(family)
        assert eval_s(space, x, y, z) >= 0.0
        assert eval_s(space, x, x, x) == 0.0


@given(st.tuples(_COORD, _COORD), st.tuples(_COORD, _COORD))
def test_halfsum_self_distance_is_the_modulus(z, w):
    h = make_space("halfsum")
    assert h.self_distance(z, w) == pytest.approx(math.dist(z, w), abs=1e-12)
