import pytest
from hypothesis import given
from hypothesis import strategies as st

from smetric.axioms import (
    AXIOM_NONNEG,
    AXIOM_SYMMETRY,
    check_axioms,
    check_symmetry,
    fuzz_axioms,
    fuzz_symmetry,
)
from smetric.spaces import eval_s, make_space

ALL_CONCRETE_FAMILIES = [
    make_space("usual1d"),
    make_space("symskew1d"),
    make_space("symskew2d"),
    make_space("exp2d"),
    make_space("halfsum"),
    make_space("generated:abs"),
    make_space("generated:euclidean", 2),
    make_space("generated:discrete", 1),
]


def test_usual1d_grid_sample_is_clean(grid1d):
    report = check_axioms(make_space("usual1d"), grid1d(-3, 3, 0.5))
    assert report.ok
    assert report.n_trials == 13**3 + 13**4


def test_degenerate_single_point_sample():
    report = check_axioms(make_space("usual1d"), [(0.0,)])
    assert report.ok and report.n_trials == 2


def test_dsl_candidate_is_falsified():
    bad = make_space("dsl", 1, dsl_source="x - z")
    report = check_axioms(bad, [(0.0,), (1.0,)])
    assert not report.ok
    axioms_hit = {v.axiom for v in report.violations}
    assert AXIOM_NONNEG in axioms_hit
    nonneg = [v for v in report.violations if v.axiom == AXIOM_NONNEG]
    assert any(v.lhs == -1.0 for v in nonneg)  # S(0,0,1) = -1


def test_asymmetric_dsl_candidate_fails_symmetry():
    asym = make_space("dsl", 1, dsl_source="abs(x - z) + abs(y)")
    report = check_symmetry(asym, [(0.0,), (1.0,)])
    assert not report.ok
    v = report.violations[0]
    assert v.axiom == AXIOM_SYMMETRY
    assert {v.lhs, v.rhs} == {1.0, 2.0}


def test_symmetry_same_point_never_violates():
    report = check_symmetry(make_space("usual1d"), [(2.0,)])
    assert report.ok


def test_budget_subsample_is_deterministic():
    space = make_space("usual1d")
    sample = [(0.1 * i,) for i in range(40)]  # 40**4 >> budget
    a = check_axioms(space, sample, budget=500, seed=3)
    b = check_axioms(space, sample, budget=500, seed=3)
    assert a == b
    assert a.n_trials == 1000  # 500 triples + 500 quadruples


@pytest.mark.parametrize("space", ALL_CONCRETE_FAMILIES, ids=lambda s: s.family)
def test_families_pass_seeded_fuzz(space):
    assert fuzz_axioms(space, 500, seed=11).ok
    assert fuzz_symmetry(space, 500, seed=11).ok


_COORD = st.floats(min_value=-2.5, max_value=2.5, allow_nan=False)


@given(data=st.data())
def test_triangle_and_symmetry_properties(data):
    for space in ALL_CONCRETE_FAMILIES:
        pt = st.tuples(*([_COORD] * space.dimension))
        x, y, z, a = (data.draw(pt) for _ in range(4))
        lhs = eval_s(space, x, y, z)
        rhs = (
            space.self_distance(x, a)
            + space.self_distance(y, a)
            + space.self_distance(z, a)
        )
        assert lhs <= rhs + 1e-9
        assert abs(space.self_distance(x, y) - space.self_distance(y, x)) <= 1e-9
        assert lhs >= 0.0
