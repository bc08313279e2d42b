"""Built-in self-mappings with their spaces, circles, and expected verdicts.

Each entry records the DSL source the map is parsed from, the circles it is
documented to fix (if any), the circle its condition checks run against,
and the verdicts those checks are expected to produce.  The expected column
uses coarse tokens: ``"holds"`` accepts both the exhaustive and the
sampled-holds verdicts, ``"fails"`` requires a witnessed violation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import Circle
from .maps import PiecewiseMap, parse_map
from .spaces import SMetricSpace, make_space


@dataclass(frozen=True)
class MapCatalogEntry:
    name: str
    description: str
    space: SMetricSpace
    source: str
    map: PiecewiseMap
    fixed_circles: tuple[Circle, ...]
    test_circle: Circle | None
    theorem: str | None  # "thm1" | "thm2" | "thm6" | None
    h: float | None
    expected: tuple[tuple[str, str], ...]  # (condition id, "holds" | "fails")
    scenario: str


def _entry(
    name: str,
    description: str,
    space: SMetricSpace,
    source: str,
    fixed,
    test_circle,
    theorem,
    h,
    expected,
    scenario: str,
) -> MapCatalogEntry:
    mapping = parse_map(source, space.dimension, space=space, name=name)
    fixed_circles = tuple(Circle(c, r, space) for c, r in fixed)
    test = Circle(test_circle[0], test_circle[1], space) if test_circle else None
    return MapCatalogEntry(
        name=name,
        description=description,
        space=space,
        source=source,
        map=mapping,
        fixed_circles=fixed_circles,
        test_circle=test,
        theorem=theorem,
        h=h,
        expected=tuple(expected),
        scenario=scenario,
    )


def catalog(ball_radius: float = 1.0) -> list[MapCatalogEntry]:
    """All built-in mappings.

    ``ball_radius`` parameterizes the ball-retraction entry (the radius of
    the ball it fixes pointwise); everything else is fixed data.
    """
    usual1d = make_space("usual1d")
    symskew1d = make_space("symskew1d")
    symskew2d = make_space("symskew2d")
    exp2d = make_space("exp2d")
    halfsum = make_space("halfsum")
    mu = float(ball_radius)
    if not mu > 0:
        raise ValueError("ball_radius must be positive")

    return [
        _entry(
            "T1",
            "keeps -1 and 1 in place and sends every other real to 10",
            usual1d,
            "x in {-1, 1} -> x ; otherwise -> 10",
            fixed=(((0.0,), 2.0), ((4.5,), 11.0)),
            test_circle=((0.0,), 2.0),
            theorem="thm1",
            h=None,
            expected=(("thm1_S1", "holds"), ("thm1_S2", "holds")),
            scenario="exm6_t1",
        ),
        _entry(
            "T2",
            "fixes the skew-taxicab unit circle pointwise, collapsing the rest to (1, 0)",
            symskew2d,
            "on_circle((0, 0), 1) -> x1, x2 ; otherwise -> 1, 0",
            fixed=(((0.0, 0.0), 1.0),),
            test_circle=((0.0, 0.0), 1.0),
            theorem="thm1",
            h=None,
            expected=(("thm1_S1", "holds"), ("thm1_S2", "holds")),
            scenario="exm13_t2",
        ),
        _entry(
            "T3",
            "pushes the two circle points outward and sends the rest to 7",
            symskew1d,
            "x = -3/2 -> -7/2 ; x = 3/2 -> 7/2 ; otherwise -> 7",
            fixed=(),
            test_circle=((0.0,), 3.0),
            theorem="thm1",
            h=None,
            expected=(("thm1_S1", "holds"), ("thm1_S2", "fails")),
            scenario="exm7_t3",
        ),
        _entry(
            "T4",
            "constant map onto the circle center",
            usual1d,
            "otherwise -> 0",
            fixed=(),
            test_circle=((0.0,), 2.0),
            theorem="thm1",
            h=None,
            expected=(("thm1_S1", "fails"), ("thm1_S2", "holds")),
            scenario="exm8_t4",
        ),
        _entry(
            "T5",
            "fixes 0 and 2 through exponential/affine branches, constant 3 elsewhere",
            usual1d,
            "x = 0 -> exp(x) - 1 ; x = 2 -> 2*x - 2 ; otherwise -> 3",
            fixed=(((1.0,), 2.0),),
            test_circle=((1.0,), 2.0),
            theorem="thm2",
            h=0.0,
            expected=(("thm2_S1", "holds"), ("thm2_S2", "holds")),
            scenario="exm9_t5",
        ),
        _entry(
            "T6",
            "fixes the exponential circle of radius 2, collapsing the rest to (ln 2, 0)",
            exp2d,
            "on_circle((0, 0), 2) -> x1, x2 ; otherwise -> ln(2), 0",
            fixed=(((0.0, 0.0), 2.0),),
            test_circle=((0.0, 0.0), 2.0),
            theorem="thm2",
            h=0.0,
            expected=(("thm2_S1", "holds"), ("thm2_S2", "holds")),
            scenario="exm14_t6",
        ),
        _entry(
            "T7",
            "constant map onto the circle center",
            usual1d,
            "otherwise -> 0",
            fixed=(),
            test_circle=((0.0,), 2.0),
            theorem="thm2",
            h=0.0,
            expected=(("thm2_S1", "holds"), ("thm2_S2", "fails")),
            scenario="exm10_t7",
        ),
        _entry(
            "T8",
            "constant map to 1",
            symskew1d,
            "otherwise -> 1",
            fixed=(),
            test_circle=((0.0,), 1.0),
            theorem="thm2",
            h=0.0,
            expected=(("thm2_S1", "fails"), ("thm2_S2", "holds")),
            scenario="exm11_t8",
        ),
        _entry(
            "T9",
            "fixes the four points of two concentric circles, constant 5 elsewhere",
            symskew1d,
            "x in {-2, -1, 1, 2} -> x ; otherwise -> 5",
            fixed=(((0.0,), 2.0), ((0.0,), 4.0)),
            test_circle=((0.0,), 2.0),
            theorem="thm1",
            h=None,
            expected=(("thm1_S1", "holds"), ("thm1_S2", "holds")),
            scenario="exm12_t9",
        ),
        _entry(
            "T10",
            "fixes two concentric circles around 1, constant 1 elsewhere",
            usual1d,
            "x in {-1, 0, 2, 3} -> x ; otherwise -> 1",
            fixed=(((1.0,), 2.0), ((1.0,), 4.0)),
            test_circle=((1.0,), 2.0),
            theorem="thm2",
            h=0.0,
            expected=(("thm2_S1", "holds"), ("thm2_S2", "holds")),
            scenario="exm15_t10",
        ),
        _entry(
            "outward_shift",
            "identity inside |x| < 3, shift by +2 outside",
            usual1d,
            "abs(x) >= 3 -> x + 2 ; otherwise -> x",
            fixed=(((0.0,), 4.0),),
            test_circle=((0.0,), 4.0),
            theorem="thm6",
            h=None,
            expected=(("eqn1", "holds"), ("eqn2", "holds")),
            scenario="exm1",
        ),
        _entry(
            "ball_retraction",
            "identity on a closed ball, retraction to its center outside",
            usual1d,
            f"in_ball(0, {mu!r}) -> x ; otherwise -> 0",
            fixed=(((0.0,), mu / 2.0), ((0.0,), mu)),
            test_circle=((0.0,), mu),
            theorem="thm6",
            h=None,
            expected=(("eqn1", "fails"),),
            scenario="exm2",
        ),
        _entry(
            "unit_inversion",
            "complex inversion 1/conj(z) written in coordinates",
            halfsum,
            "otherwise -> x1 / (x1*x1 + x2*x2), x2 / (x1*x1 + x2*x2)",
            fixed=(((0.0, 0.0), 1.0),),
            test_circle=((0.0, 0.0), 1.0),
            theorem=None,
            h=None,
            expected=(),
            scenario="intro_inversion",
        ),
    ]


def catalog_entry(name: str, ball_radius: float = 1.0) -> MapCatalogEntry:
    for entry in catalog(ball_radius):
        if entry.name == name:
            return entry
    raise KeyError(f"no catalog map named {name!r}")
