"""S-metric spaces, circles, and executable fixed-circle condition checkers."""

from .axioms import (
    AxiomReport,
    Violation,
    check_axioms,
    check_symmetry,
    fuzz_axioms,
    fuzz_symmetry,
)
from .catalog import MapCatalogEntry, catalog, catalog_entry
from .conditions import (
    CONDITION_IDS,
    ConditionReport,
    FixedCircleVerdict,
    Thm6Result,
    Witness,
    check_diameter_uniqueness,
    check_identity_condition,
    check_rhoades_uniqueness,
    check_thm1,
    check_thm2,
    check_thm6,
    compute_R_S,
    discover_fixed_circles,
    sweep_thm2_h,
)
from .errors import (
    DimensionMismatchError,
    ExpressionError,
    MapParseError,
    RadiusUndefinedError,
    ScenarioError,
    SMetricError,
    UnsupportedFamilyError,
)
from .fuzzing import fuzz_identity_condition, random_piecewise_map
from .geometry import (
    Circle,
    CircleSolution,
    ClosedBall,
    OrbitSet,
    circle_membership,
    diameter,
    orbit,
    solve_circle_1d,
    trace_circle_2d,
)
from .maps import (
    PiecewiseMap,
    Rule,
    apply_map,
    fixed_point_set,
    make_multi_circle_map,
    parse_map,
    print_map,
)
from .spaces import (
    FAMILY_NAMES,
    Point,
    SMetricSpace,
    as_point,
    eval_s,
    generate_from_metric,
    make_space,
)

__version__ = "0.1.0"

from .render import emit_csv, emit_svg, render_png  # noqa: E402
from .scenario import (  # noqa: E402
    BUNDLED_ORDER,
    RunReport,
    Scenario,
    angular_circle_sample,
    bundled_scenario_path,
    domain_points,
    load_bundled_scenario,
    load_scenario,
    print_scenario,
    run_scenario,
)
