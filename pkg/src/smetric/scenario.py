"""Scenario files: declarative check suites with expected outcomes.

A scenario is a JSON document naming a metric, a mapping (catalog name or
DSL source), a sampling domain, geometry artifacts to compute, checks to
run with their expected outcomes, and files to emit.  Re-running a
scenario reproduces identical verdicts and identical output bytes; the run
report echoes the normalized scenario so a report is itself re-runnable.

Schema sketch (see README for the full field list)::

    {
      "name": "...", "seed": 7,
      "metric": {"family": "usual1d"},
      "map": {"catalog": "T1"},
      "domain": {"window": [[-12, 12]], "step": 0.25},
      "geometry": [{"id": "c", "method": "solve",
                    "circle": {"center": [0], "radius": 2}}],
      "checks": [{"kind": "thm1", "circle": {"center": [0], "radius": 2},
                  "expect": {"thm1_S1": "Holds", "thm1_S2": "Holds",
                              "fixed": true}}],
      "outputs": [{"kind": "csv", "path": "c.csv", "source": "c"},
                  {"kind": "report", "path": "report.json"}]
    }
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import __version__ as _version
from .axioms import fuzz_axioms, fuzz_symmetry
from .catalog import catalog
from .conditions import (
    check_diameter_uniqueness,
    check_identity_condition,
    check_rhoades_uniqueness,
    check_thm1,
    check_thm2,
    check_thm6,
    discover_fixed_circles,
)
from .errors import ScenarioError, SMetricError, UnsupportedFamilyError
from .geometry import Circle, CircleSolution, EMPTY, FINITE, TRACED, solve_circle_1d, trace_circle_2d
from .maps import PiecewiseMap, fixed_point_set, parse_map
from .render import emit_csv, emit_svg, render_png
from .spaces import Point, SMetricSpace, as_point, make_space

DEFAULT_SEED = 7
CHECK_KINDS = (
    "thm1",
    "thm2",
    "identity_condition",
    "rhoades",
    "diameter_uniqueness",
    "thm6",
    "discover",
    "fixed_circle",
    "axioms",
    "symmetry",
    "geometry_expect",
)
GEOMETRY_METHODS = ("solve", "trace", "angles", "fixed_points")
OUTPUT_KINDS = ("csv", "svg", "png", "report")


@dataclass
class Scenario:
    name: str
    seed: int
    space: SMetricSpace
    mapping: PiecewiseMap | None
    normalized: dict  # canonical echo; load(print(s)) reproduces it

    @property
    def domain(self) -> dict | None:
        return self.normalized.get("domain")

    @property
    def geometry(self) -> list[dict]:
        return self.normalized.get("geometry", [])

    @property
    def checks(self) -> list[dict]:
        return self.normalized.get("checks", [])

    @property
    def outputs(self) -> list[dict]:
        return self.normalized.get("outputs", [])


# --- loading -------------------------------------------------------------------


def _fail(where: str, message: str) -> ScenarioError:
    return ScenarioError(f"{where}: {message}")


def _load_space(raw: dict | None, where: str) -> SMetricSpace | None:
    if raw is None:
        return None
    if not isinstance(raw, dict) or "family" not in raw:
        raise _fail(where, "metric must be an object with a 'family'")
    try:
        return make_space(
            raw["family"],
            dimension=raw.get("dimension"),
            params=raw.get("params"),
            dsl_source=raw.get("source"),
        )
    except SMetricError as exc:
        raise _fail(where, str(exc)) from exc


def _space_dict(space: SMetricSpace) -> dict:
    out: dict[str, Any] = {"family": space.family, "dimension": space.dimension}
    if space.params:
        out["params"] = {k: v for k, v in space.params}
    if space.dsl_source is not None:
        out["source"] = space.dsl_source
    return out


def _load_map(raw: dict | None, space: SMetricSpace | None, where: str):
    if raw is None:
        return None, None, space
    if not isinstance(raw, dict):
        raise _fail(where, "map must be an object")
    if "catalog" in raw:
        name = raw["catalog"]
        entries = {e.name: e for e in catalog(raw.get("ball_radius", 1.0))}
        if name not in entries:
            raise _fail(where, f"unknown catalog map {name!r}")
        entry = entries[name]
        if space is not None and space != entry.space:
            raise _fail(
                where,
                f"metric {space.describe()} conflicts with catalog map "
                f"{name!r} defined on {entry.space.describe()}",
            )
        normalized = {"catalog": name}
        if "ball_radius" in raw:
            normalized["ball_radius"] = float(raw["ball_radius"])
        return entry.map, normalized, entry.space
    if "dsl" in raw:
        if space is None:
            raise _fail(where, "a DSL map needs an explicit metric")
        try:
            mapping = parse_map(
                raw["dsl"], space.dimension, space=space, name=raw.get("name", "scenario map")
            )
        except SMetricError as exc:
            raise _fail(where, str(exc)) from exc
        normalized = {"dsl": raw["dsl"]}
        if "name" in raw:
            normalized["name"] = raw["name"]
        return mapping, normalized, space
    raise _fail(where, "map needs either 'catalog' or 'dsl'")


def _norm_window(raw, dimension: int, where: str) -> list[list[float]]:
    try:
        axes = [[float(lo), float(hi)] for lo, hi in raw]
    except (TypeError, ValueError) as exc:
        raise _fail(where, "window must be a list of [lo, hi] pairs") from exc
    if len(axes) != dimension:
        raise _fail(where, f"window has {len(axes)} axes, expected {dimension}")
    for lo, hi in axes:
        if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
            raise _fail(where, "window axes must be finite with positive extent")
    return axes


def _norm_domain(raw: dict | None, dimension: int, where: str) -> dict | None:
    if raw is None:
        return None
    if "points" in raw:
        pts = [list(as_point(p, dimension)) for p in raw["points"]]
        if not pts:
            raise _fail(where, "explicit point list must be nonempty")
        return {"points": pts}
    if "window" not in raw:
        raise _fail(where, "domain needs 'window' (+'step' or 'resolution') or 'points'")
    window = _norm_window(raw["window"], dimension, where)
    if "step" in raw:
        step = float(raw["step"])
        if not step > 0:
            raise _fail(where, "step must be positive")
        return {"window": window, "step": step}
    resolution = int(raw.get("resolution", 0))
    if resolution < 1:
        raise _fail(where, "domain needs a positive 'step' or 'resolution'")
    return {"window": window, "resolution": resolution}


def _norm_circle(raw, space: SMetricSpace, where: str) -> dict:
    if not isinstance(raw, dict) or "center" not in raw or "radius" not in raw:
        raise _fail(where, "circle needs 'center' and 'radius'")
    try:
        circle = Circle(as_point(raw["center"], space.dimension), float(raw["radius"]), space)
    except (ValueError, SMetricError) as exc:
        raise _fail(where, str(exc)) from exc
    return {"center": list(circle.center), "radius": circle.radius}


def _circle_from(norm: dict, space: SMetricSpace) -> Circle:
    return Circle(tuple(norm["center"]), norm["radius"], space)


def _norm_geometry(items, space: SMetricSpace, mapping, where: str) -> list[dict]:
    out = []
    seen = set()
    for i, raw in enumerate(items or []):
        w = f"{where}[{i}]"
        if "id" not in raw or "method" not in raw:
            raise _fail(w, "geometry items need 'id' and 'method'")
        if raw["method"] not in GEOMETRY_METHODS:
            raise _fail(w, f"unknown geometry method {raw['method']!r}")
        if raw["id"] in seen:
            raise _fail(w, f"duplicate geometry id {raw['id']!r}")
        seen.add(raw["id"])
        item: dict[str, Any] = {"id": raw["id"], "method": raw["method"]}
        if raw["method"] in ("solve", "trace", "angles"):
            item["circle"] = _norm_circle(raw.get("circle"), space, w)
        if raw["method"] == "trace":
            if space.dimension != 2:
                raise _fail(w, "trace needs a two-dimensional metric")
            item["window"] = _norm_window(raw.get("window"), 2, w)
            item["resolution"] = int(raw.get("resolution", 512))
            if item["resolution"] < 8:
                raise _fail(w, "resolution must be >= 8")
            item["band_tol"] = float(raw.get("band_tol", 1e-8))
        if raw["method"] == "angles":
            item["count"] = int(raw.get("count", 64))
            if item["count"] < 1:
                raise _fail(w, "count must be >= 1")
            if space.family not in ("halfsum", "generated:euclidean") or space.dimension != 2:
                raise _fail(w, "angles sampling needs halfsum or generated:euclidean on the plane")
        if raw["method"] == "fixed_points" and mapping is None:
            raise _fail(w, "fixed_points needs a map")
        out.append(item)
    return out


_CHECK_NEEDS_MAP = {
    "thm1", "thm2", "identity_condition", "rhoades",
    "diameter_uniqueness", "thm6", "discover", "fixed_circle",
}


def _norm_checks(items, space, mapping, geometry_ids, where: str) -> list[dict]:
    out = []
    for i, raw in enumerate(items or []):
        w = f"{where}[{i}]"
        kind = raw.get("kind")
        if kind not in CHECK_KINDS:
            raise _fail(w, f"unknown check kind {kind!r}")
        if kind in _CHECK_NEEDS_MAP and mapping is None:
            raise _fail(w, f"check {kind!r} needs a map")
        item: dict[str, Any] = {"kind": kind, "tol": float(raw.get("tol", 1e-9))}
        if item["tol"] <= 0:
            raise _fail(w, "tol must be positive")
        if kind in ("thm1", "thm2", "rhoades", "diameter_uniqueness", "fixed_circle"):
            item["circle"] = _norm_circle(raw.get("circle"), space, w)
            if "circle_sample" in raw:
                if raw["circle_sample"] not in geometry_ids:
                    raise _fail(w, f"circle_sample {raw['circle_sample']!r} is not a geometry id")
                item["circle_sample"] = raw["circle_sample"]
        if kind == "thm2":
            item["h"] = float(raw.get("h", 0.0))
            if not 0.0 <= item["h"] < 1.0:
                raise _fail(w, "thm2 needs h in [0, 1)")
        if kind == "identity_condition":
            item["center"] = list(as_point(raw.get("center", [0.0] * space.dimension), space.dimension))
            item["h"] = float(raw.get("h", 3.0))
            if not item["h"] > 2.0:
                raise _fail(w, "identity_condition needs h > 2")
        if kind in ("rhoades", "diameter_uniqueness"):
            item["strict_tol"] = float(raw.get("strict_tol", 0.0))
        if kind == "diameter_uniqueness":
            item["n_max"] = int(raw.get("n_max", 64))
        if kind == "thm6":
            item["center"] = list(as_point(raw.get("center", [0.0] * space.dimension), space.dimension))
            item["strict_tol"] = float(raw.get("strict_tol", 0.0))
        if kind == "discover":
            centers = raw.get("centers")
            if not centers:
                raise _fail(w, "discover needs candidate centers")
            item["centers"] = [list(as_point(c, space.dimension)) for c in centers]
        if kind in ("axioms", "symmetry"):
            item["trials"] = int(raw.get("trials", 10000))
            lo, hi = raw.get("range", (-3.0, 3.0))
            item["range"] = [float(lo), float(hi)]
        if kind == "geometry_expect":
            target = raw.get("geometry")
            if target not in geometry_ids:
                raise _fail(w, f"geometry_expect target {target!r} is not a geometry id")
            item["geometry"] = target
        if "expect" in raw:
            item["expect"] = raw["expect"]
        out.append(item)
    return out


def _norm_outputs(items, geometry_ids, where: str) -> list[dict]:
    out = []
    for i, raw in enumerate(items or []):
        w = f"{where}[{i}]"
        kind = raw.get("kind")
        if kind not in OUTPUT_KINDS:
            raise _fail(w, f"unknown output kind {kind!r}")
        if "path" not in raw:
            raise _fail(w, "outputs need a 'path'")
        path = str(raw["path"])
        if Path(path).is_absolute():
            raise _fail(w, "output paths must be relative")
        item: dict[str, Any] = {"kind": kind, "path": path}
        if kind == "csv":
            if raw.get("source") not in geometry_ids:
                raise _fail(w, "csv output needs a 'source' geometry id")
            item["source"] = raw["source"]
        if kind in ("svg", "png"):
            sources = raw.get("sources") or ([raw["source"]] if "source" in raw else [])
            if not sources or any(s not in geometry_ids for s in sources):
                raise _fail(w, f"{kind} output needs 'sources' naming geometry ids")
            item["sources"] = list(sources)
            if "window" in raw:
                item["window"] = [[float(lo), float(hi)] for lo, hi in raw["window"]]
            if "title" in raw:
                item["title"] = str(raw["title"])
        out.append(item)
    return out


def load_scenario(source) -> Scenario:
    """Load and validate a scenario from a path, JSON text, or dict."""
    if isinstance(source, dict):
        raw = source
        label = raw.get("name", "<dict>")
    else:
        text = None
        if isinstance(source, Path) or (
            isinstance(source, str) and not source.lstrip().startswith("{")
        ):
            path = Path(source)
            if not path.exists():
                raise ScenarioError(f"scenario file not found: {path}")
            text = path.read_text(encoding="utf-8")
            label = str(path)
        else:
            text = source
            label = "<inline>"
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"{label}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(raw, dict):
        raise ScenarioError(f"{label}: scenario must be a JSON object")

    name = str(raw.get("name", "scenario"))
    seed = int(raw.get("seed", DEFAULT_SEED))
    space = _load_space(raw.get("metric"), f"{name}.metric")
    mapping, map_norm, space = _load_map(raw.get("map"), space, f"{name}.map")
    if space is None:
        raise ScenarioError(f"{name}: scenario needs a metric (or a catalog map implying one)")

    normalized: dict[str, Any] = {
        "name": name,
        "seed": seed,
        "metric": _space_dict(space),
    }
    if map_norm is not None:
        normalized["map"] = map_norm
    domain = _norm_domain(raw.get("domain"), space.dimension, f"{name}.domain")
    if domain is not None:
        normalized["domain"] = domain
    geometry = _norm_geometry(raw.get("geometry"), space, mapping, f"{name}.geometry")
    if geometry:
        normalized["geometry"] = geometry
    geometry_ids = {g["id"] for g in geometry}
    checks = _norm_checks(raw.get("checks"), space, mapping, geometry_ids, f"{name}.checks")
    if checks or raw.get("checks") == []:
        normalized["checks"] = checks
    outputs = _norm_outputs(raw.get("outputs"), geometry_ids, f"{name}.outputs")
    if outputs:
        normalized["outputs"] = outputs

    needs_domain = {"identity_condition", "rhoades", "diameter_uniqueness", "thm6", "discover"}
    if domain is None:
        for c in checks:
            if c["kind"] in needs_domain:
                raise ScenarioError(f"{name}: check {c['kind']!r} needs a domain")
        if any(g["method"] == "fixed_points" for g in geometry):
            raise ScenarioError(f"{name}: fixed_points geometry needs a domain")

    return Scenario(name=name, seed=seed, space=space, mapping=mapping, normalized=normalized)


def print_scenario(scenario: Scenario) -> str:
    """Canonical JSON text; loading it back reproduces the scenario."""
    return json.dumps(scenario.normalized, indent=2, sort_keys=True) + "\n"


# --- running -------------------------------------------------------------------


def _axis_values(lo: float, hi: float, step: float) -> list[float]:
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + i * step for i in range(count)]


def domain_points(domain: dict, dimension: int) -> list[Point]:
    """Materialize the sampling domain as a point list (lexicographic)."""
    if "points" in domain:
        return [as_point(p, dimension) for p in domain["points"]]
    window = domain["window"]
    if "step" in domain:
        axes = [_axis_values(lo, hi, domain["step"]) for lo, hi in window]
    else:
        res = domain["resolution"]
        axes = [[lo + i * (hi - lo) / res for i in range(res + 1)] for lo, hi in window]
    pts: list[Point] = []

    def build(prefix: tuple[float, ...], axis: int):
        if axis == len(axes):
            pts.append(prefix)
            return
        for v in axes[axis]:
            build(prefix + (v,), axis + 1)

    build((), 0)
    return pts


def angular_circle_sample(circle: Circle, count: int) -> CircleSolution:
    """Equally spaced parametric points for Euclidean-style circles."""
    space = circle.space
    if space.dimension != 2:
        raise ScenarioError("angles sampling needs a two-dimensional space")
    if space.family == "halfsum":
        radius = circle.radius
    elif space.family == "generated:euclidean":
        radius = circle.radius / 2.0
    else:
        raise ScenarioError("angles sampling needs halfsum or generated:euclidean")
    cx, cy = circle.center
    pts = []
    for k in range(count):
        theta = 2.0 * math.pi * k / count
        pts.append((cx + radius * math.cos(theta), cy + radius * math.sin(theta)))
    pts.sort()
    residuals = tuple(circle.residual(p) for p in pts)
    # a parametric sample, not the complete solution set
    return CircleSolution(kind=TRACED, points=tuple(pts), residuals=residuals)


@dataclass
class RunReport:
    scenario: dict
    version: str
    seed: int
    geometry: list[dict] = field(default_factory=list)
    checks: list[dict] = field(default_factory=list)

    @property
    def all_matched(self) -> bool:
        return all(c.get("matched", True) for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "tool": "smetric",
            "version": self.version,
            "seed": self.seed,
            "scenario": self.scenario,
            "geometry": self.geometry,
            "checks": self.checks,
            "all_matched": self.all_matched,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"


def _verdict_matches(expected, actual: str) -> bool:
    if expected == "holds":
        return actual in ("Holds", "HoldsOnSample")
    if expected == "fails":
        return actual == "Fails"
    return expected == actual


def _points_match(expected, actual: Sequence[Point], tol: float) -> bool:
    if len(expected) != len(actual):
        return False
    exp_sorted = sorted(tuple(float(c) for c in p) for p in expected)
    act_sorted = sorted(actual)
    return all(
        len(e) == len(a) and all(abs(ec - ac) <= tol for ec, ac in zip(e, a))
        for e, a in zip(exp_sorted, act_sorted)
    )


class _Runner:
    def __init__(self, scenario: Scenario, out_dir: Path | None, seed: int | None):
        self.scenario = scenario
        self.space = scenario.space
        self.mapping = scenario.mapping
        self.out_dir = Path(out_dir) if out_dir is not None else None
        self.seed = scenario.seed if seed is None else int(seed)
        self._domain: list[Point] | None = None
        self.artifacts: dict[str, CircleSolution] = {}

    # -- samples ------------------------------------------------------------

    def domain(self) -> list[Point]:
        if self._domain is None:
            declared = self.scenario.domain
            if declared is None:
                raise ScenarioError(f"{self.scenario.name}: no domain declared")
            self._domain = domain_points(declared, self.space.dimension)
        return self._domain

    def circle_sample(self, check: dict, circle: Circle) -> tuple[list[Point], bool]:
        """Sample of the check's circle plus whether it is exhaustive."""
        ref = check.get("circle_sample")
        if ref is not None:
            solution = self.artifacts[ref]
            return list(solution.points), solution.kind == FINITE
        try:
            solution = solve_circle_1d(self.space, circle.center, circle.radius)
        except UnsupportedFamilyError as exc:
            raise ScenarioError(
                f"{self.scenario.name}: {exc}; declare a geometry item and point "
                "'circle_sample' at it"
            ) from exc
        return list(solution.points), True

    # -- geometry -------------------------------------------------------------

    def run_geometry(self, report: RunReport) -> None:
        for item in self.scenario.geometry:
            method = item["method"]
            if method == "solve":
                circle = _circle_from(item["circle"], self.space)
                solution = solve_circle_1d(self.space, circle.center, circle.radius)
            elif method == "trace":
                circle = _circle_from(item["circle"], self.space)
                solution = trace_circle_2d(
                    self.space,
                    circle.center,
                    circle.radius,
                    item["window"],
                    resolution=item["resolution"],
                    band_tol=item["band_tol"],
                )
            elif method == "angles":
                circle = _circle_from(item["circle"], self.space)
                solution = angular_circle_sample(circle, item["count"])
            else:  # fixed_points
                pts = fixed_point_set(self.mapping, self.domain(), self.space, tol=1e-9)
                residuals = tuple(
                    self.space.self_distance(p, self.mapping.apply(p)) for p in pts
                )
                solution = CircleSolution(
                    kind=EMPTY if not pts else FINITE, points=tuple(pts), residuals=residuals
                )
            self.artifacts[item["id"]] = solution
            max_residual = max((abs(r) for r in solution.residuals), default=0.0)
            report.geometry.append(
                {
                    "id": item["id"],
                    "method": method,
                    "kind": solution.kind,
                    "points": len(solution.points),
                    "max_abs_residual": max_residual,
                }
            )

    # -- checks ----------------------------------------------------------------

    def run_checks(self, report: RunReport) -> None:
        for index, check in enumerate(self.scenario.checks):
            handler = getattr(self, f"_check_{check['kind']}")
            result = handler(check)
            result["kind"] = check["kind"]
            result["index"] = index
            expect = check.get("expect")
            if expect is not None:
                result["expected"] = expect
                mismatches = self._match(expect, result)
                result["matched"] = not mismatches
                if mismatches:
                    result["mismatches"] = mismatches
            for key in [k for k in result if k.startswith("_")]:
                del result[key]
            report.checks.append(result)

    def _match(self, expect: dict, result: dict) -> list[str]:
        mism = []
        reports = {r["condition_id"]: r for r in result.get("reports", [])}
        for key, expected in expect.items():
            if key in reports:
                if not _verdict_matches(expected, reports[key]["verdict"]):
                    mism.append(f"{key}: expected {expected}, got {reports[key]['verdict']}")
            elif key in ("fixed", "ball_fixed", "r_exact", "identity"):
                actual = result.get(key)
                if bool(expected) != bool(actual):
                    mism.append(f"{key}: expected {expected}, got {actual}")
            elif key == "r":
                actual = result.get("r")
                if actual is None or abs(actual - float(expected)) > 1e-9:
                    mism.append(f"r: expected {expected}, got {actual}")
            elif key == "circles":
                actual = result.get("circles", [])
                ok = len(expected) == len(actual) and all(
                    abs(e["radius"] - a["radius"]) <= 1e-9
                    and max(abs(ec - ac) for ec, ac in zip(e["center"], a["center"])) <= 1e-9
                    for e, a in zip(expected, actual)
                )
                if not ok:
                    mism.append(f"circles: expected {expected}, got {actual}")
            elif key == "points":
                actual_pts = result.get("_points", result.get("points", []))
                if not _points_match(expected, actual_pts, 1e-12):
                    mism.append(f"points: expected {expected}, got {list(actual_pts)}")
            elif key == "violations":
                if int(expected) != result.get("violations"):
                    mism.append(f"violations: expected {expected}, got {result.get('violations')}")
            elif key == "min_points":
                if result.get("points_count", 0) < int(expected):
                    mism.append(f"min_points: expected >= {expected}, got {result.get('points_count')}")
            elif key == "max_residual":
                if result.get("max_abs_residual", math.inf) > float(expected):
                    mism.append(
                        f"max_residual: expected <= {expected}, got {result.get('max_abs_residual')}"
                    )
            elif key == "contains_point":
                tol = float(expect.get("point_tol", 1e-6))
                target = as_point(expected)
                pts = result.get("_points", ())
                if not any(max(abs(a - b) for a, b in zip(p, target)) <= tol for p in pts):
                    mism.append(f"contains_point: no point within {tol} of {list(target)}")
            elif key == "point_tol":
                continue  # consumed by contains_point
            else:
                mism.append(f"unknown expectation {key!r}")
        return mism

    def _check_thm1(self, check: dict) -> dict:
        circle = _circle_from(check["circle"], self.space)
        sample, exhaustive = self.circle_sample(check, circle)
        r1, r2, verdict = check_thm1(
            self.mapping, circle, sample, tol=check["tol"], exhaustive=exhaustive
        )
        return {
            "reports": [r1.as_dict(), r2.as_dict()],
            "verdict_detail": verdict.as_dict(),
            "fixed": verdict.fixed,
        }

    def _check_thm2(self, check: dict) -> dict:
        circle = _circle_from(check["circle"], self.space)
        sample, exhaustive = self.circle_sample(check, circle)
        r1, r2, verdict = check_thm2(
            self.mapping, circle, sample, h=check["h"], tol=check["tol"], exhaustive=exhaustive
        )
        return {
            "reports": [r1.as_dict(), r2.as_dict()],
            "verdict_detail": verdict.as_dict(),
            "fixed": verdict.fixed,
        }

    def _check_identity_condition(self, check: dict) -> dict:
        report, identity = check_identity_condition(
            self.mapping,
            self.space,
            tuple(check["center"]),
            self.domain(),
            h=check["h"],
            tol=check["tol"],
        )
        return {"reports": [report.as_dict()], "identity": identity}

    def _check_rhoades(self, check: dict) -> dict:
        circle = _circle_from(check["circle"], self.space)
        sample, _ = self.circle_sample(check, circle)
        report = check_rhoades_uniqueness(
            self.mapping, circle, sample, self.domain(),
            tol=check["tol"], strict_tol=check["strict_tol"],
        )
        return {"reports": [report.as_dict()]}

    def _check_diameter_uniqueness(self, check: dict) -> dict:
        circle = _circle_from(check["circle"], self.space)
        sample, _ = self.circle_sample(check, circle)
        report = check_diameter_uniqueness(
            self.mapping, circle, sample, self.domain(),
            n_max=check["n_max"], tol=check["tol"], strict_tol=check["strict_tol"],
        )
        return {"reports": [report.as_dict()]}

    def _check_thm6(self, check: dict) -> dict:
        result = check_thm6(
            self.mapping,
            self.space,
            tuple(check["center"]),
            self.domain(),
            tol=check["tol"],
            strict_tol=check["strict_tol"],
        )
        return {
            "reports": [result.eqn1.as_dict(), result.eqn2.as_dict()],
            "inner_eqn2": result.inner_eqn2.as_dict(),
            "r": result.radius,
            "r_exact": result.radius_exact,
            "verdict_detail": result.verdict.as_dict(),
            "fixed": result.verdict.fixed,
            "ball_fixed": result.verdict.ball_fixed,
        }

    def _check_discover(self, check: dict) -> dict:
        found = discover_fixed_circles(
            self.mapping,
            self.space,
            self.domain(),
            [tuple(c) for c in check["centers"]],
            tol=check["tol"],
        )
        return {
            "circles": [
                {"center": list(v.circle.center), "radius": v.circle.radius} for v in found
            ],
            "verdicts": [v.as_dict() for v in found],
        }

    def _check_fixed_circle(self, check: dict) -> dict:
        circle = _circle_from(check["circle"], self.space)
        sample, _ = self.circle_sample(check, circle)
        displacements = [
            self.space.self_distance(p, self.mapping.apply(p)) for p in sample
        ]
        max_disp = max(displacements, default=0.0)
        fixed = bool(sample) and max_disp <= check["tol"]
        return {
            "fixed": fixed,
            "checked_points": len(sample),
            "max_displacement": max_disp,
        }

    def _check_axioms(self, check: dict) -> dict:
        lo, hi = check["range"]
        report = fuzz_axioms(
            self.space, check["trials"], lo=lo, hi=hi, seed=self.seed, tol=check["tol"]
        )
        return {
            "violations": len(report.violations),
            "n_trials": report.n_trials,
        }

    def _check_symmetry(self, check: dict) -> dict:
        lo, hi = check["range"]
        report = fuzz_symmetry(
            self.space, check["trials"], lo=lo, hi=hi, seed=self.seed, tol=check["tol"]
        )
        return {
            "violations": len(report.violations),
            "n_trials": report.n_trials,
        }

    def _check_geometry_expect(self, check: dict) -> dict:
        solution = self.artifacts[check["geometry"]]
        max_residual = max((abs(r) for r in solution.residuals), default=0.0)
        return {
            "geometry": check["geometry"],
            "points_count": len(solution.points),
            "max_abs_residual": max_residual,
            "_points": solution.points,
        }

    # -- outputs -----------------------------------------------------------------

    def run_outputs(self, report: RunReport) -> None:
        if not self.scenario.outputs:
            return
        if self.out_dir is None:
            raise ScenarioError(
                f"{self.scenario.name}: scenario declares outputs; pass an output directory"
            )
        self.out_dir.mkdir(parents=True, exist_ok=True)
        deferred_reports = []
        for item in self.scenario.outputs:
            path = self.out_dir / item["path"]
            path.parent.mkdir(parents=True, exist_ok=True)
            if item["kind"] == "report":
                deferred_reports.append(path)
                continue
            if item["kind"] == "csv":
                solution = self.artifacts[item["source"]]
                emit_csv(
                    solution.points, solution.residuals, path, dimension=self.space.dimension
                )
                continue
            clouds = [(src, self.artifacts[src].points) for src in item["sources"]]
            window = item.get("window") or self._default_window(clouds)
            if item["kind"] == "svg":
                emit_svg(clouds, window, path, title=item.get("title"))
            else:
                render_png(clouds, window, path, title=item.get("title"))
        for path in deferred_reports:
            path.write_text(report.to_json(), encoding="utf-8")

    def _default_window(self, clouds) -> list[list[float]]:
        domain = self.scenario.domain
        if domain is not None and "window" in domain:
            return domain["window"]
        xs = [p[0] for _, pts in clouds for p in pts]
        ys = [p[1] for _, pts in clouds for p in pts if len(p) > 1]
        if not xs:
            return [[-1.0, 1.0], [-1.0, 1.0]]
        lo, hi = min(xs) - 1.0, max(xs) + 1.0
        if ys:
            return [[lo, hi], [min(ys) - 1.0, max(ys) + 1.0]]
        return [[lo, hi]]

    def run(self) -> RunReport:
        report = RunReport(
            scenario=self.scenario.normalized, version=_version, seed=self.seed
        )
        self.run_geometry(report)
        self.run_checks(report)
        self.run_outputs(report)
        return report


def run_scenario(scenario: Scenario, out_dir=None, seed: int | None = None) -> RunReport:
    """Execute a scenario: geometry, checks with expectation matching, outputs."""
    return _Runner(scenario, out_dir, seed).run()


# --- bundled scenarios -------------------------------------------------------------

BUNDLED_ORDER = (
    "exm1",
    "exm2",
    "exm6_t1",
    "exm7_t3",
    "exm8_t4",
    "exm9_t5",
    "exm10_t7",
    "exm11_t8",
    "exm12_t9",
    "exm13_t2",
    "exm14_t6",
    "exm15_t10",
    "intro_inversion",
    "fig5_t2",
    "fig6_t6",
)


def bundled_scenario_path(name: str) -> Path:
    path = Path(__file__).with_name("scenarios") / f"{name}.json"
    if not path.exists():
        raise ScenarioError(f"no bundled scenario named {name!r}")
    return path


def load_bundled_scenario(name: str) -> Scenario:
    return load_scenario(bundled_scenario_path(name))
