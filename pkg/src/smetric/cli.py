"""Command-line interface.

Subcommands: ``verify`` (run a scenario and compare against its declared
expectations), ``solve``/``trace`` (circle geometry), ``discover``
(brute-force fixed circles), ``fuzz`` (axiom fuzzing for a metric),
``plot`` (emit a scenario's geometry outputs only), and
``reproduce-paper`` (run the whole bundled scenario suite and write its
reports, tables and figures).

Exit codes: 0 when every requested check matched its declared expectation,
1 on mismatches or runtime failures, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .axioms import fuzz_axioms, fuzz_symmetry
from .catalog import catalog
from .conditions import discover_fixed_circles
from .errors import ScenarioError, SMetricError
from .geometry import solve_circle_1d, trace_circle_2d
from .maps import parse_map
from .render import emit_csv, emit_svg, render_png
from .scenario import (
    BUNDLED_ORDER,
    Scenario,
    bundled_scenario_path,
    domain_points,
    load_scenario,
    run_scenario,
)
from .spaces import make_space


def _default_seed() -> int:
    return int(os.environ.get("SMETRIC_SEED", "7"))


def _parse_point(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad point {text!r}; write e.g. 0.5 or 0,1.5") from exc


def _parse_window(text: str) -> list[list[float]]:
    axes = []
    for axis in text.split(","):
        lo, _, hi = axis.partition(":")
        try:
            axes.append([float(lo), float(hi)])
        except ValueError as exc:
            raise argparse.ArgumentTypeError(
                f"bad window {text!r}; write e.g. -1:1,-1:1"
            ) from exc
    return axes


def _parse_centers(text: str) -> list[tuple[float, ...]]:
    return [_parse_point(part) for part in text.split(";")]


def _make_cli_space(args):
    return make_space(
        args.metric,
        dimension=getattr(args, "dimension", None),
        dsl_source=getattr(args, "dsl", None),
    )


def _resolve_scenario(ref: str) -> Scenario:
    path = Path(ref)
    if path.exists():
        return load_scenario(path)
    name = ref[:-5] if ref.endswith(".json") else ref
    if name in BUNDLED_ORDER:
        return load_scenario(bundled_scenario_path(name))
    raise ScenarioError(f"no scenario file or bundled scenario named {ref!r}")


# --- subcommand handlers ---------------------------------------------------------


def _render_condition_rows(check: dict) -> list[str]:
    rows = []
    for rep in check.get("reports", []):
        worst = rep["witnesses"][0] if rep["witnesses"] else None
        margin = f"  worst margin {worst['margin']!r} at {worst['points']}" if worst else ""
        h = f"  h={rep['h_param']!r}" if rep.get("h_param") is not None else ""
        rows.append(f"    {rep['condition_id']:<12} {rep['verdict']}{h}{margin}")
    for key in ("fixed", "ball_fixed", "identity", "r", "r_exact"):
        if check.get(key) is not None:
            rows.append(f"    {key:<12} {check[key]!r}")
    if check.get("circles") is not None:
        for c in check["circles"]:
            rows.append(f"    fixed circle  center={c['center']} radius={c['radius']!r}")
    return rows


def _cmd_verify(args) -> int:
    scenario = _resolve_scenario(args.scenario)
    report = run_scenario(scenario, out_dir=args.out_dir, seed=args.seed)
    for check in report.checks:
        status = "ok" if check.get("matched", True) else "MISMATCH"
        detail = "; ".join(check.get("mismatches", []))
        line = f"[{scenario.name}] check {check['index']} ({check['kind']}): {status}"
        if detail:
            line += f" ({detail})"
        if not args.quiet or status != "ok":
            print(line)
            for row in _render_condition_rows(check):
                print(row)
    print(f"[{scenario.name}] {'all checks matched' if report.all_matched else 'MISMATCHES found'}")
    return 0 if report.all_matched else 1


def _cmd_solve(args) -> int:
    space = _make_cli_space(args)
    solution = solve_circle_1d(space, args.center, args.radius)
    print("{" + ", ".join(repr(p[0]) for p in solution.points) + "}")
    if args.csv:
        emit_csv(solution.points, solution.residuals, args.csv, dimension=space.dimension)
        print(f"wrote {args.csv}")
    return 0


def _cmd_trace(args) -> int:
    space = _make_cli_space(args)
    solution = trace_circle_2d(
        space,
        args.center,
        args.radius,
        args.window,
        resolution=args.resolution,
        band_tol=args.band_tol,
    )
    max_res = max((abs(r) for r in solution.residuals), default=0.0)
    print(f"{solution.kind}: {len(solution.points)} point(s), max |residual| = {max_res!r}")
    label = args.title or f"circle r={args.radius}"
    if args.csv:
        emit_csv(solution.points, solution.residuals, args.csv, dimension=2)
        print(f"wrote {args.csv}")
    if args.svg:
        emit_svg([(label, solution.points)], args.window, args.svg, title=args.title)
        print(f"wrote {args.svg}")
    if args.png:
        render_png([(label, solution.points)], args.window, args.png, title=args.title)
        print(f"wrote {args.png}")
    return 0


def _cmd_discover(args) -> int:
    known = {entry.name: entry for entry in catalog()}
    if args.map in known:
        entry = known[args.map]
        space, mapping = entry.space, entry.map
    elif args.map_dsl:
        space = _make_cli_space(args)
        mapping = parse_map(args.map_dsl, space.dimension, space=space, name="cli map")
    else:
        raise ScenarioError(
            f"unknown catalog map {args.map!r}; known: {', '.join(sorted(known))} "
            "(or pass --map-dsl)"
        )
    domain = domain_points({"window": args.window, "step": args.step}, space.dimension)
    verdicts = discover_fixed_circles(mapping, space, domain, args.centers, tol=args.tol)
    if not verdicts:
        print("no fixed circles found on the sample")
    for v in verdicts:
        print(
            f"center={list(v.circle.center)} radius={v.circle.radius!r} "
            f"sampled_points={v.checked_points} max_displacement={v.max_displacement!r}"
        )
    return 0


def _cmd_fuzz(args) -> int:
    space = _make_cli_space(args)
    axiom_report = fuzz_axioms(
        space, args.trials, lo=args.lo, hi=args.hi, seed=args.seed, tol=args.tol
    )
    symmetry_report = fuzz_symmetry(
        space, args.trials, lo=args.lo, hi=args.hi, seed=args.seed, tol=args.tol
    )
    total = len(axiom_report.violations) + len(symmetry_report.violations)
    print(
        f"{space.describe()}: {axiom_report.n_trials + symmetry_report.n_trials} trials, "
        f"{total} violation(s)"
    )
    for violation in (axiom_report.violations + symmetry_report.violations)[:10]:
        print(
            f"  {violation.axiom}: points={[list(p) for p in violation.points]} "
            f"lhs={violation.lhs!r} rhs={violation.rhs!r}"
        )
    return 0 if total == 0 else 1


def _cmd_plot(args) -> int:
    scenario = _resolve_scenario(args.scenario)
    scenario.normalized["checks"] = []
    report = run_scenario(scenario, out_dir=args.out_dir, seed=args.seed)
    for item in report.geometry:
        print(
            f"[{scenario.name}] {item['id']}: {item['points']} point(s), "
            f"max |residual| = {item['max_abs_residual']!r}"
        )
    print(f"[{scenario.name}] outputs written to {args.out_dir}")
    return 0


def _cmd_reproduce(args) -> int:
    names = args.only or list(BUNDLED_ORDER)
    unknown = [n for n in names if n not in BUNDLED_ORDER]
    if unknown:
        raise ScenarioError(f"unknown bundled scenario(s): {', '.join(unknown)}")
    out_root = Path(args.out_dir)
    rows = []
    all_ok = True
    for name in names:
        scenario = load_scenario(bundled_scenario_path(name))
        report = run_scenario(scenario, out_dir=out_root / name, seed=args.seed)
        n_checks = len(report.checks)
        n_matched = sum(1 for c in report.checks if c.get("matched", True))
        ok = report.all_matched
        all_ok = all_ok and ok
        rows.append((name, n_checks, n_matched, "PASS" if ok else "FAIL"))
    width = max(len(r[0]) for r in rows)
    print(f"{'scenario':<{width}}  checks  matched  status")
    for name, n_checks, n_matched, status in rows:
        print(f"{name:<{width}}  {n_checks:>6}  {n_matched:>7}  {status}")
    print(f"outputs under {out_root}")
    return 0 if all_ok else 1


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smetric",
        description="S-metric circles and fixed-circle condition checking",
    )
    parser.add_argument("--version", action="version", version=f"smetric {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_metric_flags(p, dimension_default=None):
        p.add_argument("--metric", required=True, help="metric family name (see README)")
        p.add_argument("--dimension", type=int, default=dimension_default)
        p.add_argument("--dsl", help="ternary DSL source for --metric dsl")

    p = sub.add_parser("verify", help="run a scenario and compare expected verdicts")
    p.add_argument("--scenario", required=True, help="scenario path or bundled name")
    p.add_argument("--out-dir", default="smetric_out", help="directory for declared outputs")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--quiet", action="store_true", help="print mismatches only")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("solve", help="exact 1D circle solution")
    add_metric_flags(p)
    p.add_argument("--center", type=_parse_point, required=True)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--csv", help="write the solution as CSV")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("trace", help="trace a 2D circle over a grid window")
    add_metric_flags(p)
    p.add_argument("--center", type=_parse_point, required=True)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--window", type=_parse_window, required=True, help="e.g. -1:1,-1:1")
    p.add_argument("--resolution", type=int, default=512)
    p.add_argument("--band-tol", type=float, default=1e-8)
    p.add_argument("--csv")
    p.add_argument("--svg")
    p.add_argument("--png")
    p.add_argument("--title")
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("discover", help="brute-force fixed circles over a grid")
    p.add_argument("--map", required=True, help="catalog map name (or use --map-dsl)")
    p.add_argument("--map-dsl", help="DSL source overriding --map")
    p.add_argument("--metric", default="usual1d")
    p.add_argument("--dimension", type=int)
    p.add_argument("--dsl", help="metric DSL source")
    p.add_argument("--window", type=_parse_window, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--centers", type=_parse_centers, required=True, help="e.g. 0;4.5")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_discover)

    p = sub.add_parser("fuzz", help="fuzz the axioms and symmetry of a metric")
    add_metric_flags(p)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--lo", type=float, default=-3.0)
    p.add_argument("--hi", type=float, default=3.0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("plot", help="emit only a scenario's geometry outputs")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out-dir", default="smetric_out")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=_cmd_plot)

    p = sub.add_parser(
        "reproduce-paper",
        help="run every bundled scenario and emit all reports and figures",
    )
    p.add_argument("--out-dir", default="paper_out")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--only", nargs="*", help="subset of bundled scenario names")
    p.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SMetricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
