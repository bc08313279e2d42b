import json

import pytest

from smetric.cli import main


def test_solve_prints_the_point_set(capsys):
    code = main(["solve", "--metric", "usual1d", "--center", "4.5", "--radius", "11"])
    assert code == 0
    assert capsys.readouterr().out.splitlines()[0] == "{-1.0, 10.0}"


def test_solve_writes_csv(tmp_path, capsys):
    target = tmp_path / "circle.csv"
    code = main(
        ["solve", "--metric", "usual1d", "--center", "0", "--radius", "2", "--csv", str(target)]
    )
    assert code == 0
    assert target.read_text().splitlines()[1:] == ["-1.0,0.0", "1.0,0.0"]


def test_verify_bundled_scenario(tmp_path, capsys):
    code = main(["verify", "--scenario", "exm6_t1", "--out-dir", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "all checks matched" in out
    assert "thm1_S1" in out and "Holds" in out  # condition rows are rendered
    assert (tmp_path / "exm6_t1_report.json").exists()


def test_verify_quiet_prints_only_summary(tmp_path, capsys):
    code = main(["verify", "--scenario", "exm8_t4", "--out-dir", str(tmp_path), "--quiet"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.strip() == "[exm8_t4] all checks matched"


def test_verify_accepts_json_suffix_and_paths(tmp_path, capsys):
    code = main(["verify", "--scenario", "exm8_t4.json", "--out-dir", str(tmp_path)])
    assert code == 0


def test_verify_detects_mismatches(tmp_path, capsys):
    scenario = {
        "name": "wrong",
        "map": {"catalog": "T1"},
        "checks": [
            {
                "kind": "thm1",
                "circle": {"center": [0], "radius": 2},
                "expect": {"thm1_S1": "Fails"},
            }
        ],
    }
    path = tmp_path / "wrong.json"
    path.write_text(json.dumps(scenario))
    code = main(["verify", "--scenario", str(path), "--out-dir", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 1
    assert "MISMATCH" in out


def test_unknown_scenario_reference(capsys):
    code = main(["verify", "--scenario", "nope_never"])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["solve", "--metric", "usual1d"])  # missing required flags
    assert excinfo.value.code == 2
    with pytest.raises(SystemExit) as excinfo:
        main(["not-a-command"])
    assert excinfo.value.code == 2


def test_trace_writes_outputs(tmp_path, capsys):
    csv = tmp_path / "d.csv"
    svg = tmp_path / "d.svg"
    code = main(
        [
            "trace",
            "--metric", "symskew2d",
            "--center", "0,0",
            "--radius", "1",
            "--window=-1:1,-1:1",
            "--resolution", "64",
            "--csv", str(csv),
            "--svg", str(svg),
        ]
    )
    assert code == 0
    assert csv.exists() and svg.exists()
    assert "point(s)" in capsys.readouterr().out


def test_discover_lists_circles(capsys):
    code = main(
        [
            "discover",
            "--map", "T1",
            "--window=-12:12",
            "--step", "0.25",
            "--centers", "0;4.5",
        ]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "radius=2.0" in out and "radius=11.0" in out


def test_discover_with_dsl_map(capsys):
    code = main(
        [
            "discover",
            "--map", "custom",
            "--map-dsl", "x in {-1, 1} -> x ; otherwise -> 10",
            "--metric", "usual1d",
            "--window=-3:3",
            "--step", "0.25",
            "--centers", "0",
        ]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "radius=2.0" in out


def test_fuzz_clean_metric_exits_zero(capsys):
    code = main(["fuzz", "--metric", "exp2d", "--trials", "300", "--seed", "7"])
    assert code == 0
    assert "0 violation(s)" in capsys.readouterr().out


def test_fuzz_flags_bad_dsl_metric(capsys):
    code = main(
        [
            "fuzz",
            "--metric", "dsl",
            "--dimension", "1",
            "--dsl", "x - z",
            "--trials", "200",
            "--seed", "7",
        ]
    )
    assert code == 1
    assert "violation" in capsys.readouterr().out


def test_plot_emits_geometry_only(tmp_path, capsys):
    code = main(["plot", "--scenario", "intro_inversion", "--out-dir", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "intro_unit_circle.svg").exists()
    assert (tmp_path / "intro_unit_circle.png").exists()
    report = json.loads((tmp_path / "intro_inversion_report.json").read_text())
    assert report["checks"] == []


def test_reproduce_paper_subset(tmp_path, capsys):
    code = main(
        [
            "reproduce-paper",
            "--out-dir", str(tmp_path),
            "--only", "exm8_t4", "exm10_t7",
        ]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "exm8_t4" in out and "PASS" in out
    assert (tmp_path / "exm8_t4" / "exm8_t4_report.json").exists()


def test_reproduce_paper_rejects_unknown_name(capsys):
    code = main(["reproduce-paper", "--only", "nope"])
    assert code == 1
    assert "unknown bundled scenario" in capsys.readouterr().err
