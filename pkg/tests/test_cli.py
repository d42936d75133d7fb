"""End-to-end tests for the latslice command line."""
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from latslice import cli


def run_cli(argv, capsys):
    rc = cli.main(argv)
    out = capsys.readouterr().out
    return rc, out


def run_json(argv, capsys):
    rc, out = run_cli(argv, capsys)
    assert rc == 0, out
    return json.loads(out)


def test_generate_validate_dim_round_trip(tmp_path, capsys):
    pts = tmp_path / "line.txt"
    rep = run_json(["generate", "--kind", "unit_line",
                    "--params", '{"m": 2.0, "count": 50}',
                    "--out", str(pts)], capsys)
    assert rep["results"]["points"] == 50
    assert rep["artifacts"]["points_file"] == str(pts)
    assert rep["provenance"]["tool"] == "latslice"

    val = run_json(["validate", "--in", str(pts)], capsys)
    assert val["results"]["separated"] is True
    assert val["results"]["min_distance"] == pytest.approx(1.0, abs=1e-12)

    csv = tmp_path / "prof.csv"
    dim = run_json(["dim", "--in", str(pts), "--scales", "dyadic:32",
                    "--out", str(csv)], capsys)
    lines = csv.read_text().strip().splitlines()
    assert lines[0] == "scale,count,ratio"
    assert len(lines) == 6                  # header + scales 2..32
    assert dim["results"]["scales"] == 5
    assert dim["results"]["top_scale"] == 32.0
    # the csv round-trips the library profile
    from latslice import dyadic_scales, mass_dim_profile, read_points
    prof = mass_dim_profile(read_points(str(pts)), scales=dyadic_scales(32.0))
    for row, scale, count, ratio in zip(
            lines[1:], prof.scales, prof.counts, prof.ratios):
        s, c, r = row.split(",")
        assert float(s) == scale
        assert int(c) == count
        assert float(r) == pytest.approx(ratio, rel=1e-11)
    assert dim["results"]["estimate"] == prof.estimate
    assert dim["results"]["top_count"] == int(prof.counts[-1])


def test_dim_estimate_matches_library(tmp_path, capsys):
    pts = tmp_path / "sq.txt"
    run_json(["generate", "--kind", "cartesian",
              "--params", '{"a_values": [0,1,2,3,4,5,6,7], "b_values": [0,1,2,3,4,5,6,7]}',
              "--out", str(pts)], capsys)
    rep = run_json(["dim", "--in", str(pts), "--scales", "dyadic:8"], capsys)
    from latslice import dyadic_scales, mass_dim_profile, read_points
    prof = mass_dim_profile(read_points(str(pts)), scales=dyadic_scales(8.0))
    assert rep["results"]["estimate"] == prof.estimate
    assert rep["results"]["top_count"] == 64


def test_results_block_is_deterministic(tmp_path, capsys):
    pts = tmp_path / "line.txt"
    run_json(["generate", "--kind", "unit_line",
              "--params", '{"m": 1.0, "count": 40}', "--out", str(pts)], capsys)
    argv = ["survey", "--in", str(pts), "--N", "16", "--M", "8",
            "--grid", "32x32"]
    a = run_json(argv, capsys)
    b = run_json(argv, capsys)
    assert a["results"] == b["results"]
    assert a["params"] == b["params"]


def test_slice_tube_and_floor(tmp_path, capsys):
    pts = tmp_path / "line.txt"
    run_json(["generate", "--kind", "unit_line",
              "--params", '{"m": 2.0, "count": 50}', "--out", str(pts)], capsys)

    sl = tmp_path / "sl.txt"
    rep = run_json(["slice", "--in", str(pts), "--tube=-0.5,-0.2",
                    "--out", str(sl)], capsys)
    assert rep["results"]["mode"] == "tube"
    assert rep["results"]["count"] == 50    # tube along the line catches all
    assert sl.read_text().startswith("# x y")

    fl = tmp_path / "fl.txt"
    rep2 = run_json(["slice", "--in", str(pts), "--floor", "0.5,0.1",
                     "--x-max", "10", "--out", str(fl)], capsys)
    assert rep2["results"]["mode"] == "floor"
    assert rep2["results"]["heights"] == [0]
    assert fl.read_text().splitlines()[0] == "# distinct integer heights"


def test_slice_requires_exactly_one_mode(tmp_path, capsys):
    pts = tmp_path / "p.txt"
    run_json(["generate", "--kind", "unit_line",
              "--params", '{"m": 1.0, "count": 5}', "--out", str(pts)], capsys)
    rc, _ = run_cli(["slice", "--in", str(pts)], capsys)
    assert rc == 2
    rc2, _ = run_cli(["slice", "--in", str(pts), "--tube=1,0",
                      "--floor", "1,0"], capsys)
    assert rc2 == 2


def test_survey_report_and_cells(tmp_path, capsys):
    pts = tmp_path / "grid.txt"
    vals = json.dumps(list(range(17)))
    run_json(["generate", "--kind", "cartesian",
              "--params", f'{{"a_values": {vals}, "b_values": {vals}}}',
              "--out", str(pts)], capsys)
    out = tmp_path / "survey.json"
    cells = tmp_path / "cells.csv"
    rep = run_json(["survey", "--in", str(pts), "--N", "16", "--M", "16",
                    "--grid", "24x20", "--out", str(out),
                    "--cells", str(cells)], capsys)
    r = rep["results"]
    assert r["mean_exact_v"] <= r["bound"] + 1e-9
    assert r["good_fraction"] >= 1.0 - 1.0 / r["k"]
    saved = json.loads(out.read_text())
    assert saved["results"] == r
    rows = cells.read_text().strip().splitlines()
    assert rows[0] == "i,j,count"
    assert len(rows) == 1 + 24 * 20


def test_survey_mc_mode(tmp_path, capsys):
    pts = tmp_path / "p.txt"
    run_json(["generate", "--kind", "unit_line",
              "--params", '{"m": 1.0, "count": 30}', "--out", str(pts)], capsys)
    rep = run_json(["survey", "--in", str(pts), "--N", "16", "--M", "8",
                    "--mc", "500", "--seed", "9"], capsys)
    assert rep["results"]["mc_std_error"] > 0.0


def test_ff_verify_passes(capsys):
    rep = run_json(["ff", "--p", "7", "--set", "random:0.4:3",
                    "--verify", "identity,chebyshev:2.5"], capsys)
    r = rep["results"]
    assert r["ok"] is True
    assert r["identity"]["total"] == r["identity"]["expected"]
    assert r["chebyshev"]["good_fraction"] >= 1.0 - 1.0 / 2.5


def test_ff_full_set(capsys):
    rep = run_json(["ff", "--p", "5", "--set", "full",
                    "--verify", "identity"], capsys)
    assert rep["results"]["cardinality"] == 25
    assert rep["results"]["identity"]["expected"] == 125


def test_levels_empty_on_axis_tube(tmp_path, capsys):
    pts = tmp_path / "line.txt"
    run_json(["generate", "--kind", "unit_line",
              "--params", '{"m": 2.0, "count": 50}', "--out", str(pts)], capsys)
    rep = run_json(["levels", "--in", str(pts), "--u=-0.5",
                    "--alpha", "0", "--psi", "1", "--bound", "40"], capsys)
    # the line sits on the open lower edge of t_{u,0}, so the slice is empty
    assert rep["results"]["levels"] == []


def test_implicit_descriptor_flow(tmp_path, capsys):
    desc = tmp_path / "stair.json"
    rep = run_json(["generate", "--kind", "parabolic_staircase",
                    "--params", '{"m_max": 1024}', "--mode", "implicit",
                    "--out", str(desc)], capsys)
    assert rep["results"]["size_estimate"] == 1024 * 1025 / 2.0
    saved = json.loads(desc.read_text())
    assert saved["format"] == "latslice-implicit-set"

    prof = tmp_path / "prof.csv"
    dim = run_json(["dim", "--in", str(desc), "--scales",
                    "dyadic:1048576", "--out", str(prof)], capsys)
    last = prof.read_text().strip().splitlines()[-1].split(",")
    assert float(last[0]) == 2.0 ** 20
    assert int(last[1]) == 524800
    assert float(last[2]) == pytest.approx(
        math.log(524800) / math.log(2.0 ** 20), abs=1e-12)
    assert dim["results"]["top_count"] == 524800


def test_repro_example2(capsys):
    rc, out = run_cli(["repro", "example2"], capsys)
    assert rc == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert all(l.startswith("[PASS] criterion") for l in lines)


def test_repro_single_criterion(capsys):
    rc, out = run_cli(["repro", "criterion5"], capsys)
    assert rc == 0
    assert out.strip().startswith("[PASS] criterion 05")


def test_repro_rejects_unknown_recipe(capsys):
    rc, _ = run_cli(["repro", "criterion99"], capsys)
    assert rc == 2
    rc2, _ = run_cli(["repro", "nonsense"], capsys)
    assert rc2 == 2


def test_missing_input_gives_io_exit(tmp_path, capsys):
    rc, _ = run_cli(["dim", "--in", str(tmp_path / "nope.txt"),
                     "--scales", "dyadic:8"], capsys)
    assert rc == 4


def test_bad_params_json_gives_config_exit(tmp_path, capsys):
    rc, _ = run_cli(["generate", "--kind", "unit_line",
                     "--params", "not json", "--out",
                     str(tmp_path / "x.txt")], capsys)
    assert rc == 2
    assert not (tmp_path / "x.txt").exists()


def test_wrong_param_names_give_config_exit(tmp_path, capsys):
    rc, _ = run_cli(["generate", "--kind", "unit_line",
                     "--params", '{"slope": 2.0, "count": 5}',
                     "--out", str(tmp_path / "x.txt")], capsys)
    assert rc == 2
    assert not (tmp_path / "x.txt").exists()


def test_unknown_kind_exits_via_argparse(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "latslice.cli", "generate", "--kind",
         "nonsense", "--out", str(tmp_path / "x.txt")],
        capture_output=True, text=True)
    assert proc.returncode == 2
    assert not (tmp_path / "x.txt").exists()


def test_version_flag():
    proc = subprocess.run(
        [sys.executable, "-m", "latslice.cli", "--version"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "latslice 0.1.0"


def test_threads_env_recorded(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("LATSLICE_THREADS", "4")
    pts = tmp_path / "p.txt"
    rep = run_json(["generate", "--kind", "unit_line",
                    "--params", '{"m": 1.0, "count": 3}',
                    "--out", str(pts)], capsys)
    assert rep["provenance"]["threads"] == "4"


def test_emit_profile_csv_rejects_empty(tmp_path):
    from latslice.dimension import DimensionProfile
    empty = DimensionProfile(
        scales=np.array([]), counts=np.array([], dtype=np.int64),
        ratio_scales=np.array([]), ratios=np.array([]),
        estimate=0.0, method="ratio_max_tail", tail_start=0)
    with pytest.raises(ValueError):
        cli.emit_profile_csv(empty, str(tmp_path / "e.csv"))
    assert not (tmp_path / "e.csv").exists()
