import csv
import json
import math
import os
import subprocess
import sys

import pytest

from eta_lab import cli
from eta_lab import zeros as zc


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_ln2(capsys):
    code, out, _ = run(capsys, "eval", "--sigma", "1", "--t", "0")
    assert code == 0
    value = float(out.splitlines()[0].split()[1])
    assert abs(value - 0.6931471805599453) < 1e-12
    assert "method: aitken" in out


def test_eval_json_at_zero(capsys):
    code, out, _ = run(capsys, "eval", "--sigma", "0.5", "--t", "14.134725", "--json", "--reflected", "--residual")
    assert code == 0
    doc = json.loads(out)
    assert math.hypot(doc["value"]["re"], doc["value"]["im"]) < 1e-5
    assert math.hypot(doc["reflected"]["re"], doc["reflected"]["im"]) < 1e-5
    assert doc["functional_residual"] < 1e-8
    assert doc["method"] == "aitken" and doc["terms_used"] > 0


def test_eval_zeta(capsys):
    code, out, _ = run(capsys, "eval", "--sigma", "2", "--t", "0", "--zeta", "--json")
    assert code == 0
    assert abs(json.loads(out)["zeta"]["re"] - math.pi**2 / 6) < 1e-9


def test_eval_negative_sigma(capsys):
    code, _, err = run(capsys, "eval", "--sigma", "-1", "--t", "0")
    assert code == 2
    assert "sigma" in err


def test_eval_singular_zeta(capsys):
    t = 2 * math.pi / math.log(2)
    code, _, _ = run(capsys, "eval", "--sigma", "1", "--t", repr(t), "--zeta")
    assert code == 2


def test_eval_bad_tolerance(capsys):
    code, _, _ = run(capsys, "eval", "--sigma", "1", "--t", "0", "--tolerance", "0")
    assert code == 2


def test_eval_nonconvergence_is_numerical_failure(capsys):
    code, _, _ = run(capsys, "eval", "--sigma", "0.01", "--t", "20", "--tolerance", "1e-14", "--max-terms", "64")
    assert code == 4


def test_missing_required_option(capsys):
    code, _, _ = run(capsys, "eval", "--sigma", "1")
    assert code == 2


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["param", "x", "y"]
    return [[float(v) for v in row] for row in rows[1:]]


def test_figures_panel_b_hits_origin(tmp_path, capsys):
    # default sampling (500 points); the nearest sample to the zero depends on grid alignment
    code, out, _ = run(capsys, "figures", "--index", "2", "--out-dir", str(tmp_path))
    assert code == 0
    rows = read_csv(tmp_path / "fig1b_sigma0.5.csv")
    best = min(rows, key=lambda r: math.hypot(r[1], r[2]))
    assert math.hypot(best[1], best[2]) < 1e-3
    assert abs(best[0] - 14.13) < 0.01


def test_figures_panel_a_range(tmp_path, capsys):
    code, _, _ = run(capsys, "figures", "--index", "1", "--out-dir", str(tmp_path), "--samples", "50")
    assert code == 0
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["fig1a_sigma0.25.csv", "fig1a_sigma0.5.csv", "fig1a_sigma0.75.csv", "fig1a_sigma0.csv",
                     "fig1a_sigma1.csv", "fig1a_t0.csv", "fig1a_t11.csv"]
    for name in files:
        rows = read_csv(tmp_path / name)
        if "sigma" in name:
            assert rows[0][0] == 0.0 and rows[-1][0] == 11.0
        else:
            assert rows[0][0] == 0.0 and rows[-1][0] == 1.0


def test_figures_invalid_index(tmp_path, capsys):
    code, _, _ = run(capsys, "figures", "--index", "7", "--out-dir", str(tmp_path))
    assert code == 2


@pytest.mark.skipif(os.geteuid() == 0, reason="permission bits are not enforced for root")
def test_figures_unwritable_directory_permissions(tmp_path, capsys):
    locked = tmp_path / "locked"
    locked.mkdir()
    locked.chmod(0o500)
    code, _, _ = run(capsys, "figures", "--index", "1", "--out-dir", str(locked), "--samples", "10")
    assert code == 3


def test_figures_unwritable_directory(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("not a directory")
    code, _, _ = run(capsys, "figures", "--index", "1", "--out-dir", str(blocker / "sub"), "--samples", "10")
    assert code == 3


def test_trace_csv_to_stdout(capsys):
    code, out, _ = run(capsys, "trace", "--family", "t", "--value", "0", "--samples", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "param,x,y" and len(lines) == 6
    assert all(float(line.split(",")[2]) == 0.0 for line in lines[1:])


def test_trace_to_file(tmp_path, capsys):
    out_file = tmp_path / "t.csv"
    code, out, _ = run(capsys, "trace", "--family", "sigma", "--value", "0.5", "--t-lo", "14", "--t-hi", "15",
                       "--samples", "11", "--out", str(out_file), "--json")
    assert code == 0
    assert json.loads(out)["samples"] == 11
    assert len(read_csv(out_file)) == 11


def test_trace_flag_conflicts(capsys):
    assert run(capsys, "trace", "--family", "sigma", "--value", "0.5")[0] == 2
    assert run(capsys, "trace", "--family", "t", "--value", "3", "--t-lo", "1")[0] == 2
    assert run(capsys, "trace", "--family", "sigma", "--value", "2", "--t-lo", "0", "--t-hi", "1")[0] == 2


def test_regions_explicit_partition(tmp_path, capsys):
    code, out, _ = run(capsys, "regions", "--boundaries", "0,11,15,18.5,21,24,26", "--out-dir", str(tmp_path))
    assert code == 0
    assert len(out.splitlines()) == 6 and all(line.endswith("ok") for line in out.splitlines())
    doc = json.loads((tmp_path / "region2.json").read_text())
    assert doc == {"m": 2, "t_lo": 11.0, "t_hi": 15.0,
                   "lower_boundary": "region2_lower.csv", "upper_boundary": "region2_upper.csv"}


def test_regions_invalid_partition_is_verification_failure(capsys):
    code, out, _ = run(capsys, "regions", "--boundaries", "25,27.25", "--json")
    assert code == 5
    assert json.loads(out)["valid"] is False


def test_regions_greedy(capsys):
    code, out, _ = run(capsys, "regions", "--t-start", "0", "--t-max", "26", "--step", "0.5", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["valid"] and doc["regions"][-1]["t_hi"] == 26.0


def test_regions_flag_conflicts(capsys):
    assert run(capsys, "regions")[0] == 2
    assert run(capsys, "regions", "--boundaries", "0,11", "--t-start", "0")[0] == 2
    assert run(capsys, "regions", "--boundaries", "0,x")[0] == 2
    assert run(capsys, "regions", "--t-start", "5", "--t-max", "5")[0] == 2


def test_zeros_catalog(tmp_path, capsys):
    out_file = tmp_path / "zeros.jsonl"
    code, out, _ = run(capsys, "zeros", "--t-min", "0", "--t-max", "30", "--out", str(out_file))
    assert code == 0
    catalog = zc.load_catalog(out_file)
    assert len(catalog.critical_line()) == 3
    assert len(out.splitlines()) == 3


def test_zeros_with_factor_zeros_json(capsys):
    code, out, _ = run(capsys, "zeros", "--t-max", "20", "--include-factor-zeros", "--json")
    assert code == 0
    kinds = [r["kind"] for r in json.loads(out)["records"]]
    assert kinds == ["sigma1-factor", "critical-line", "sigma1-factor"]


def test_zeros_range_limit(capsys):
    assert run(capsys, "zeros", "--t-max", "150")[0] == 2


def test_census_rectangle(capsys):
    code, out, _ = run(capsys, "census", "--rect", "0.55", "0.95", "0", "30")
    assert code == 0 and out.strip() == "0"


def test_census_rectangle_with_zero(capsys):
    code, out, _ = run(capsys, "census", "--rect", "0.1", "0.9", "10", "15", "--json")
    assert code == 0 and json.loads(out)["count"] == 1


def test_census_windows(capsys):
    code, out, _ = run(capsys, "census", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["off_line_count"] == 0 and len(doc["windows"]) == 6


def test_census_bad_rectangle(capsys):
    assert run(capsys, "census", "--rect", "0.9", "0.1", "0", "1")[0] == 2


def test_census_contour_on_zero_is_numerical_failure(capsys):
    assert run(capsys, "census", "--rect", "0.3", "0.7", repr(14.134725141734695), "15")[0] == 4


def test_verify_passes_and_is_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify", "--out", str(a))[0] == 0
    assert run(capsys, "verify", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["passed"] is True


def test_verify_corrupted_catalog_fails(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text("garbage\n")
    code, out, _ = run(capsys, "verify", "--catalog", str(bad))
    assert code == 5
    assert "[FAIL] winding_census" in out and "[PASS] symmetry" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "eta_lab", "eval", "--sigma", "2", "--t", "0", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert abs(json.loads(proc.stdout)["value"]["re"] - math.pi**2 / 12) < 1e-10
