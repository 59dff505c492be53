import csv
import json
import math
import os

import numpy as np
import pytest

from hermitewave.cli import (EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_IO, EXIT_OK,
                             RunConfig, main)
from hermitewave.semiclassics import caustic
from hermitewave.wavefunction import WaveParams


def read_csv(path):
    with open(path, encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_runconfig_round_trip():
    cfg = RunConfig(command="density", times=(0.0, 1.0, 2.0), out="x.csv")
    wire = json.dumps(cfg.to_dict(), sort_keys=True)
    back = RunConfig.from_dict(json.loads(wire))
    assert back == cfg


def test_density_deterministic(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["density", "--nx", "65", "--nt", "17", "--tmin", "-4",
            "--tmax", "4"]
    assert main(args + ["--out", str(a)]) == EXIT_OK
    assert main(args + ["--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()  # LF endings only


def test_density_layout_and_header(tmp_path):
    out = tmp_path / "d.csv"
    assert main(["density", "--nx", "33", "--nt", "5", "--tmin", "-2",
                 "--tmax", "2", "--out", str(out)]) == EXIT_OK
    header, rows = read_csv(out)
    assert header == ["x", "t", "density"]
    assert len(rows) == 33 * 5
    # row-major over (t, x): first block shares t, x ascends
    t_first = [float(r[1]) for r in rows[:33]]
    assert set(t_first) == {-2.0}
    xs = [float(r[0]) for r in rows[:33]]
    assert xs == sorted(xs)


def test_density_ridges_trace_hyperbola(tmp_path):
    out = tmp_path / "d.csv"
    assert main(["density", "--nx", "321", "--nt", "13", "--tmin", "-3",
                 "--tmax", "3", "--out", str(out)]) == EXIT_OK
    header, rows = read_csv(out)
    dx = 16.0 / 320
    per_t = {}
    for r in rows:
        per_t.setdefault(float(r[1]), []).append((float(r[0]), float(r[2])))
    p = WaveParams(n=2)
    for t, block in per_t.items():
        xs = np.array([b[0] for b in block])
        ds = np.array([b[1] for b in block])
        ridge = abs(xs[int(np.argmax(ds))])
        expect = math.sqrt(5.0) * math.hypot(1.0, t)
        assert abs(ridge - expect) <= dx


def test_density_order_zero_single_ridge(tmp_path):
    out = tmp_path / "d0.csv"
    assert main(["density", "--n", "0", "--nx", "101", "--nt", "5",
                 "--tmin", "-2", "--tmax", "2", "--out", str(out)]) == EXIT_OK
    _, rows = read_csv(out)
    per_t = {}
    for r in rows:
        per_t.setdefault(float(r[1]), []).append((float(r[0]), float(r[2])))
    for t, block in per_t.items():
        xs = [b[0] for b in block]
        ds = [b[1] for b in block]
        assert xs[int(np.argmax(ds))] == pytest.approx(0.0, abs=1e-12)


def test_density_threads_env_equivalence(tmp_path, monkeypatch):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["density", "--nx", "65", "--nt", "9"]
    monkeypatch.setenv("HERMITEWAVE_THREADS", "1")
    assert main(args + ["--out", str(a)]) == EXIT_OK
    monkeypatch.setenv("HERMITEWAVE_THREADS", "4")
    assert main(args + ["--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    monkeypatch.setenv("HERMITEWAVE_THREADS", "zero")
    assert main(args + ["--out", str(a)]) == EXIT_CONFIG


def test_density_json_format(tmp_path):
    out = tmp_path / "d.json"
    assert main(["density", "--nx", "9", "--nt", "3", "--format", "json",
                 "--out", str(out)]) == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["header"] == ["x", "t", "density"]
    assert len(payload["rows"]) == 27


def test_peaks_rows(tmp_path):
    out = tmp_path / "p.csv"
    assert main(["peaks", "--nt", "3", "--tmin", "0", "--tmax", "2",
                 "--out", str(out)]) == EXIT_OK
    header, rows = read_csv(out)
    assert header == ["t", "x_peak", "branch"]
    t0 = [(float(r[1]), int(r[2])) for r in rows if float(r[0]) == 0.0]
    assert [b for _, b in t0] == [-1, 0, 1]
    assert t0[0][0] == pytest.approx(-math.sqrt(5), abs=1e-8)
    assert t0[1][0] == pytest.approx(0.0, abs=1e-8)
    assert t0[2][0] == pytest.approx(math.sqrt(5), abs=1e-8)


def test_peaks_other_orders(tmp_path):
    out = tmp_path / "p1.csv"
    assert main(["peaks", "--n", "1", "--nt", "1", "--tmin", "0",
                 "--tmax", "0", "--out", str(out)]) == EXIT_OK
    _, rows = read_csv(out)
    assert [int(r[2]) for r in rows] == [-1, 1]
    assert float(rows[0][1]) == pytest.approx(-math.sqrt(2), abs=1e-8)

    out0 = tmp_path / "p0.csv"
    assert main(["peaks", "--n", "0", "--nt", "1", "--tmin", "0",
                 "--tmax", "0", "--out", str(out0)]) == EXIT_OK
    _, rows0 = read_csv(out0)
    assert len(rows0) == 1
    assert float(rows0[0][1]) == pytest.approx(0.0, abs=1e-10)
    assert int(rows0[0][2]) == 0


def test_caustic_artifact(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["caustic", "--nt", "5", "--tmin", "0", "--tmax", "2",
                 "--out", str(out)]) == EXIT_OK
    header, rows = read_csv(out)
    assert header == ["t", "x_plus", "x_minus"]
    last = rows[-1]
    assert float(last[0]) == 2.0
    assert float(last[1]) == pytest.approx(5.0, abs=1e-12)
    assert float(last[2]) == pytest.approx(-5.0, abs=1e-12)


def test_paths_stay_inside_caustic(tmp_path):
    out = tmp_path / "paths.csv"
    assert main(["paths", "--thetas", "64", "--nt", "33", "--tmin", "-4",
                 "--tmax", "4", "--out", str(out)]) == EXIT_OK
    header, rows = read_csv(out)
    assert header == ["theta", "t", "x", "p"]
    p = WaveParams(n=2)
    for r in rows:
        t, x = float(r[1]), float(r[2])
        assert abs(x) <= caustic(p, t).x_plus + 1e-9


def test_phasespace_on_energy_shell(tmp_path):
    out = tmp_path / "ps.csv"
    assert main(["phasespace", "--thetas", "128", "--nt", "1", "--tmin", "0",
                 "--tmax", "0", "--out", str(out)]) == EXIT_OK
    header, rows = read_csv(out)
    assert header == ["t", "theta", "x", "p"]
    assert len(rows) == 128
    wp = WaveParams(n=2)
    e = 1.25
    for r in rows:
        x, mom = float(r[2]), float(r[3])
        h = mom ** 2 / (2 * wp.m) + 0.5 * wp.m * wp.omega ** 2 * x ** 2
        assert h == pytest.approx(e, abs=1e-12)


def test_observables_report(tmp_path):
    out = tmp_path / "obs.json"
    assert main(["observables", "--out", str(out)]) == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["all_within_tolerance"] is True
    assert rep["worst_numeric_gap"] < 1e-8
    assert rep["heisenberg_ok"] is True
    ns = [pkt["n"] for pkt in rep["packets"]]
    assert ns == [0, 1, 2]
    assert rep["airy"]["v"] == 1.0


def test_observables_impossible_tolerance(tmp_path):
    out = tmp_path / "obs.json"
    assert main(["observables", "--tol", "1e-30",
                 "--out", str(out)]) == EXIT_CHECK_FAILED
    rep = json.loads(out.read_text())
    assert rep["all_within_tolerance"] is False


def test_verify_defaults_pass(tmp_path):
    out = tmp_path / "v.json"
    assert main(["verify", "--out", str(out)]) == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["passed"] is True
    names = [c["name"] for c in rep["checks"]]
    assert names == ["normalization", "t0_identity", "residual_convergence",
                     "spectral_oracle", "caustic_peak_identity"]
    assert all(c["passed"] for c in rep["checks"])


def test_verify_corrupt_phase_fails(tmp_path):
    out = tmp_path / "v.json"
    assert main(["verify", "--corrupt-phase",
                 "--out", str(out)]) == EXIT_CHECK_FAILED
    rep = json.loads(out.read_text())
    failed = {c["name"] for c in rep["checks"] if not c["passed"]}
    assert failed == {"residual_convergence"}


def test_verify_small_box_refusal_diagnostic(tmp_path):
    out = tmp_path / "v.json"
    assert main(["verify", "--xmin", "-5", "--xmax", "5", "--nx", "1024",
                 "--out", str(out)]) == EXIT_CHECK_FAILED
    rep = json.loads(out.read_text())
    oracle = [c for c in rep["checks"] if c["name"] == "spectral_oracle"][0]
    assert oracle["passed"] is False
    assert "box" in oracle["diagnostic"]


def test_config_errors(tmp_path):
    assert main(["density", "--n", "-3",
                 "--out", str(tmp_path / "x.csv")]) == EXIT_CONFIG
    assert main(["verify", "--format", "csv"]) == EXIT_CONFIG
    assert main(["observables", "--format", "csv"]) == EXIT_CONFIG
    assert main(["density", "--nx", "1",
                 "--out", str(tmp_path / "x.csv")]) == EXIT_CONFIG
    assert main(["paths", "--thetas", "2",
                 "--out", str(tmp_path / "x.csv")]) == EXIT_CONFIG


def test_unwritable_path_is_io_error(tmp_path):
    missing = tmp_path / "no" / "such" / "dir" / "x.csv"
    assert main(["caustic", "--nt", "3", "--tmin", "0", "--tmax", "1",
                 "--out", str(missing)]) == EXIT_IO


def test_unknown_subcommand_exits_two():
    assert main(["frobnicate"]) == 2
