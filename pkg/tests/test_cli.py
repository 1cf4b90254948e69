import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from nullfront.cli import run
from nullfront.export import STATE_CSV_HEADER, states_from_csv, states_to_csv
from nullfront.framed import FramedCurve, sample_states

EX3_SIGMA_ROOT = 0.837516256575684


def test_singular_example3(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert run(["singular", "--curve", "example3", "--sheet", "plus", "--range", "-1", "1", "--out", str(out)]) == 0
    reports = json.loads(out.read_text())
    tails = [r for r in reports if r["class"] == "Swallowtail"]
    at_zero = [r for r in tails if abs(r["s0"]) < 1e-9]
    assert len(at_zero) == 1 and at_zero[0]["lambda0"] == 0.0
    assert sorted(r["s0"] for r in tails if abs(r["s0"]) >= 1e-9) == pytest.approx(
        [-EX3_SIGMA_ROOT, EX3_SIGMA_ROOT], abs=1e-9
    )
    assert all(r["class"] != "HigherDegenerate" for r in reports)


def test_front_example2_obj(tmp_path):
    out = tmp_path / "e2.obj"
    argv = ["front", "--curve", "example2", "--sheet", "plus", "--s-range", "0", "6.2832", "--l-range", "-2", "2"]
    assert run(argv + ["--grid", "128", "32", "--format", "obj", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    objects = [ln.split()[1] for ln in lines if ln.startswith("o ")]
    assert objects[:2] == ["front", "singular_locus"]
    front_end = lines.index("o singular_locus")
    assert sum(ln.startswith("v ") for ln in lines[:front_end]) == 4096
    assert sum(ln.startswith("f ") for ln in lines) == 127 * 31
    assert any(ln.startswith("l ") for ln in lines[front_end:])


def test_front_csv(tmp_path):
    out = tmp_path / "mesh.csv"
    argv = ["front", "--curve", "example1", "--grid", "4", "3", "--format", "csv", "--out", str(out)]
    assert run(argv) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "s,lambda,u1,u2,u3,u4,x,y,z,omega"
    assert len(rows) == 13
    first = rows[1].split(",")
    assert all("e" in x for x in first)
    assert float(first[0]) == -1.0


def test_front_rejects_json(tmp_path):
    assert run(["front", "--curve", "example1", "--format", "json", "--out", str(tmp_path / "x")]) == 2


def test_verify_example1(capsys):
    assert run(["verify", "--curve", "example1"]) == 0
    out = capsys.readouterr().out
    assert "<g,g>+1" in out or "<g,g>" in out
    assert out.strip().endswith("PASS")


def test_verify_failure_exit_code(tmp_path):
    spec = tmp_path / "bad.json"
    doc = {"gamma": ["1", "0", "0", "0"], "v1": ["0", "0", "1", "0"], "v2": ["1", "0", "0", "0"], "interval": [0, 1]}
    spec.write_text(json.dumps(doc))
    assert run(["verify", "--spec", str(spec)]) == 1


def test_catalog_listing(capsys):
    assert run(["catalog"]) == 0
    out = capsys.readouterr().out
    for name in ("example1", "example2", "example3", "geodesic"):
        assert name in out


def test_usage_errors(capsys):
    assert run(["frobnicate"]) == 2
    assert run(["verify", "--curve", "nosuch"]) == 2
    assert run(["verify", "--curve", "example1", "--spec", "x.json"]) == 2
    assert run(["front", "--curve", "example1", "--tol", "-1"]) == 2
    assert "usage" in capsys.readouterr().err


def test_numeric_error_exit_and_no_partial_file(tmp_path):
    out = tmp_path / "geo.json"
    assert run(["singular", "--curve", "geodesic", "--out", str(out)]) == 3
    assert not out.exists()
    assert list(tmp_path.iterdir()) == []


def test_distance_locus_point(capsys):
    assert run(["distance", "--curve", "example2", "--at", "pi/4"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["levels"] == 4
    assert doc["d"][4] == pytest.approx(-244.8, abs=1e-9)


def test_distance_off_ads(capsys):
    assert run(["distance", "--curve", "example1", "--at", "0", "--v0", "1", "1", "0", "0"]) == 1


def test_distance_needs_parameter():
    assert run(["distance", "--curve", "example1"]) == 2


def test_frame_csv(capsys):
    assert run(["frame", "--curve", "example2", "--grid", "5"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "s,alpha,ell,m,n"
    assert len(rows) == 6
    assert abs(float(rows[1].split(",")[1])) < 1e-14


def test_frenet_unit_speed_required(capsys):
    assert run(["frenet", "--curve", "example1"]) == 1


def test_frenet_spec(tmp_path, capsys):
    spec = tmp_path / "circle.json"
    spec.write_text(json.dumps({"gamma": ["sqrt(2)", "0", "cos(s)", "sin(s)"], "interval": [0, 1]}))
    assert run(["frenet", "--spec", str(spec), "--grid", "3"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert len(rows) == 4


def test_integrate_quad(tmp_path):
    quad = tmp_path / "quad.json"
    quad.write_text(json.dumps({"alpha": "1", "ell": "0", "m": "0", "n": "0", "epsilon": 1}))
    out = tmp_path / "states.csv"
    assert run(["integrate", "--quad", str(quad), "--range", "0", "1", "--step", "0.01", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.splitlines()[0] == ",".join(STATE_CSV_HEADER)
    states = states_from_csv(text)
    assert len(states) == 101
    np.testing.assert_allclose(states[-1].gamma, [math.cosh(1), 0, 0, math.sinh(1)], atol=1e-10)


def test_integrate_reloads_as_samples(tmp_path, capsys):
    out = tmp_path / "e2.csv"
    assert run(["integrate", "--curve", "example2", "--range", "0", "1", "--step", "0.005", "--out", str(out)]) == 0
    assert run(["verify", "--samples", str(out)]) == 0


def test_congruence(tmp_path, capsys):
    fc = FramedCurve.from_catalog("example1")
    R = np.eye(4)
    R[2:, 2:] = [[0.6, -0.8], [0.8, 0.6]]
    states = sample_states(fc.transformed(R), 801)
    path = tmp_path / "moved.csv"
    path.write_text(states_to_csv(states))
    assert run(["congruence", "--curve", "example1", "--other", str(path), "--at", "0.5"]) == 0
    doc = json.loads(capsys.readouterr().out)
    np.testing.assert_allclose(doc["matrix"], R, atol=1e-6)
    assert run(["congruence", "--curve", "example1", "--other", "example3"]) == 1


def test_determinism(tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / f"run{k}.json"
        assert run(["singular", "--curve", "example2", "--range", "0", "2*pi", "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_output_file_permissions(tmp_path):
    out = tmp_path / "r.json"
    assert run(["singular", "--curve", "example1", "--out", str(out)]) == 0
    assert os.stat(out).st_mode & 0o044


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "nullfront", "singular", "--curve", "geodesic"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 3
    assert proc.stdout == ""
