from __future__ import annotations

import csv
import io
import json

import numpy as np
import pytest
from click.testing import CliRunner

from mvlaguerre.cli import main
from mvlaguerre.serialize import matrix_from_json, poly_from_json


@pytest.fixture()
def runner():
    return CliRunner()


def test_verify_passes_and_reports(runner):
    res = runner.invoke(main, ["verify", "--example", "2", "--N", "2", "--nmax", "2"])
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    assert doc["summary"]["failed"] == 0 and doc["summary"]["total"] > 50
    assert doc["family"]["label"] == "example2"
    assert {c["detail"]["suite"] for c in doc["checks"]} == {"structure", "pearson", "mvop", "diffops", "numeric"}


def test_verify_csv_and_out_file(runner, tmp_path):
    out = tmp_path / "report.csv"
    res = runner.invoke(main, ["verify", "--example", "3", "--N", "2", "--nmax", "2", "--suite", "pearson",
                               "--format", "csv", "--out", str(out)])
    assert res.exit_code == 0
    rows = list(csv.DictReader(out.open()))
    assert rows and all(r["status"] == "pass" and r["suite"] == "pearson" for r in rows)


def test_verify_variants_exits_nonzero(runner):
    res = runner.invoke(main, ["verify", "--example", "1", "--N", "3", "--nmax", "2", "--suite", "variants"])
    assert res.exit_code == 1


def test_verify_flags_negative_delta(runner, tmp_path):
    spec = tmp_path / "bad.json"
    spec.write_text(json.dumps({"N": 2, "alpha": "1", "nu": "1", "mu_squared": ["1", "1"],
                                "c_over_d": "1", "delta": ["1", "-1"]}))
    res = runner.invoke(main, ["verify", "--spec", str(spec), "--nmax", "1"])
    assert res.exit_code == 1
    doc = json.loads(res.output)
    failed = [c["identity"] for c in doc["checks"] if c["status"] == "fail"]
    assert "delta_k > 0 at every level" in failed


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "--example", "1", "--suite", "bogus"],
        ["verify"],
        ["verify", "--example", "1", "--levels", "-1"],
        ["eval", "--example", "1", "--x", "-1"],
        ["generate", "--example", "2", "--alpha", "half"],
    ],
)
def test_usage_errors(runner, args):
    assert runner.invoke(main, args).exit_code == 2


def test_generate_json_round_trip(runner):
    res = runner.invoke(main, ["generate", "--example", "3", "--N", "2", "--nmax", "3", "--levels", "0-1"])
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    assert [t["level"] for t in doc["tables"]] == [0, 1]
    t0 = doc["tables"][0]
    polys = [poly_from_json(p) for p in t0["P"]]
    assert [p.degree for p in polys] == [0, 1, 2, 3]
    assert len(t0["C"]) == 3 and len(t0["H"]) == 4
    h = matrix_from_json(t0["H"][2])
    assert (h == h.T).all()


def test_generate_csv_rows(runner):
    res = runner.invoke(main, ["generate", "--example", "1", "--N", "2", "--nmax", "2", "--format", "csv"])
    assert res.exit_code == 0
    rows = list(csv.reader(io.StringIO(res.output)))
    assert rows[0] == ["level", "quantity", "n", "i", "j", "power", "value"]
    quantities = {r[1] for r in rows[1:]}
    assert quantities == {"P", "H", "B", "C", "Gamma", "Lambda", "K"}


def test_eval_values(runner):
    res = runner.invoke(main, ["eval", "--example", "2", "--N", "2", "--nmax", "1", "--x", "2.5"])
    assert res.exit_code == 0
    lev = json.loads(res.output)["levels"][0]
    assert np.allclose(lev["P"][0], np.eye(2))
    gen = json.loads(runner.invoke(main, ["generate", "--example", "2", "--N", "2", "--nmax", "1"]).output)
    b0 = matrix_from_json(gen["tables"][0]["B"][0]).astype(float)
    assert np.allclose(lev["P"][1], 2.5 * np.eye(2) - b0)
    zero = json.loads(runner.invoke(main, ["eval", "--example", "2", "--x", "0"]).output)
    assert np.allclose(zero["levels"][0]["W"], 0)


def test_version(runner):
    res = runner.invoke(main, ["--version"])
    assert res.exit_code == 0 and "version" in res.output
