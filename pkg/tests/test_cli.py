import json
import math

import numpy as np
import pytest

from tensorgeo.cli import main
from tensorgeo.polytope import Region, simplex


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestUsage:
    def test_no_arguments(self, capsys):
        assert main([]) == 2

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit):
            main(["frobnicate"])

    def test_missing_polytope(self, capsys):
        code = main(["measure", "--j", "1"])
        assert code == 2


class TestMeasure:
    def test_builtin_cube(self, capsys):
        code, out = run(capsys, "measure", "--builtin", "cube2", "--j", "1")
        assert code == 0
        report = json.loads(out)
        assert report["coordinates"][0]["value"] == pytest.approx(2.0)
        assert report["exact"] is True
        assert report["schema_version"] == 1

    def test_polytope_file(self, tmp_path, capsys):
        path = tmp_path / "poly.json"
        path.write_text(json.dumps(simplex(2).to_json()))
        code, out = run(capsys, "measure", "--polytope", str(path), "--j", "2")
        assert code == 0
        assert json.loads(out)["coordinates"][0]["value"] == pytest.approx(0.5)

    def test_region_file(self, tmp_path, capsys):
        rpath = tmp_path / "region.json"
        rpath.write_text(json.dumps(Region.box([0, 0], [0.5, 1]).to_json()))
        code, out = run(capsys, "measure", "--builtin", "cube2", "--j", "2",
                        "--region", str(rpath))
        assert code == 0
        assert json.loads(out)["coordinates"][0]["value"] == pytest.approx(0.5)

    def test_bad_file(self, capsys):
        assert main(["measure", "--polytope", "/nonexistent.json"]) == 2


class TestCoeff:
    def test_d_table_csv(self, capsys):
        code, out = run(capsys, "coeff", "d", "--n", "3", "--j", "1", "--k", "2",
                        "--s", "2", "--l", "0")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "i,m,value"
        assert len(lines) == 4  # (0,0), (0,1), (1,1)

    def test_alpha(self, capsys):
        code, out = run(capsys, "coeff", "alpha", "--n", "2", "--j", "0", "--k", "1")
        assert code == 0
        value = float(out.strip().splitlines()[1].split(",")[-1])
        assert value == pytest.approx(2 / math.pi)

    def test_out_file(self, tmp_path, capsys):
        path = tmp_path / "table.csv"
        code, _ = run(capsys, "coeff", "kappa", "--n", "3", "--k", "2", "--s", "2",
                      "--out", str(path))
        assert code == 0
        assert path.read_text().startswith("m,value")


class TestVerifyCommands:
    def test_crofton_pass(self, tmp_path, capsys):
        path = tmp_path / "report.json"
        code, out = run(capsys, "crofton-verify", "--builtin", "cube2",
                        "--k", "1", "--j", "0", "--samples", "20000",
                        "--seed", "7", "--out", str(path))
        assert code == 0
        report = json.loads(path.read_text())
        assert report["passed"] is True
        assert report["config"]["samples"] == 20000
        assert report["schema_version"] == 1

    def test_kinematic_pass(self, capsys):
        code, out = run(capsys, "kinematic-verify", "--builtin", "cube2",
                        "--builtin2", "cube2", "--rotate2", "5", "--j", "0",
                        "--samples", "20000", "--seed", "3")
        assert code == 0
        assert json.loads(out)["passed"] is True

    def test_independence(self, capsys):
        code, out = run(capsys, "independence", "--n", "2", "--p", "2",
                        "--trials", "6", "--seed", "1")
        assert code == 0
        report = json.loads(out)
        assert report["rank"] == report["expected_count"] == 10

    def test_steiner(self, capsys):
        code, out = run(capsys, "steiner-check", "--builtin", "cube2",
                        "--eps", "0.5", "--samples", "200000", "--seed", "2")
        assert code == 0
        report = json.loads(out)
        assert report["passed"] is True
        assert report["steiner_volume"][0] == pytest.approx(1 + 2 + math.pi / 4, rel=1e-12)


class TestReproducibility:
    def test_same_seed_same_report(self, capsys):
        code1, out1 = run(capsys, "crofton-verify", "--builtin", "cube2",
                          "--k", "1", "--j", "0", "--samples", "5000", "--seed", "9")
        code2, out2 = run(capsys, "crofton-verify", "--builtin", "cube2",
                          "--k", "1", "--j", "0", "--samples", "5000", "--seed", "9")
        r1, r2 = json.loads(out1), json.loads(out2)
        for r in (r1, r2):
            r.pop("wall_time_s")
        assert r1 == r2

    def test_env_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("TENSORGEO_SEED", "42")
        code, out = run(capsys, "independence", "--n", "2", "--p", "0")
        assert code == 0
        assert json.loads(out)["config"]["seed"] == 42
