import json
import math
import os

import numpy as np
import pytest

from photocool import cli, csvio, figures
from photocool.config import load
from conftest import CONFIGS, GOLDEN


def cfg(name):
    return os.path.join(CONFIGS, name)


def write_json(tmp_path, data, name="c.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def run(*argv):
    return cli.main([str(a) for a in argv])


class TestReport:
    def test_fig2a_echo(self, tmp_path, capsys):
        assert run("report", "--config", cfg("fig2a_normalized.json"), "--out", tmp_path) == 0
        doc = json.loads((tmp_path / "report.json").read_text())["normalized"]
        assert (doc["b"], doc["phi"], doc["d"]) == (0.01, 1.0, 1.0)
        assert "phi" in capsys.readouterr().out

    def test_drive_off_no_cooling(self, tmp_path, capsys):
        assert run("report", "--config", cfg("undriven_thermal.json"), "--out", tmp_path) == 0
        out = capsys.readouterr().out
        assert "no cooling" in out
        doc = json.loads((tmp_path / "report.json").read_text())
        assert doc["quantum"]["n_min"] == "inf" and doc["quantum"]["no_cooling"] is True
        assert doc["classical"]["T_eff"] == pytest.approx(300.0, rel=1e-6)

    def test_malformed_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"normalized": {\n  "b": 0.01,\n  "phi" 1.0}}')
        assert run("report", "--config", bad, "--out", tmp_path) == 2
        err = capsys.readouterr().err
        assert "line 3" in err and "column" in err

    def test_mixed_blocks(self, tmp_path):
        raw = json.loads(open(cfg("undriven_thermal.json")).read())
        raw["normalized"] = json.loads(open(cfg("fig2a_normalized.json")).read())["normalized"]
        assert run("report", "--config", write_json(tmp_path, raw), "--out", tmp_path) == 2

    def test_missing_file(self, tmp_path):
        assert run("report", "--config", tmp_path / "nope.json") == 2

    def test_missing_config_flag(self):
        assert run("report") == 2

    def test_branch_out_of_range(self, tmp_path):
        assert run("report", "--config", cfg("bistable.json"), "--branch", 7, "--out", tmp_path) == 3

    def test_unstable_middle_branch(self, tmp_path, capsys):
        assert run("report", "--config", cfg("bistable.json"), "--branch", 1, "--out", tmp_path) == 3
        assert "3 root(s)" in capsys.readouterr().out

    def test_anti_damped_point(self, tmp_path):
        raw = json.loads(open(cfg("fig2a_normalized.json")).read())
        raw["normalized"]["phi"] = -1.0
        assert run("report", "--config", write_json(tmp_path, raw), "--out", tmp_path) == 3

    def test_bistable_default_branch(self, tmp_path, capsys):
        assert run("report", "--config", cfg("bistable.json"), "--out", tmp_path) == 0
        assert "selected branch 0" in capsys.readouterr().out


class TestSpectrum:
    def test_si_columns(self, tmp_path):
        assert run("spectrum", "--config", cfg("strong_cooling.json"), "--out", tmp_path) == 0
        _, header, rows = csvio.read(tmp_path / "spectrum.csv")
        assert header[:2] == ["Omega", "S_fopt"] and "S_x_classical" in header
        assert len(rows) == 800


class TestSweep:
    def test_two_by_two(self, tmp_path):
        raw = json.loads(open(cfg("fig2a_normalized.json")).read())
        raw["sweep"] = {"axes": [{"path": "normalized.phi", "min": 0.5, "max": 1.0, "count": 2},
                                 {"path": "normalized.d", "min": 1.0, "max": 10.0, "count": 2, "scale": "log"}],
                        "outputs": ["n_min", "deltaX2"]}
        assert run("sweep", "--config", write_json(tmp_path, raw), "--out", tmp_path) == 0
        _, header, rows = csvio.read(tmp_path / "sweep.csv")
        assert header == ["phi", "d", "n_min", "deltaX2"]
        assert len(rows) == 4
        assert [r[:2] for r in rows] == [[0.5, 1.0], [0.5, 10.0], [1.0, 1.0], [1.0, 10.0]]

    def test_sideband_damping_single_maximum(self, tmp_path):
        assert run("sweep", "--config", cfg("sweep_phi_beta0.json"), "--out", tmp_path) == 0
        _, header, rows = csvio.read(tmp_path / "sweep.csv")
        phi, g = np.array(rows)[:, 0], np.array(rows)[:, header.index("gamma_eff_ratio")]
        i = int(np.argmax(g))
        assert 0 < i < len(g) - 1
        assert np.all(np.diff(g[:i + 1]) > 0) and np.all(np.diff(g[i:]) < 0)
        # beta = 0: difference of the two sideband Lorentzians
        b, q, phi_nl = 0.5, 1e6, 1e-6
        ref = 1 + phi_nl * q * (1 / (1 + (phi - b) ** 2) - 1 / (1 + (phi + b) ** 2))
        assert np.allclose(g, ref, rtol=1e-10)

    def test_non_cooling_points_are_inf(self, tmp_path):
        raw = json.loads(open(cfg("fig2a_normalized.json")).read())
        raw["sweep"] = {"axes": [{"path": "normalized.phi", "min": -1.0, "max": 1.0, "count": 3}],
                        "outputs": ["n_min"]}
        assert run("sweep", "--config", write_json(tmp_path, raw), "--out", tmp_path) == 0
        lines = (tmp_path / "sweep.csv").read_text().splitlines()
        assert lines[-2].endswith(",inf")

    def test_csv_format_and_determinism(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert run("sweep", "--config", cfg("sweep_phi_beta0.json"), "--out", a) == 0
        assert run("sweep", "--config", cfg("sweep_phi_beta0.json"), "--out", b, "--workers", 1) == 0
        raw_a = (a / "sweep.csv").read_bytes()
        assert raw_a == (b / "sweep.csv").read_bytes()
        assert b"\r" not in raw_a and b";" not in raw_a.split(b"\n", 1)[1]

    def test_parallel_matches_serial(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert run("sweep", "--config", cfg("sweep_fig2b.json"), "--out", a, "--workers", 1) == 0
        assert run("sweep", "--config", cfg("sweep_fig2b.json"), "--out", b, "--workers", 2) == 0
        assert (a / "sweep.csv").read_bytes() == (b / "sweep.csv").read_bytes()

    @pytest.mark.parametrize("axes", [[], [{"path": "normalized.phi", "min": 1, "max": 2, "count": 1}],
                                      [{"path": "normalized.phi", "min": -1, "max": 2, "count": 3, "scale": "log"}],
                                      [{"path": "normalized.nope", "min": 1, "max": 2, "count": 3}]])
    def test_spec_errors(self, tmp_path, axes):
        raw = json.loads(open(cfg("fig2a_normalized.json")).read())
        raw["sweep"] = {"axes": axes, "outputs": ["n_min"]}
        assert run("sweep", "--config", write_json(tmp_path, raw), "--out", tmp_path) == 2

    def test_unknown_output(self, tmp_path):
        raw = json.loads(open(cfg("fig2a_normalized.json")).read())
        raw["sweep"] = {"axes": [{"path": "normalized.phi", "min": 1, "max": 2, "count": 2}], "outputs": ["x"]}
        assert run("sweep", "--config", write_json(tmp_path, raw), "--out", tmp_path) == 2


class TestFigure:
    def test_writes_csv_and_svg(self, tmp_path):
        assert run("figure", "--id", "3", "--out", tmp_path) == 0
        _, _, rows = csvio.read(tmp_path / "fig3.csv")
        _, _, golden = csvio.read(os.path.join(GOLDEN, "fig3.csv"))
        assert np.allclose(rows, golden, rtol=1e-10)
        assert (tmp_path / "fig3.svg").exists()

    def test_id_from_config(self, tmp_path):
        path = write_json(tmp_path, {"figure": {"id": "2a", "resolution": 21}})
        assert run("figure", "--config", path, "--out", tmp_path) == 0
        assert (tmp_path / "fig2a.csv").exists()

    def test_unknown_id(self, tmp_path):
        assert run("figure", "--id", "9", "--out", tmp_path) == 2

    def test_missing_id(self, tmp_path):
        assert run("figure", "--out", tmp_path) == 2


class TestOptimize:
    def test_beta_zero_sideband_optimum(self, tmp_path, capsys):
        assert run("optimize", "--config", cfg("optimize_beta0.json"), "--out", tmp_path) == 0
        _, header, rows = [None, *csvio.read(tmp_path / "optimize.csv")[1:]]
        best = rows[0]
        b = 2.0
        assert best[3] <= 1 / (4 * b * b) * (1 + 1e-9)
        # with beta = 0 the optimum sits at phi = sqrt(1 + b^2)
        assert best[1] == pytest.approx(math.sqrt(1 + b * b), rel=1e-4)

    def test_fig3_minimum(self, tmp_path):
        assert run("optimize", "--config", cfg("optimize_fig3.json"), "--out", tmp_path) == 0
        meta, header, rows = csvio.read(tmp_path / "optimize.csv")
        best = rows[0]
        curve = figures.fig3_curve(np.geomspace(0.1, 1e5, 2001), 100.0)
        assert best[3] <= curve.min() * (1 + 1e-9)
        assert best[3] == pytest.approx(curve.min(), rel=1e-3)

    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run("optimize", "--config", cfg("optimize_beta0.json"), "--out", a)
        run("optimize", "--config", cfg("optimize_beta0.json"), "--out", b)
        assert (a / "optimize.csv").read_bytes() == (b / "optimize.csv").read_bytes()

    def test_no_cooling(self, tmp_path, capsys):
        assert run("optimize", "--config", cfg("optimize_no_cooling.json"), "--out", tmp_path) == 4
        assert "no cooling" in capsys.readouterr().err


class TestOracle:
    def small(self, tmp_path, **oracle):
        raw = json.loads(open(cfg("undriven_thermal.json")).read())
        raw["oracle"] = oracle
        return write_json(tmp_path, raw)

    def test_pass(self, tmp_path, capsys):
        path = self.small(tmp_path, n_realizations=40, damping_times=30, steps_per_period=60, trajectory=True)
        assert run("oracle", "--config", path, "--out", tmp_path, "--seed", 3) == 0
        assert "PASS" in capsys.readouterr().out
        _, header, rows = csvio.read(tmp_path / "oracle.csv")
        assert rows[0][header.index("n_realizations")] == 40
        assert (tmp_path / "trajectory.csv").exists()

    def test_coarse_dt(self, tmp_path):
        path = self.small(tmp_path, dt=1e-6, n_steps=1000, burn_in_steps=100, n_realizations=4)
        assert run("oracle", "--config", path, "--out", tmp_path) == 3

    def test_needs_si_config(self, tmp_path):
        assert run("oracle", "--config", cfg("fig2a_normalized.json"), "--out", tmp_path) == 2


def test_unknown_command():
    assert run("frobnicate") == 2
