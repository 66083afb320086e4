import json

import numpy as np
import pytest

from squintless.cli import main
from squintless.composite import AngularRange, build_grid
from squintless.gain import BeamformerWeights, GainMap, min_composite_gain
from squintless.geometry import ArrayConfig
from squintless.io import (
    RunConfig,
    export_heatmap_csv,
    export_report_json,
    load_report_phases,
    parse_config,
)
from squintless.pipeline import SolveParams, alternating_optimize, run_all_benchmarks
from squintless.gain import composite_gains


class TestParseConfig:
    def test_documented_defaults(self):
        run = parse_config(["solve"])
        assert run.num_antennas == 32
        assert run.carrier_freq_hz == 1e12
        assert run.bandwidth_hz == 1e11
        assert run.theta_min_deg == 0.0
        assert run.theta_max_deg == 60.0
        assert run.penalty_rho == 20.0
        assert run.samples == 64
        assert run.seed == 0

    def test_zero_bandwidth_is_valid(self):
        run = parse_config(["solve", "--bandwidth-hz", "0"])
        assert run.bandwidth_hz == 0.0
        run.array_config()

    def test_swapped_angles_rejected(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            parse_config(["solve", "--theta-min-deg", "60", "--theta-max-deg", "0"])
        assert excinfo.value.code == 2
        assert "theta_min must be < theta_max" in capsys.readouterr().err

    def test_unknown_flag_rejected(self):
        with pytest.raises(SystemExit) as excinfo:
            parse_config(["solve", "--not-a-flag", "1"])
        assert excinfo.value.code == 2

    def test_bad_antenna_count_rejected(self):
        with pytest.raises(SystemExit) as excinfo:
            parse_config(["solve", "--num-antennas", "0"])
        assert excinfo.value.code == 2

    def test_config_file_merging(self, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"num_antennas": 8, "seed": 3}))
        run = parse_config(["solve", "--config", str(cfg), "--seed", "9"])
        assert run.num_antennas == 8  # from file
        assert run.seed == 9  # flag wins over file

    def test_config_file_unknown_key_rejected(self, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"bogus": 1}))
        with pytest.raises(SystemExit):
            parse_config(["solve", "--config", str(cfg)])


class TestHeatmapCsv:
    def test_two_by_two_shape(self, tmp_path):
        gmap = GainMap(
            freq_axis=np.array([1e9, 2e9]),
            angle_axis=np.array([0.0, np.pi / 2]),
            gains_db=np.array([[1.0, 2.0], [3.0, -200.0]]),
        )
        path = tmp_path / "map.csv"
        export_heatmap_csv(gmap, path)
        lines = path.read_text().strip().split("\n")
        assert len(lines) == 3
        assert all(len(line.split(",")) == 3 for line in lines)
        assert lines[0] == ",0.000000,90.000000"
        assert lines[1] == "1.000000,1.0000,2.0000"
        assert lines[2] == "2.000000,3.0000,-120.0000"  # floored

    def test_flat_full_gain_cells(self, tmp_path):
        flat = 10 * np.log10(32.0)
        gmap = GainMap(
            freq_axis=np.linspace(0.95e12, 1.05e12, 3),
            angle_axis=np.linspace(0.0, 1.0, 3),
            gains_db=np.full((3, 3), flat),
        )
        path = tmp_path / "flat.csv"
        export_heatmap_csv(gmap, path)
        body = [line.split(",")[1:] for line in path.read_text().strip().split("\n")[1:]]
        for row in body:
            assert all(cell == "15.0515" for cell in row)

    def test_reexport_is_byte_identical(self, tmp_path):
        rng = np.random.default_rng(0)
        gmap = GainMap(
            freq_axis=np.linspace(1e12, 1.1e12, 4),
            angle_axis=np.linspace(0.0, 0.5, 5),
            gains_db=rng.uniform(-30, 15, (4, 5)),
        )
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        export_heatmap_csv(gmap, first)
        export_heatmap_csv(gmap, second)
        assert first.read_bytes() == second.read_bytes()


@pytest.fixture(scope="module")
def small_solution():
    config = ArrayConfig(num_antennas=6, carrier_freq=1e12, bandwidth=1e11)
    sector = AngularRange.from_degrees(0.0, 50.0)
    params = SolveParams(num_samples=10, n_randomizations=10, ao_max_iter=3, rng_seed=0)
    grid = build_grid(config, sector, params.num_samples)
    report = alternating_optimize(config, sector, params, grid=grid)
    run = RunConfig(
        command="solve",
        num_antennas=6,
        theta_max_deg=50.0,
        samples=10,
        randomizations=10,
    )
    return config, sector, params, grid, report, run


class TestReportJson:
    def test_round_trip_reproduces_min_gain(self, small_solution, tmp_path):
        config, sector, params, grid, report, run = small_solution
        path = tmp_path / "report.json"
        curve = composite_gains(report.weights, report.mu, grid)
        export_report_json(report, path, run, grid.samples, curve=curve)
        document = json.loads(path.read_text())
        assert document["kind"] == "solve"
        assert document["version"]
        payload = document["result"]
        weights = BeamformerWeights(np.array(payload["phases"]))
        gain, _ = min_composite_gain(weights, payload["mu"], grid)
        assert gain == pytest.approx(payload["min_gain"], abs=1e-6)
        assert payload["gamma_deg"] == pytest.approx(np.degrees(report.angles.gamma))

    def test_mu_zero_reports_ninety_degrees(self, small_solution, tmp_path):
        config, sector, params, grid, report, run = small_solution
        from dataclasses import replace

        from squintless.rotation import reconstruct_angles

        flat = replace(
            report, mu=0.0, angles=reconstruct_angles(0.0), weights=report.weights
        )
        path = tmp_path / "flat.json"
        curve = composite_gains(flat.weights, 0.0, grid)
        export_report_json(flat, path, run, grid.samples, curve=curve)
        assert json.loads(path.read_text())["result"]["gamma_deg"] == pytest.approx(90.0)

    def test_benchmark_set_lists_all_schemes(self, tmp_path):
        config = ArrayConfig(num_antennas=4, carrier_freq=1e12, bandwidth=1e11)
        sector = AngularRange.from_degrees(0.0, 40.0)
        params = SolveParams(num_samples=6, n_randomizations=5, ao_max_iter=2, rng_seed=0)
        results = run_all_benchmarks(config, sector, params)
        run = RunConfig(command="benchmark", num_antennas=4, samples=6, randomizations=5)
        path = tmp_path / "bench.json"
        grid = build_grid(config, sector, params.num_samples)
        export_report_json(results, path, run, grid.samples)
        document = json.loads(path.read_text())
        assert [s["id"] for s in document["schemes"]] == ["1", "2", "3", "4", "proposed"]

    def test_reexport_is_byte_identical(self, small_solution, tmp_path):
        config, sector, params, grid, report, run = small_solution
        curve = composite_gains(report.weights, report.mu, grid)
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        export_report_json(report, a, run, grid.samples, curve=curve)
        export_report_json(report, b, run, grid.samples, curve=curve)
        assert a.read_bytes() == b.read_bytes()


class TestCliEndToEnd:
    COMMON = [
        "--num-antennas", "6",
        "--samples", "10",
        "--randomizations", "5",
        "--theta-max-deg", "50",
    ]

    def test_solve_then_sweep_from_report(self, tmp_path, capsys):
        out = str(tmp_path)
        assert main(["solve", *self.COMMON, "--out-dir", out]) == 0
        report_path = tmp_path / "solve_report.json"
        assert report_path.exists()
        phases, mu = load_report_phases(report_path)
        assert phases.shape == (6,)
        assert abs(mu) <= 1.0
        assert (
            main(
                [
                    "sweep",
                    *self.COMMON,
                    "--out-dir",
                    out,
                    "--from-report",
                    str(report_path),
                    "--heatmap-res",
                    "8x8",
                ]
            )
            == 0
        )
        lines = (tmp_path / "heatmap.csv").read_text().strip().split("\n")
        assert len(lines) == 9
        capsys.readouterr()

    def test_sweep_default_baseline(self, tmp_path, capsys):
        assert (
            main(["sweep", *self.COMMON, "--out-dir", str(tmp_path), "--heatmap-res", "6x6"])
            == 0
        )
        assert (tmp_path / "heatmap.csv").exists()
        capsys.readouterr()

    def test_benchmark_single_scheme(self, tmp_path, capsys):
        assert (
            main(
                [
                    "benchmark",
                    *self.COMMON,
                    "--out-dir",
                    str(tmp_path),
                    "--scheme",
                    "1",
                ]
            )
            == 0
        )
        document = json.loads((tmp_path / "benchmark_report.json").read_text())
        assert [s["id"] for s in document["schemes"]] == ["1"]
        capsys.readouterr()
