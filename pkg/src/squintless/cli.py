"""Command-line entry point: solve, benchmark, sweep and validate."""

from __future__ import annotations

import logging
import os
import sys
from pathlib import Path

import numpy as np

from .composite import build_grid
from .gain import BeamformerWeights, composite_gains, gain_heatmap
from .geometry import steering_vector
from .io import (
    RunConfig,
    export_heatmap_csv,
    export_report_json,
    load_report_phases,
    parse_config,
)
from .pipeline import alternating_optimize, run_all_benchmarks, run_benchmark
from .rotation import reconstruct_angles

logger = logging.getLogger("squintless")


def _setup_logging() -> None:
    level = os.environ.get("SQUINTLESS_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(message)s")


def _cmd_solve(run: RunConfig) -> int:
    config, sector, params = run.array_config(), run.angular_range(), run.solve_params()
    grid = build_grid(config, sector, params.num_samples)
    report = alternating_optimize(config, sector, params, grid=grid)
    curve = composite_gains(report.weights, report.mu, grid)
    out = Path(run.out_dir) / "solve_report.json"
    export_report_json(report, out, run, grid.samples, curve=curve)
    print(f"min gain: {report.min_gain_db:.4f} dB over {params.num_samples} grid points")
    print(f"rotation coefficient mu = {report.mu:.6f} "
          f"(gamma = {np.degrees(report.angles.gamma):.2f} deg)")
    print(f"report written to {out}")
    return 0


def _cmd_benchmark(run: RunConfig) -> int:
    config, sector, params = run.array_config(), run.angular_range(), run.solve_params()
    grid = build_grid(config, sector, params.num_samples)
    if run.scheme and run.scheme != "all":
        results = [run_benchmark(run.scheme, config, sector, params)]
    else:
        results = run_all_benchmarks(config, sector, params)
    out = Path(run.out_dir) / "benchmark_report.json"
    export_report_json(results, out, run, grid.samples)
    print(f"{'scheme':>10} {'mu':>10} {'min gain (dB)':>15}")
    for item in results:
        print(f"{item.scheme_id:>10} {item.report.mu:>10.6f} {item.report.min_gain_db:>15.4f}")
    print(f"report written to {out}")
    return 0


def _cmd_sweep(run: RunConfig) -> int:
    config, sector = run.array_config(), run.angular_range()
    nf, na = run.heatmap_shape()
    if run.from_report:
        phases, mu = load_report_phases(run.from_report)
        weights = BeamformerWeights(phases)
        angles = reconstruct_angles(mu)
        label = f"report {run.from_report}"
    elif run.mu is not None:
        weights = BeamformerWeights.uniform(config.num_antennas)
        angles = reconstruct_angles(run.mu)
        label = f"uniform phases at mu={run.mu}"
    else:
        # Matched narrowband beam at the carrier and sector center, no rotation.
        angles = reconstruct_angles(1.0)
        steering = steering_vector(config, config.carrier_freq, sector.center, angles)
        weights = BeamformerWeights.matched(steering)
        label = "center-matched narrowband beam"
    gain_map = gain_heatmap(weights, angles, config, sector, nf, na)
    out = Path(run.out_dir) / "heatmap.csv"
    export_heatmap_csv(gain_map, out)
    finite = gain_map.gains_db[np.isfinite(gain_map.gains_db)]
    print(f"swept {label}: gain range [{finite.min():.2f}, {finite.max():.2f}] dB")
    print(f"heatmap written to {out}")
    return 0


def _cmd_validate(run: RunConfig) -> int:
    from .validation import run_invariant_suite

    failures = run_invariant_suite(seed=run.seed, verbose=True)
    return 1 if failures else 0


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    run = parse_config(argv if argv is not None else sys.argv[1:])
    handlers = {
        "solve": _cmd_solve,
        "benchmark": _cmd_benchmark,
        "sweep": _cmd_sweep,
        "validate": _cmd_validate,
    }
    return handlers[run.command](run)


if __name__ == "__main__":
    raise SystemExit(main())
