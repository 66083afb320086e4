"""Run configuration parsing and bit-stable result export."""

from __future__ import annotations

import argparse
import json
import os
import tempfile
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .beamforming import ScaTrace
from .composite import AngularRange
from .gain import DB_FLOOR, GainMap
from .geometry import ArrayConfig
from .pipeline import BenchmarkResult, SolveParams, SolveReport

_DEFAULTS = dict(
    num_antennas=32,
    carrier_freq_hz=1e12,
    bandwidth_hz=1e11,
    spacing_m=None,
    theta_min_deg=0.0,
    theta_max_deg=60.0,
    samples=64,
    penalty_rho=20.0,
    seed=0,
    randomizations=100,
    out_dir=".",
    heatmap_res="64x64",
)


@dataclass
class RunConfig:
    """Validated union of CLI flags, config file entries and defaults."""

    command: str
    num_antennas: int = 32
    carrier_freq_hz: float = 1e12
    bandwidth_hz: float = 1e11
    spacing_m: float | None = None
    theta_min_deg: float = 0.0
    theta_max_deg: float = 60.0
    samples: int = 64
    penalty_rho: float = 20.0
    seed: int = 0
    randomizations: int = 100
    out_dir: str = "."
    heatmap_res: str = "64x64"
    scheme: str | None = None
    from_report: str | None = None
    mu: float | None = None

    def array_config(self) -> ArrayConfig:
        return ArrayConfig(
            num_antennas=self.num_antennas,
            carrier_freq=self.carrier_freq_hz,
            bandwidth=self.bandwidth_hz,
            spacing=self.spacing_m,
        )

    def angular_range(self) -> AngularRange:
        return AngularRange.from_degrees(self.theta_min_deg, self.theta_max_deg)

    def solve_params(self) -> SolveParams:
        return SolveParams(
            rho=self.penalty_rho,
            num_samples=self.samples,
            n_randomizations=self.randomizations,
            rng_seed=self.seed,
        )

    def heatmap_shape(self) -> tuple[int, int]:
        try:
            nf, na = (int(part) for part in self.heatmap_res.lower().split("x"))
        except ValueError as err:
            raise ValueError(
                f"heatmap resolution must look like '64x64', got {self.heatmap_res!r}"
            ) from err
        if nf < 1 or na < 1:
            raise ValueError(f"heatmap resolution must be positive, got {self.heatmap_res!r}")
        return nf, na


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squintless",
        description="Wideband wide-beam analog beamforming with a rotatable array.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON file with flag defaults")
        p.add_argument("--num-antennas", type=int, help="array elements (default 32)")
        p.add_argument("--carrier-freq-hz", type=float, help="center frequency (default 1e12)")
        p.add_argument("--bandwidth-hz", type=float, help="total bandwidth (default 1e11)")
        p.add_argument("--spacing-m", type=float, help="element spacing (default half wavelength)")
        p.add_argument("--theta-min-deg", type=float, help="sector lower edge (default 0)")
        p.add_argument("--theta-max-deg", type=float, help="sector upper edge (default 60)")
        p.add_argument("--samples", type=int, help="composite grid points (default 64)")
        p.add_argument("--penalty-rho", type=float, help="rank-one penalty weight (default 20)")
        p.add_argument("--seed", type=int, help="randomization seed (default 0)")
        p.add_argument("--randomizations", type=int, help="initialization draws (default 100)")
        p.add_argument("--out-dir", help="output directory (default .)")

    solve = sub.add_parser("solve", help="run the joint weight/rotation optimization")
    add_common(solve)

    bench = sub.add_parser("benchmark", help="run every scheme and export a comparison")
    add_common(bench)
    bench.add_argument(
        "--scheme",
        choices=["1", "2", "3", "4", "proposed", "all"],
        help="restrict to one scheme (default all)",
    )

    sweep = sub.add_parser("sweep", help="export a frequency-angle gain heatmap")
    add_common(sweep)
    sweep.add_argument("--heatmap-res", help="grid as NFxNA (default 64x64)")
    sweep.add_argument("--from-report", help="reuse phases and rotation from a solve report")
    sweep.add_argument(
        "--mu", type=float, help="rotation coefficient for uniform phases (default: matched beam)"
    )

    validate = sub.add_parser("validate", help="run the library invariant suite")
    add_common(validate)
    return parser


def parse_config(argv: list[str] | None = None) -> RunConfig:
    """Merge CLI flags over an optional config file over documented defaults."""
    parser = _build_parser()
    ns = parser.parse_args(argv)
    merged = dict(_DEFAULTS)
    config_path = getattr(ns, "config", None)
    if config_path:
        try:
            file_values = json.loads(Path(config_path).read_text())
        except (OSError, json.JSONDecodeError) as err:
            parser.error(f"cannot read config file {config_path}: {err}")
        unknown = set(file_values) - set(_DEFAULTS)
        if unknown:
            parser.error(f"unknown config file keys: {sorted(unknown)}")
        merged.update(file_values)
    for key in _DEFAULTS:
        flag_value = getattr(ns, key, None)
        if flag_value is not None:
            merged[key] = flag_value
    run = RunConfig(
        command=ns.command,
        scheme=getattr(ns, "scheme", None),
        from_report=getattr(ns, "from_report", None),
        mu=getattr(ns, "mu", None),
        **merged,
    )
    try:
        run.array_config()
        run.angular_range()
        run.solve_params()
        run.heatmap_shape()
    except ValueError as err:
        parser.error(str(err))
    return run


def _atomic_write(path: str | Path, data: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def export_heatmap_csv(gain_map: GainMap, path: str | Path) -> None:
    """Write a gain map as CSV: angle header in degrees, one row per frequency.

    The first column holds the frequency in GHz (6 decimals), the header
    row the angles in degrees (6 decimals), the body gains in dB rounded
    to 4 decimals and floored at -120 dB.  Output bytes are deterministic.
    """
    lines = []
    header = [""] + [f"{np.degrees(a):.6f}" for a in gain_map.angle_axis]
    lines.append(",".join(header))
    floored = np.maximum(gain_map.gains_db, DB_FLOOR)
    for i, freq in enumerate(gain_map.freq_axis):
        row = [f"{freq / 1e9:.6f}"] + [f"{v:.4f}" for v in floored[i]]
        lines.append(",".join(row))
    _atomic_write(path, "\n".join(lines) + "\n")


def _trace_payload(trace: ScaTrace) -> dict:
    return {
        "objective_values": [float(v) for v in trace.objective_values],
        "rank_one_gaps": [float(v) for v in trace.rank_one_gaps],
        "converged": bool(trace.converged),
        "iterations": int(trace.iterations),
    }


def _residual_payload(residuals) -> dict | None:
    if residuals is None:
        return None
    primal, dual, gap = residuals
    return {"primal": float(primal), "dual": float(dual), "relative_gap": float(gap)}


def _config_payload(run: RunConfig) -> dict:
    payload = {
        "num_antennas": run.num_antennas,
        "carrier_freq_hz": float(run.carrier_freq_hz),
        "bandwidth_hz": float(run.bandwidth_hz),
        "spacing_m": run.spacing_m if run.spacing_m is None else float(run.spacing_m),
        "theta_min_deg": float(run.theta_min_deg),
        "theta_max_deg": float(run.theta_max_deg),
        "samples": int(run.samples),
        "penalty_rho": float(run.penalty_rho),
        "randomizations": int(run.randomizations),
    }
    return payload


def _db_curve(curve: np.ndarray) -> list[float]:
    with np.errstate(divide="ignore"):
        db = 10.0 * np.log10(np.asarray(curve, dtype=float))
    return [float(max(v, DB_FLOOR)) for v in db]


def _report_payload(report: SolveReport, omega_grid: np.ndarray, curve: np.ndarray) -> dict:
    return {
        "mu": float(report.mu),
        "alpha_rad": float(report.angles.alpha),
        "alpha_deg": float(np.degrees(report.angles.alpha)),
        "gamma_rad": float(report.angles.gamma),
        "gamma_deg": float(np.degrees(report.angles.gamma)),
        "phases": [float(p) for p in report.weights.phases],
        "min_gain": float(report.min_gain),
        "min_gain_db": float(report.min_gain_db),
        "omega_grid": [float(w) for w in omega_grid],
        "gain_curve": [float(g) for g in curve],
        "gain_curve_db": _db_curve(curve),
        "ao_trace": [float(g) for g in report.ao_trace],
        "beamforming_traces": [_trace_payload(t) for t in report.beamforming_traces],
        "rotation_traces": [_trace_payload(t) for t in report.rotation_traces],
        "solver_residuals": _residual_payload(report.solver_residuals),
    }


def export_report_json(
    result: "SolveReport | list[BenchmarkResult]",
    path: str | Path,
    run: RunConfig,
    omega_grid: np.ndarray,
    curve: np.ndarray | None = None,
) -> None:
    """Write a solve report or a benchmark set as deterministic JSON."""
    document: dict = {
        "version": __version__,
        "seed": int(run.seed),
        "config": _config_payload(run),
    }
    if isinstance(result, SolveReport):
        document["kind"] = "solve"
        if curve is None:
            raise ValueError("solve export needs the gain curve")
        document["result"] = _report_payload(result, omega_grid, curve)
    else:
        document["kind"] = "benchmark"
        schemes = []
        for item in result:
            entry = {
                "id": item.scheme_id,
                "metadata": {k: _json_safe(v) for k, v in sorted(item.metadata.items())},
                "report": _report_payload(item.report, omega_grid, item.gain_curve),
            }
            schemes.append(entry)
        document["schemes"] = schemes
    _atomic_write(path, json.dumps(document, indent=2) + "\n")


def _json_safe(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def load_report_phases(path: str | Path) -> tuple[np.ndarray, float]:
    "Phases and rotation coefficient from a previously exported report."
    document = json.loads(Path(path).read_text())
    if document.get("kind") == "solve":
        payload = document["result"]
    elif document.get("kind") == "benchmark":
        by_id = {s["id"]: s["report"] for s in document["schemes"]}
        payload = by_id.get("proposed") or next(iter(by_id.values()))
    else:
        raise ValueError(f"{path}: not a squintless report (missing 'kind')")
    return np.asarray(payload["phases"], dtype=float), float(payload["mu"])
