"""Randomized invariant battery behind the ``validate`` CLI command.

Each check prints one PASS/FAIL line; the return value lists failures.
The checks mirror the library's core contracts at a scale that finishes
in seconds.
"""

from __future__ import annotations

import numpy as np

from .beamforming import rank_one_gap, spectral_subgradient
from .composite import AngularRange, build_grid, composite_bounds, sample_grid
from .gain import BeamformerWeights, beam_gain, min_composite_gain
from .geometry import (
    ArrayConfig,
    RotationAngles,
    rotation_matrix,
    steering_vector,
    steering_vector_composite,
)
from .rotation import surrogate_coeff_table, surrogate_coeffs
from .solvers import SdpProblem, hermitize, psd_project, solve_maxmin_sdp, solve_scalar_maxmin_quadratic


def _check_rotation_group(rng: np.random.Generator) -> float:
    worst = 0.0
    for _ in range(1000):
        angles = RotationAngles(*rng.uniform(0, 2 * np.pi, 3))
        rot = rotation_matrix(angles)
        worst = max(
            worst,
            float(np.abs(rot.T @ rot - np.eye(3)).max()),
            abs(float(np.linalg.det(rot)) - 1.0),
        )
    return worst


def _check_steering_modulus(rng: np.random.Generator) -> float:
    config = ArrayConfig(num_antennas=16, carrier_freq=1e12, bandwidth=1e11)
    worst = 0.0
    for _ in range(200):
        freq = rng.uniform(config.freq_lo, config.freq_hi)
        theta = rng.uniform(-np.pi / 2, np.pi / 2)
        angles = RotationAngles(*rng.uniform(0, 2 * np.pi, 3))
        vec = steering_vector(config, freq, theta, angles)
        worst = max(worst, float(np.abs(np.abs(vec) - 1.0).max()))
        shifted = RotationAngles(angles.alpha, angles.beta + rng.uniform(0, 6), angles.gamma)
        worst = max(worst, float(np.abs(vec - steering_vector(config, freq, theta, shifted)).max()))
    return worst


def _check_bounds_containment(rng: np.random.Generator) -> float:
    config = ArrayConfig(num_antennas=8, carrier_freq=1e12, bandwidth=1e11)
    sector = AngularRange.from_degrees(-35.0, 50.0)
    lo, hi = composite_bounds(config, sector)
    freqs = rng.uniform(config.freq_lo, config.freq_hi, 100_000)
    thetas = rng.uniform(sector.theta_min, sector.theta_max, 100_000)
    scale = 2 * np.pi * config.spacing / config.speed_of_light
    omegas = scale * freqs * np.cos(thetas)
    return float(max(lo - omegas.min(), omegas.max() - hi, 0.0))


def _check_gain_bounds(rng: np.random.Generator) -> float:
    n = 16
    worst = 0.0
    for _ in range(200):
        weights = BeamformerWeights(rng.uniform(-np.pi, np.pi, n))
        omega, mu = rng.uniform(0, np.pi), rng.uniform(-1, 1)
        gain = beam_gain(weights, steering_vector_composite(n, omega, mu))
        worst = max(worst, -gain, gain - n)
        shifted = BeamformerWeights(weights.phases + rng.uniform(-np.pi, np.pi))
        gain_shifted = beam_gain(shifted, steering_vector_composite(n, omega, mu))
        worst = max(worst, abs(gain - gain_shifted))
    return worst


def _check_surrogate(rng: np.random.Generator) -> float:
    worst = 0.0
    mus = np.linspace(-1, 1, 2001)
    for _ in range(100):
        n = int(rng.integers(2, 9))
        phases = rng.uniform(-np.pi, np.pi, n)
        omega = rng.uniform(0.1, np.pi)
        mu0 = rng.uniform(-1, 1)
        surrogate = surrogate_coeffs(omega, phases, mu0)
        weights = BeamformerWeights(phases)
        gains = np.array(
            [beam_gain(weights, steering_vector_composite(n, omega, m)) for m in mus]
        )
        violation = float(np.max(surrogate(mus) - gains))
        anchor_gap = abs(
            surrogate(mu0) - beam_gain(weights, steering_vector_composite(n, omega, mu0))
        )
        worst = max(worst, violation, anchor_gap)
    return worst


def _check_scalar_solver(rng: np.random.Generator) -> float:
    # the exact solver must dominate the grid; it may only exceed it by
    # the grid's own resolution error (linear in spacing at corners)
    worst = 0.0
    grid = np.linspace(-1, 1, 200_001)
    spacing = grid[1] - grid[0]
    for _ in range(50):
        count = int(rng.integers(1, 6))
        coeffs = np.column_stack(
            [-rng.uniform(0.1, 5.0, count), rng.uniform(-3, 3, count), rng.uniform(-3, 3, count)]
        )
        x, value = solve_scalar_maxmin_quadratic(coeffs, (-1.0, 1.0))
        at_x = float((coeffs[:, 0] * x**2 + coeffs[:, 1] * x + coeffs[:, 2]).min())
        table = coeffs[:, 0][:, None] * grid**2 + coeffs[:, 1][:, None] * grid + coeffs[:, 2][:, None]
        grid_best = float(table.min(axis=0).max())
        slope = float(np.max(2 * np.abs(coeffs[:, 0]) + np.abs(coeffs[:, 1])))
        resolution = slope * spacing + float(np.abs(coeffs[:, 0]).max()) * spacing**2
        worst = max(worst, abs(value - at_x), grid_best - value, value - grid_best - resolution)
    return worst


def _check_psd_projection(rng: np.random.Generator) -> float:
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 9))
        raw = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        mat = hermitize(raw)
        projected = psd_project(mat)
        worst = max(worst, -float(np.linalg.eigvalsh(projected).min()))
        worst = max(worst, float(np.abs(psd_project(projected) - projected).max()))
        gap = rank_one_gap(psd_project(mat))
        eigvals = np.clip(np.linalg.eigvalsh(mat), 0, None)
        worst = max(worst, abs(gap - (eigvals.sum() - eigvals.max())))
    return worst


def _check_sdp_certificates(rng: np.random.Generator) -> float:
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(2, 6))
        count = int(rng.integers(1, 9))
        vecs = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
        v_stack = np.einsum("li,lj->lij", vecs, vecs.conj())
        problem = SdpProblem(gain_matrices=v_stack, diag_value=1.0 / n)
        solution = solve_maxmin_sdp(problem)
        primal, dual, gap = solution.residuals
        worst = max(worst, primal, dual, gap)
        worst = max(worst, -float(np.linalg.eigvalsh(solution.W).min()))
    return worst


def run_invariant_suite(seed: int = 0, verbose: bool = True) -> list[str]:
    """Run every invariant check; returns the names of failed checks."""
    rng = np.random.default_rng(seed)
    checks = [
        ("rotation matrices in SO(3)", _check_rotation_group, 1e-12),
        ("steering unit modulus and beta-invariance", _check_steering_modulus, 1e-12),
        ("composite bounds contain sampled products", _check_bounds_containment, 0.0),
        ("gain within [0, N], global-phase invariant", _check_gain_bounds, 1e-9),
        ("rotation surrogate minorizes gain, tight at anchor", _check_surrogate, 1e-9),
        ("scalar max-min solver matches dense grid", _check_scalar_solver, 1e-9),
        ("PSD projection idempotent and nonnegative", _check_psd_projection, 1e-10),
        ("SDP certificates within tolerance", _check_sdp_certificates, 1e-6),
    ]
    failures = []
    for name, check, tol in checks:
        worst = check(rng)
        ok = worst <= tol
        if verbose:
            print(f"{'PASS' if ok else 'FAIL'}: {name} (worst {worst:.3e}, tol {tol:.1e})")
        if not ok:
            failures.append(name)
    return failures
