"""SCA loop for the rotation coefficient at fixed analog weights.

The gain at one composite sample expands into a double sum of cosines of
terms linear in the rotation coefficient.  Bounding each cosine by its
tangent quadratic with curvature -1/2 gives a concave quadratic minorant
per sample, tight at the expansion point; the max-min over the interval
[-1, 1] is then solved exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .beamforming import ScaTrace
from .composite import CompositeGrid
from .gain import BeamformerWeights, min_composite_gain
from .geometry import RotationAngles
from .solvers import solve_scalar_maxmin_quadratic


@dataclass(frozen=True)
class SurrogateCoeffs:
    """Quadratic minorant ``curvature * mu^2 + slope * mu + offset``."""

    curvature: float
    slope: float
    offset: float

    def __call__(self, mu: float | np.ndarray) -> float | np.ndarray:
        return self.curvature * mu**2 + self.slope * mu + self.offset


def _pair_terms(phases: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = phases.size
    idx = np.arange(n, dtype=float)
    deltas = idx[:, None] - idx[None, :]
    phase_deltas = phases[:, None] - phases[None, :]
    return deltas, phase_deltas


def surrogate_coeffs(omega: float, phases: np.ndarray, mu0: float) -> SurrogateCoeffs:
    """Concave quadratic lower bound of the gain at one composite sample.

    The bound is anchored at ``mu0`` (equality there) and valid for every
    real rotation coefficient.
    """
    if abs(mu0) > 1.0 + 1e-12:
        raise ValueError(f"|mu0| must be <= 1, got {mu0}")
    phases = np.asarray(phases, dtype=float)
    n = phases.size
    deltas, phase_deltas = _pair_terms(phases)
    arg = omega * deltas  # d(z)/d(mu) per pair
    z0 = arg * mu0 - phase_deltas
    sin0 = np.sin(z0)
    cos0 = np.cos(z0)
    curvature = -0.5 * float(np.sum(arg**2)) / n
    slope = float(np.sum(-sin0 * arg + arg**2 * mu0)) / n
    offset = float(np.sum(cos0 + sin0 * arg * mu0 - 0.5 * arg**2 * mu0**2)) / n
    return SurrogateCoeffs(curvature, slope, offset)


def surrogate_coeff_table(
    omegas: np.ndarray, phases: np.ndarray, mu0: float
) -> np.ndarray:
    "Coefficient triples for every grid sample, shape (L, 3)."
    phases = np.asarray(phases, dtype=float)
    n = phases.size
    deltas, phase_deltas = _pair_terms(phases)
    arg = omegas[:, None, None] * deltas[None, :, :]
    z0 = arg * mu0 - phase_deltas[None, :, :]
    sin0 = np.sin(z0)
    cos0 = np.cos(z0)
    sq = arg**2
    curvature = -0.5 * sq.sum(axis=(1, 2)) / n
    slope = (-sin0 * arg + sq * mu0).sum(axis=(1, 2)) / n
    offset = (cos0 + sin0 * arg * mu0 - 0.5 * sq * mu0**2).sum(axis=(1, 2)) / n
    return np.column_stack([curvature, slope, offset])


def sca_rotation(
    grid: CompositeGrid,
    phases: np.ndarray,
    mu_init: float,
    tol: float = 1e-6,
    max_iter: int = 50,
) -> tuple[float, ScaTrace]:
    """Ascend the worst-case gain over the rotation coefficient.

    Each iteration solves the surrogate max-min exactly over [-1, 1] and
    re-anchors at the maximizer.  The worst-case gain never decreases along
    the iterate sequence because the surrogate minorizes the gain and is
    tight at the anchor.
    """
    if abs(mu_init) > 1.0 + 1e-12:
        raise ValueError(f"|mu_init| must be <= 1, got {mu_init}")
    phases = np.asarray(phases, dtype=float)
    weights = BeamformerWeights(phases)
    mu = float(np.clip(mu_init, -1.0, 1.0))
    trace = ScaTrace()
    trace.objective_values.append(min_composite_gain(weights, mu, grid)[0])
    prev_surrogate = None
    for iteration in range(1, max_iter + 1):
        table = surrogate_coeff_table(grid.samples, phases, mu)
        mu_next, surrogate_value = solve_scalar_maxmin_quadratic(table, (-1.0, 1.0))
        trace.iterations = iteration
        trace.objective_values.append(min_composite_gain(weights, mu_next, grid)[0])
        step = abs(mu_next - mu)
        mu = mu_next
        if step <= tol:
            trace.converged = True
            break
        if prev_surrogate is not None and abs(surrogate_value - prev_surrogate) <= tol:
            trace.converged = True
            break
        prev_surrogate = surrogate_value
    return mu, trace


def reconstruct_angles(mu: float) -> RotationAngles:
    """Rotation angles realizing a rotation coefficient: alpha = 0, gamma = arccos(mu)."""
    if abs(mu) > 1.0 + 1e-12:
        raise ValueError(f"rotation coefficient must lie in [-1, 1], got {mu}")
    gamma = float(np.arccos(np.clip(mu, -1.0, 1.0)))
    return RotationAngles(alpha=0.0, beta=0.0, gamma=gamma)
