"""Beam-gain evaluation: pointwise, worst case over a grid, and heatmaps."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .composite import AngularRange, CompositeGrid
from .geometry import ArrayConfig, RotationAngles, steering_vector

DB_FLOOR = -120.0
"""Floor applied to dB values in exports so files stay finite."""


@dataclass(frozen=True)
class BeamformerWeights:
    """Constant-modulus analog weights ``(1/sqrt(N)) * exp(j * phase_n)``."""

    phases: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        phases = np.atleast_1d(np.asarray(self.phases, dtype=float))
        if phases.ndim != 1 or phases.size < 1:
            raise ValueError("phases must be a non-empty 1D array")
        if not np.all(np.isfinite(phases)):
            raise ValueError("phases must be finite")
        object.__setattr__(self, "phases", phases)

    @property
    def num_antennas(self) -> int:
        return int(self.phases.size)

    @property
    def vector(self) -> np.ndarray:
        "Complex weight vector with per-element magnitude 1/sqrt(N)."
        return np.exp(1j * self.phases) / np.sqrt(self.num_antennas)

    @classmethod
    def uniform(cls, num_antennas: int) -> "BeamformerWeights":
        "All-zero phases; frequency-flat gain N when mu = 0."
        return cls(np.zeros(num_antennas))

    @classmethod
    def matched(cls, steering: np.ndarray) -> "BeamformerWeights":
        "Phases aligned with a steering vector, giving gain N there."
        return cls(np.angle(np.asarray(steering)))


@dataclass(frozen=True)
class GainMap:
    """Gains in dB over a frequency x angle grid."""

    freq_axis: np.ndarray
    angle_axis: np.ndarray
    gains_db: np.ndarray

    def __post_init__(self) -> None:
        if self.gains_db.shape != (self.freq_axis.size, self.angle_axis.size):
            raise ValueError("gains_db shape must be (len(freq_axis), len(angle_axis))")


def beam_gain(weights: BeamformerWeights, steering: np.ndarray) -> float:
    """Beam gain ``|w^H a|^2`` in [0, N]."""
    steering = np.asarray(steering)
    if steering.shape != (weights.num_antennas,):
        raise ValueError(
            f"length mismatch: {weights.num_antennas} weights vs {steering.shape} steering"
        )
    return float(np.abs(np.vdot(weights.vector, steering)) ** 2)


def composite_gains(weights: BeamformerWeights, mu: float, grid: CompositeGrid) -> np.ndarray:
    "Gains at every grid sample, vectorized over the grid."
    n = np.arange(weights.num_antennas, dtype=float)
    phases = mu * np.outer(grid.samples, n)
    responses = np.exp(1j * phases)
    amplitudes = responses @ np.conj(weights.vector)
    return np.abs(amplitudes) ** 2


def min_composite_gain(
    weights: BeamformerWeights, mu: float, grid: CompositeGrid
) -> tuple[float, int]:
    """Worst-case gain over the grid and the first index attaining it."""
    if abs(mu) > 1.0 + 1e-12:
        raise ValueError(f"|mu| must be <= 1, got {mu}")
    gains = composite_gains(weights, mu, grid)
    if gains.size == 0:
        raise ValueError("empty grid")
    idx = int(np.argmin(gains))
    return float(gains[idx]), idx


def _axis(lo: float, hi: float, count: int) -> np.ndarray:
    # count == 1 degenerates to the interval midpoint
    if count < 1:
        raise ValueError(f"grid size must be >= 1, got {count}")
    if count == 1:
        return np.array([0.5 * (lo + hi)])
    return np.linspace(lo, hi, count)


def gain_heatmap(
    weights: BeamformerWeights,
    angles: RotationAngles,
    config: ArrayConfig,
    angular_range: AngularRange,
    num_freqs: int,
    num_angles: int,
) -> GainMap:
    """Gain map in dB over a uniform band x angle grid.

    Rows sweep frequency, columns sweep angle.  Zero gains map to -inf;
    exports clamp them to the documented floor.
    """
    if weights.num_antennas != config.num_antennas:
        raise ValueError(
            f"length mismatch: {weights.num_antennas} weights vs "
            f"{config.num_antennas} antennas"
        )
    freq_axis = _axis(config.freq_lo, config.freq_hi, num_freqs)
    angle_axis = _axis(angular_range.theta_min, angular_range.theta_max, num_angles)
    mu = angles.rotation_coefficient
    positions = config.element_positions_local()
    # phase(f, theta, n) = 2 pi f cos(theta) mu x_n / c
    factor = 2.0 * np.pi * mu / config.speed_of_light
    base = factor * np.outer(freq_axis, positions)  # (nf, N)
    cosines = np.cos(angle_axis)  # (na,)
    w = np.conj(weights.vector)
    gains = np.empty((freq_axis.size, angle_axis.size))
    for j, cos_t in enumerate(cosines):
        responses = np.exp(1j * (base * cos_t))
        gains[:, j] = np.abs(responses @ w) ** 2
    with np.errstate(divide="ignore"):
        gains_db = 10.0 * np.log10(gains)
    return GainMap(freq_axis=freq_axis, angle_axis=angle_axis, gains_db=gains_db)


def heatmap_consistency_check(
    weights: BeamformerWeights, config: ArrayConfig, freq: float, theta: float,
    angles: RotationAngles,
) -> float:
    "Gain via the physical parameterization, for cross-checks."
    return beam_gain(weights, steering_vector(config, freq, theta, angles))
