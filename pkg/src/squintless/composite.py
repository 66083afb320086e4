"""Spatial-frequency composite variable: interval bounds and sampling grid.

For the band ``[fc - B/2, fc + B/2]`` and departure angles
``[theta_min, theta_max]`` the per-element phase increment
``(2*pi*d/c) * f * cos(theta)`` spans a closed interval.  Both extremes
occur at a corner of the (f, theta) box or, when the angle range crosses
0 or pi, at ``cos(theta) = +/-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import TWO_PI, ArrayConfig


@dataclass(frozen=True)
class AngularRange:
    """Closed departure-angle interval in radians, inside (-pi, pi]."""

    theta_min: float
    theta_max: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.theta_min) and np.isfinite(self.theta_max)):
            raise ValueError("angle bounds must be finite")
        if not self.theta_min < self.theta_max:
            raise ValueError(
                f"theta_min must be < theta_max, got [{self.theta_min}, {self.theta_max}]"
            )
        if self.theta_min <= -np.pi or self.theta_max > np.pi:
            raise ValueError("angles must lie in (-pi, pi]")

    @classmethod
    def from_degrees(cls, lo: float, hi: float) -> "AngularRange":
        return cls(np.deg2rad(lo), np.deg2rad(hi))

    @property
    def center(self) -> float:
        return 0.5 * (self.theta_min + self.theta_max)


@dataclass(frozen=True)
class CompositeGrid:
    """Uniform samples of the composite variable over its interval."""

    omega_lo: float
    omega_hi: float
    samples: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=float)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1 or samples.size < 1:
            raise ValueError("samples must be a non-empty 1D array")

    @property
    def num_samples(self) -> int:
        return int(self.samples.size)

    @property
    def spacing(self) -> float:
        if self.samples.size < 2:
            return 0.0
        return float(self.samples[1] - self.samples[0])


def composite_bounds(config: ArrayConfig, angular_range: AngularRange) -> tuple[float, float]:
    """Exact interval of ``(2*pi*d/c) * f * cos(theta)`` over the band/angle box.

    Evaluates the candidate extremes of cos(theta) on the angle interval
    (endpoints, plus +/-1 when the interval contains 0 or reaches pi) against
    both band edges and returns the min and max product.
    """
    cos_candidates = [np.cos(angular_range.theta_min), np.cos(angular_range.theta_max)]
    if angular_range.theta_min <= 0.0 <= angular_range.theta_max:
        cos_candidates.append(1.0)
    if angular_range.theta_max >= np.pi:
        cos_candidates.append(-1.0)
    scale = TWO_PI * config.spacing / config.speed_of_light
    freqs = (config.freq_lo, config.freq_hi)
    products = [scale * f * c for f in freqs for c in cos_candidates]
    return min(products), max(products)


def sample_grid(bounds: tuple[float, float], num_samples: int) -> CompositeGrid:
    """Uniform grid over ``bounds`` inclusive of both endpoints.

    ``num_samples`` must be at least 2, except that a single sample is
    accepted when the interval is degenerate.
    """
    lo, hi = float(bounds[0]), float(bounds[1])
    if hi < lo:
        raise ValueError(f"invalid bounds ({lo}, {hi})")
    if num_samples < 1:
        raise ValueError(f"num_samples must be >= 1, got {num_samples}")
    if num_samples == 1 and hi > lo:
        raise ValueError("a single sample is only allowed for degenerate bounds")
    samples = np.linspace(lo, hi, num_samples)
    return CompositeGrid(omega_lo=lo, omega_hi=hi, samples=samples)


def build_grid(
    config: ArrayConfig, angular_range: AngularRange, num_samples: int
) -> CompositeGrid:
    "Convenience wrapper: bounds followed by uniform sampling."
    return sample_grid(composite_bounds(config, angular_range), num_samples)
