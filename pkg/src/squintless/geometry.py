"""Rotated uniform linear array geometry and steering vectors.

The array sits on the x-axis of its local frame with element positions
``x_n = (n - 1) d``.  A 3D rotation (x-, y-, z-axis angles) maps local to
global coordinates; only the product ``cos(alpha) * cos(gamma)`` enters the
far-field phase model, so the y-axis angle is carried but inert.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 2.99792458e8
"""Propagation speed in m/s."""

TWO_PI = 2.0 * np.pi

# Relative slack when checking that a frequency lies inside the band, so
# linspace endpoints survive roundoff.
_BAND_EDGE_RTOL = 1e-9


class OutOfBandError(ValueError):
    """Frequency outside the configured band."""


def half_wavelength(carrier_freq: float) -> float:
    "Half a carrier wavelength in meters, the default element spacing."
    return SPEED_OF_LIGHT / (2.0 * carrier_freq)


@dataclass(frozen=True)
class ArrayConfig:
    """Uniform linear array plus the operating band.

    Parameters
    ----------
    num_antennas:
        Element count, at least 1.
    carrier_freq:
        Center frequency in Hz.
    bandwidth:
        Total bandwidth in Hz; the band is ``[fc - B/2, fc + B/2]``.
    spacing:
        Element spacing in meters.  ``None`` selects half a carrier
        wavelength.
    speed_of_light:
        Propagation speed in m/s; overridable for unit experiments.
    """

    num_antennas: int
    carrier_freq: float
    bandwidth: float
    spacing: float | None = None
    speed_of_light: float = SPEED_OF_LIGHT

    def __post_init__(self) -> None:
        if self.num_antennas < 1:
            raise ValueError(f"num_antennas must be >= 1, got {self.num_antennas}")
        if self.bandwidth < 0:
            raise ValueError(f"bandwidth must be >= 0, got {self.bandwidth}")
        if not self.carrier_freq > self.bandwidth / 2.0:
            raise ValueError(
                "carrier_freq must exceed bandwidth/2 so the band stays positive: "
                f"fc={self.carrier_freq}, B={self.bandwidth}"
            )
        if self.spacing is None:
            object.__setattr__(self, "spacing", half_wavelength(self.carrier_freq))
        if not self.spacing > 0:
            raise ValueError(f"spacing must be > 0, got {self.spacing}")

    @property
    def freq_lo(self) -> float:
        return self.carrier_freq - self.bandwidth / 2.0

    @property
    def freq_hi(self) -> float:
        return self.carrier_freq + self.bandwidth / 2.0

    def element_positions_local(self) -> np.ndarray:
        "Local x-coordinates ``(n - 1) d`` as a length-N array."
        return self.spacing * np.arange(self.num_antennas, dtype=float)


def _wrap_angle(value: float) -> float:
    "Normalize an angle into [0, 2*pi)."
    if not np.isfinite(value):
        raise ValueError(f"rotation angle must be finite, got {value}")
    return float(np.mod(value, TWO_PI))


@dataclass(frozen=True)
class RotationAngles:
    """Rotation angles about the x-, y- and z-axes, in radians.

    Angles are normalized into [0, 2*pi) on construction.  The y-axis angle
    does not affect the gain model but is kept for completeness.
    """

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", _wrap_angle(self.alpha))
        object.__setattr__(self, "beta", _wrap_angle(self.beta))
        object.__setattr__(self, "gamma", _wrap_angle(self.gamma))

    @property
    def rotation_coefficient(self) -> float:
        "The scalar cos(alpha) * cos(gamma) entering the phase model."
        return float(np.cos(self.alpha) * np.cos(self.gamma))


def rotation_matrix(angles: RotationAngles) -> np.ndarray:
    """Overall rotation matrix R = Rx(alpha) @ Ry(beta) @ Rz(gamma).

    Returns a 3x3 orthogonal matrix with determinant +1.
    """
    ca, sa = np.cos(angles.alpha), np.sin(angles.alpha)
    cb, sb = np.cos(angles.beta), np.sin(angles.beta)
    cg, sg = np.cos(angles.gamma), np.sin(angles.gamma)
    rx = np.array([[1.0, 0.0, 0.0], [0.0, ca, -sa], [0.0, sa, ca]])
    ry = np.array([[cb, 0.0, sb], [0.0, 1.0, 0.0], [-sb, 0.0, cb]])
    rz = np.array([[cg, -sg, 0.0], [sg, cg, 0.0], [0.0, 0.0, 1.0]])
    return rx @ ry @ rz


def antenna_positions_global(config: ArrayConfig, angles: RotationAngles) -> np.ndarray:
    """Global coordinates of all elements after rotation, shape (N, 3).

    Element n sits at ``x_n`` times the first column of the rotation
    matrix, with ``x_n = (n - 1) d``.
    """
    rot = rotation_matrix(angles)
    return np.outer(config.element_positions_local(), rot[:, 0])


def steering_vector(
    config: ArrayConfig,
    freq: float,
    theta: float,
    angles: RotationAngles,
) -> np.ndarray:
    """Array response at frequency ``freq`` and departure angle ``theta``.

    Entry n is ``exp(j * 2*pi * f * cos(theta) * cos(alpha)*cos(gamma)
    * x_n / c)``; all entries have unit modulus and entry 1 equals 1.

    Raises
    ------
    OutOfBandError
        If ``freq`` lies outside ``[fc - B/2, fc + B/2]``.
    """
    slack = _BAND_EDGE_RTOL * max(abs(config.carrier_freq), 1.0)
    if freq < config.freq_lo - slack or freq > config.freq_hi + slack:
        raise OutOfBandError(
            f"frequency {freq} Hz outside band [{config.freq_lo}, {config.freq_hi}] Hz"
        )
    mu = angles.rotation_coefficient
    phase = (
        TWO_PI
        * freq
        * np.cos(theta)
        * mu
        * config.element_positions_local()
        / config.speed_of_light
    )
    return np.exp(1j * phase)


def steering_vector_composite(num_antennas: int, omega_bar: float, mu: float) -> np.ndarray:
    """Composite-domain array response ``[1, e^{j omega mu}, ..., e^{j (N-1) omega mu}]``.

    ``omega_bar`` is the per-element phase increment and ``mu`` the rotation
    coefficient with ``|mu| <= 1``.
    """
    if abs(mu) > 1.0 + 1e-12:
        raise ValueError(f"|mu| must be <= 1, got {mu}")
    return np.exp(1j * omega_bar * mu * np.arange(num_antennas, dtype=float))
