"""Scikit-learn style front end for the joint beamforming/rotation solve."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from .composite import AngularRange
from .gain import beam_gain
from .geometry import ArrayConfig, steering_vector
from .pipeline import SolveParams, alternating_optimize


class RotatableBeamformer(BaseEstimator):
    """Max-min fair wideband beamformer with a jointly optimized array rotation.

    The estimator learns constant-modulus weights and a rotation of the
    linear array that maximize the worst-case beam gain over a band and an
    angular sector.  ``fit`` optionally takes an (n_samples, 2) array of
    ``[frequency_hz, angle_rad]`` points whose bounding box replaces the
    configured coverage region; ``predict`` returns linear beam gains at
    such points.

    Parameters
    ----------
    num_antennas : int, default=32
        Elements of the uniform linear array.
    carrier_freq_hz : float, default=1e12
        Center frequency.
    bandwidth_hz : float, default=1e11
        Total bandwidth.
    theta_min_deg, theta_max_deg : float, defaults 0 and 60
        Angular sector to cover, in degrees.
    spacing_m : float or None, default=None
        Element spacing; ``None`` means half a carrier wavelength.
    num_samples : int, default=64
        Composite-domain grid resolution.
    penalty_rho : float, default=20.0
        Rank-one penalty weight in the beamforming stage.
    n_randomizations : int, default=100
        Gaussian randomization draws during initialization.
    ao_tol : float, default=1e-4
        Relative stall tolerance of the alternating loop.
    ao_max_iter : int, default=15
        Alternating round budget.
    random_state : int, default=0
        Seed for the randomized initialization.

    Attributes
    ----------
    phases_ : ndarray of shape (num_antennas,)
        Optimized phase shifts.
    mu_ : float
        Optimized rotation coefficient ``cos(alpha) * cos(gamma)``.
    alpha_, gamma_ : float
        A rotation realizing ``mu_`` (x- and z-axis angles, radians).
    min_gain_ : float
        Worst-case beam gain over the composite grid (linear).
    min_gain_db_ : float
        Same in dB.
    report_ : SolveReport
        Full convergence record.
    """

    def __init__(
        self,
        num_antennas: int = 32,
        carrier_freq_hz: float = 1e12,
        bandwidth_hz: float = 1e11,
        theta_min_deg: float = 0.0,
        theta_max_deg: float = 60.0,
        spacing_m: float | None = None,
        num_samples: int = 64,
        penalty_rho: float = 20.0,
        n_randomizations: int = 100,
        ao_tol: float = 1e-4,
        ao_max_iter: int = 15,
        random_state: int = 0,
    ):
        self.num_antennas = num_antennas
        self.carrier_freq_hz = carrier_freq_hz
        self.bandwidth_hz = bandwidth_hz
        self.theta_min_deg = theta_min_deg
        self.theta_max_deg = theta_max_deg
        self.spacing_m = spacing_m
        self.num_samples = num_samples
        self.penalty_rho = penalty_rho
        self.n_randomizations = n_randomizations
        self.ao_tol = ao_tol
        self.ao_max_iter = ao_max_iter
        self.random_state = random_state

    def _coverage(self, X: np.ndarray | None) -> tuple[ArrayConfig, AngularRange]:
        if X is None:
            config = ArrayConfig(
                num_antennas=self.num_antennas,
                carrier_freq=self.carrier_freq_hz,
                bandwidth=self.bandwidth_hz,
                spacing=self.spacing_m,
            )
            sector = AngularRange.from_degrees(self.theta_min_deg, self.theta_max_deg)
            return config, sector
        X = check_array(X, ensure_min_features=2)
        if X.shape[1] != 2:
            raise ValueError("X must have two columns: frequency_hz, angle_rad")
        f_lo, f_hi = float(X[:, 0].min()), float(X[:, 0].max())
        config = ArrayConfig(
            num_antennas=self.num_antennas,
            carrier_freq=0.5 * (f_lo + f_hi),
            bandwidth=f_hi - f_lo,
            spacing=self.spacing_m,
        )
        t_lo, t_hi = float(X[:, 1].min()), float(X[:, 1].max())
        if t_lo == t_hi:
            t_hi = t_lo + 1e-9
        return config, AngularRange(t_lo, t_hi)

    def fit(self, X=None, y=None):
        """Solve for the weights and rotation covering the requested region."""
        config, sector = self._coverage(X)
        params = SolveParams(
            rho=self.penalty_rho,
            num_samples=self.num_samples,
            ao_tol=self.ao_tol,
            ao_max_iter=self.ao_max_iter,
            n_randomizations=self.n_randomizations,
            rng_seed=self.random_state,
        )
        report = alternating_optimize(config, sector, params)
        self.config_ = config
        self.sector_ = sector
        self.report_ = report
        self.phases_ = report.weights.phases
        self.weights_ = report.weights
        self.mu_ = report.mu
        self.alpha_ = report.angles.alpha
        self.gamma_ = report.angles.gamma
        self.angles_ = report.angles
        self.min_gain_ = report.min_gain
        self.min_gain_db_ = report.min_gain_db
        self.n_features_in_ = 2
        return self

    def predict(self, X):
        """Linear beam gains at ``[frequency_hz, angle_rad]`` rows."""
        check_is_fitted(self, "phases_")
        X = check_array(X)
        if X.shape[1] != 2:
            raise ValueError("X must have two columns: frequency_hz, angle_rad")
        gains = np.empty(X.shape[0])
        for i, (freq, theta) in enumerate(X):
            steering = steering_vector(self.config_, float(freq), float(theta), self.angles_)
            gains[i] = beam_gain(self.weights_, steering)
        return gains

    def score(self, X, y=None) -> float:
        """Worst-case gain in dB over the given points (higher is better)."""
        gains = self.predict(X)
        worst = float(gains.min())
        return 10.0 * float(np.log10(worst)) if worst > 0 else -np.inf
