import numpy as np
import pytest

from squintless.composite import sample_grid
from squintless.gain import BeamformerWeights, beam_gain, min_composite_gain
from squintless.geometry import steering_vector_composite
from squintless.rotation import (
    reconstruct_angles,
    sca_rotation,
    surrogate_coeff_table,
    surrogate_coeffs,
)


def gain_of(phases, omega, mu):
    weights = BeamformerWeights(phases)
    return beam_gain(weights, steering_vector_composite(len(phases), omega, mu))


def double_sum_curvature(omega, n):
    "Independent oracle: the termwise curvature accumulated pair by pair."
    total = 0.0
    for i in range(n):
        for j in range(n):
            total += -0.5 * omega**2 * (i - j) ** 2
    return total / n


class TestSurrogateCoeffs:
    def test_two_antenna_curvature(self):
        coeffs = surrogate_coeffs(1.0, np.zeros(2), 0.3)
        assert coeffs.curvature == pytest.approx(-0.5, abs=1e-12)
        assert coeffs.curvature == pytest.approx(double_sum_curvature(1.0, 2), abs=1e-12)

    def test_curvature_matches_pairwise_oracle(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            n = int(rng.integers(2, 9))
            omega = rng.uniform(0.1, 3.0)
            coeffs = surrogate_coeffs(omega, rng.uniform(-np.pi, np.pi, n), rng.uniform(-1, 1))
            assert coeffs.curvature == pytest.approx(double_sum_curvature(omega, n), rel=1e-12)

    def test_tight_at_anchor(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            n = int(rng.integers(2, 9))
            phases = rng.uniform(-np.pi, np.pi, n)
            omega = rng.uniform(0.05, np.pi)
            mu0 = rng.uniform(-1, 1)
            coeffs = surrogate_coeffs(omega, phases, mu0)
            assert coeffs(mu0) == pytest.approx(gain_of(phases, omega, mu0), abs=1e-12)

    def test_coherent_anchor_value(self):
        # phases matched at mu0 make every pairwise term hit cos(0) = 1
        n, omega, mu0 = 6, 1.3, 0.4
        phases = omega * mu0 * np.arange(n)
        coeffs = surrogate_coeffs(omega, phases, mu0)
        assert coeffs(mu0) == pytest.approx(n, abs=1e-12)

    def test_global_lower_bound(self):
        rng = np.random.default_rng(2)
        mus = np.linspace(-1, 1, 2001)
        for _ in range(50):
            n = int(rng.integers(2, 8))
            phases = rng.uniform(-np.pi, np.pi, n)
            omega = rng.uniform(0.05, np.pi)
            mu0 = rng.uniform(-1, 1)
            coeffs = surrogate_coeffs(omega, phases, mu0)
            gains = np.array([gain_of(phases, omega, m) for m in mus])
            assert np.max(coeffs(mus) - gains) <= 1e-9

    def test_table_matches_scalar_version(self):
        rng = np.random.default_rng(3)
        phases = rng.uniform(-np.pi, np.pi, 5)
        omegas = np.array([0.4, 1.1, 2.0])
        table = surrogate_coeff_table(omegas, phases, 0.25)
        for row, omega in zip(table, omegas):
            single = surrogate_coeffs(omega, phases, 0.25)
            np.testing.assert_allclose(
                row, [single.curvature, single.slope, single.offset], atol=1e-12
            )


class TestScaRotation:
    def test_uniform_phases_fixed_at_full_gain(self):
        grid = sample_grid((1.0, 2.0), 8)
        mu, trace = sca_rotation(grid, np.zeros(16), 0.0)
        assert mu == pytest.approx(0.0, abs=1e-9)
        assert trace.objective_values[-1] == pytest.approx(16.0, rel=1e-9)

    def test_matched_single_point_is_fixed_point(self):
        n, omega, mu0 = 8, 1.7, 0.6
        grid = sample_grid((omega, omega), 1)
        phases = omega * mu0 * np.arange(n)
        mu, trace = sca_rotation(grid, phases, mu0)
        assert mu == pytest.approx(mu0, abs=1e-9)
        assert trace.converged

    def test_ascent_and_never_below_start(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            n = int(rng.integers(3, 9))
            grid = sample_grid((0.5, 0.5 + rng.uniform(0.3, 2.0)), int(rng.integers(4, 17)))
            phases = rng.uniform(-np.pi, np.pi, n)
            mu0 = rng.uniform(-1, 1)
            weights = BeamformerWeights(phases)
            start, _ = min_composite_gain(weights, mu0, grid)
            mu, trace = sca_rotation(grid, phases, mu0)
            end, _ = min_composite_gain(weights, mu, grid)
            assert end >= start - 1e-9
            assert np.all(np.diff(trace.objective_values) >= -1e-9)

    def test_reaches_grid_search_or_improves(self):
        rng = np.random.default_rng(5)
        mus = np.linspace(-1, 1, 100_001)
        for _ in range(20):
            n = int(rng.integers(3, 9))
            count = int(rng.integers(4, 17))
            grid = sample_grid((rng.uniform(0.2, 1.0), rng.uniform(1.5, 3.2)), count)
            phases = rng.uniform(-np.pi, np.pi, n)
            mu0 = rng.uniform(-1, 1)
            weights = BeamformerWeights(phases)
            # dense oracle: gains[m, l] over the full mu grid
            gains = (
                np.abs(
                    np.exp(1j * (mus[:, None, None] * grid.samples[None, :, None] * np.arange(n)[None, None, :]))
                    @ np.conj(weights.vector)
                )
                ** 2
            )
            oracle = gains.min(axis=1).max()
            start, _ = min_composite_gain(weights, mu0, grid)
            mu, _ = sca_rotation(grid, phases, mu0)
            end, _ = min_composite_gain(weights, mu, grid)
            assert end >= oracle - 1e-3 or end >= start - 1e-9


class TestReconstructAngles:
    def test_unit_coefficient(self):
        angles = reconstruct_angles(1.0)
        assert (angles.alpha, angles.beta, angles.gamma) == (0.0, 0.0, 0.0)

    def test_zero_coefficient(self):
        assert reconstruct_angles(0.0).gamma == pytest.approx(np.pi / 2)

    def test_half_coefficient_round_trip(self):
        angles = reconstruct_angles(0.5)
        assert angles.gamma == pytest.approx(np.pi / 3)
        assert angles.rotation_coefficient == pytest.approx(0.5, abs=1e-12)

    def test_round_trip_randomized(self):
        rng = np.random.default_rng(6)
        for mu in rng.uniform(-1, 1, 100):
            assert reconstruct_angles(mu).rotation_coefficient == pytest.approx(
                float(mu), abs=1e-12
            )

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            reconstruct_angles(1.5)
