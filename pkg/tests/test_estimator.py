import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from squintless.estimator import RotatableBeamformer
from squintless.gain import BeamformerWeights, beam_gain
from squintless.geometry import steering_vector


@pytest.fixture(scope="module")
def fitted():
    est = RotatableBeamformer(
        num_antennas=8,
        num_samples=12,
        n_randomizations=20,
        ao_max_iter=4,
        random_state=0,
    )
    return est.fit()


class TestRotatableBeamformer:
    def test_fit_exposes_solution_attributes(self, fitted):
        assert fitted.phases_.shape == (8,)
        assert -1.0 <= fitted.mu_ <= 1.0
        assert fitted.min_gain_ > 0
        assert fitted.min_gain_db_ == pytest.approx(10 * np.log10(fitted.min_gain_))
        assert fitted.angles_.rotation_coefficient == pytest.approx(fitted.mu_, abs=1e-12)

    def test_predict_matches_direct_evaluation(self, fitted):
        rng = np.random.default_rng(0)
        freqs = rng.uniform(fitted.config_.freq_lo, fitted.config_.freq_hi, 10)
        thetas = rng.uniform(fitted.sector_.theta_min, fitted.sector_.theta_max, 10)
        X = np.column_stack([freqs, thetas])
        gains = fitted.predict(X)
        weights = BeamformerWeights(fitted.phases_)
        for row, gain in zip(X, gains):
            direct = beam_gain(
                weights, steering_vector(fitted.config_, row[0], row[1], fitted.angles_)
            )
            assert gain == pytest.approx(direct, rel=1e-12)

    def test_score_is_worst_case_db(self, fitted):
        X = np.array([[1e12, 0.1], [1e12, 0.5], [0.96e12, 0.8]])
        gains = fitted.predict(X)
        assert fitted.score(X) == pytest.approx(10 * np.log10(gains.min()))

    def test_unfitted_predict_raises(self):
        with pytest.raises(NotFittedError):
            RotatableBeamformer().predict(np.array([[1e12, 0.0]]))

    def test_get_set_params_round_trip(self):
        est = RotatableBeamformer(num_antennas=4, penalty_rho=7.5)
        params = est.get_params()
        assert params["num_antennas"] == 4
        assert params["penalty_rho"] == 7.5
        est.set_params(num_antennas=16)
        assert est.num_antennas == 16

    def test_sklearn_clone_preserves_params(self):
        est = RotatableBeamformer(num_antennas=4, random_state=42)
        cloned = clone(est)
        assert cloned.get_params() == est.get_params()

    def test_fit_on_coverage_points(self):
        rng = np.random.default_rng(1)
        X = np.column_stack(
            [rng.uniform(0.9e12, 1.1e12, 40), rng.uniform(0.2, 0.9, 40)]
        )
        est = RotatableBeamformer(
            num_antennas=4, num_samples=8, n_randomizations=10, ao_max_iter=2
        ).fit(X)
        assert est.config_.carrier_freq == pytest.approx(
            0.5 * (X[:, 0].min() + X[:, 0].max())
        )
        assert est.sector_.theta_min == pytest.approx(X[:, 1].min())
        gains = est.predict(X)
        assert gains.shape == (40,)
        assert np.all(gains >= -1e-9)

    def test_deterministic_under_seed(self):
        kwargs = dict(num_antennas=4, num_samples=8, n_randomizations=10, ao_max_iter=2)
        a = RotatableBeamformer(**kwargs, random_state=5).fit()
        b = RotatableBeamformer(**kwargs, random_state=5).fit()
        assert a.phases_.tobytes() == b.phases_.tobytes()
        assert a.mu_ == b.mu_

    def test_rejects_wrong_feature_count(self, fitted):
        with pytest.raises(ValueError):
            fitted.predict(np.ones((3, 3)))
