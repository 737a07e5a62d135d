import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from fourqubit.cartan import canonicalize
from fourqubit.estimators import CartanNormalForm, InvariantFeatures, StationaryPointSearch
from fourqubit.stationary import known_points
from fourqubit.states import NAMED_STATES


def states_matrix(names):
    return np.array([NAMED_STATES[n].amplitudes for n in names])


class TestCartanNormalForm:
    def test_transform(self):
        out = CartanNormalForm().fit_transform(states_matrix(["GHZ", "MP"]))
        np.testing.assert_allclose(out[0], canonicalize(np.array([1, 1, 0, 0]) / np.sqrt(2)).z, atol=1e-10)
        np.testing.assert_allclose(out[1], canonicalize([1, 0, 0, 0]).z, atol=1e-10)

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            CartanNormalForm().transform(states_matrix(["GHZ"]))

    def test_shape_check(self):
        with pytest.raises(ValueError):
            CartanNormalForm().fit(np.ones((2, 8)))

    def test_clone_params(self):
        est = clone(CartanNormalForm(require_critical=False, tol=1e-6))
        assert est.get_params() == {"require_critical": False, "tol": 1e-6}

    def test_pipeline(self):
        pipe = make_pipeline(CartanNormalForm(), InvariantFeatures(space="cartan"))
        out = pipe.fit_transform(states_matrix(["GHZ"]))
        np.testing.assert_allclose(out[0], [6, 9, 16.5, 64.125], atol=1e-9)


class TestInvariantFeatures:
    def test_state_space(self):
        feats = InvariantFeatures(with_hdet=True).fit_transform(states_matrix(["GHZ", "HD"]))
        assert feats.shape == (2, 5)
        np.testing.assert_allclose(feats[0, :4], [6, 9, 16.5, 64.125], atol=1e-12)
        assert feats[1, 4] == pytest.approx(1 / 19683, rel=1e-8)

    def test_names(self):
        assert list(InvariantFeatures().get_feature_names_out()) == ["F1", "F3", "F4", "F6"]

    def test_bad_space(self):
        with pytest.raises(ValueError):
            InvariantFeatures(space="full").fit(np.ones((1, 16)))

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            InvariantFeatures().transform(np.ones((1, 16)))


class TestStationaryPointSearch:
    def test_fit_candidates(self, rng):
        pts = np.array([p.z for p in known_points("F3")])
        noise = rng.normal(size=(5, 4)) + 1j * rng.normal(size=(5, 4))
        est = StationaryPointSearch("F3").fit(np.vstack([pts, pts[:3] * 2j, noise]))
        assert len(est.reports_) == 14
        assert est.points_.shape == (14, 4)
        labels = est.predict(np.vstack([pts, noise]))
        assert np.all(labels[:14] >= 0)
        assert len(set(labels[:14])) == 14
        assert np.all(labels[14:] == -1)

    def test_fit_search(self):
        est = StationaryPointSearch("F3", n_starts=200, seed=0).fit()
        assert len(est.reports_) == len(est.fingerprints_)

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            StationaryPointSearch().predict(np.ones((1, 4)))

    def test_predict_embedded_phase(self):
        est = StationaryPointSearch("F4").fit(np.array([p.z for p in known_points("F4")]))
        p = known_points("F4")[5].z
        assert est.predict((np.exp(0.3j) * p)[None, :])[0] >= 0
