import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from gcnn_ridgelet.core import make_test_set, random_network
from gcnn_ridgelet.calculus import ReLU
from gcnn_ridgelet.estimators import FiniteGCNN, RidgeletGCNN
from gcnn_ridgelet.exceptions import InvalidArgument
from gcnn_ridgelet.groups import cyclic_regular
from gcnn_ridgelet.targets import gaussian_orbit

SMALL = dict(x_points=32, ab_points=16, b_radius=6.0)


@pytest.fixture(scope="module")
def fitted():
    T = cyclic_regular(2)
    target = gaussian_orbit(T, 1.0)
    return RidgeletGCNN(**SMALL).fit(target), target


class TestRidgeletGCNN:
    def test_params_round_trip(self):
        est = RidgeletGCNN(activation="relu", x_points=16)
        params = est.get_params()
        assert params["activation"] == "relu" and params["x_points"] == 16
        other = clone(est).set_params(x_points=8)
        assert other.x_points == 8 and est.x_points == 16

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            RidgeletGCNN().predict(np.zeros((1, 2)))

    def test_fit_predict(self, fitted):
        est, target = fitted
        T = target.representation
        X = make_test_set(T, 10, 1.0)
        pred = est.predict(X)
        assert pred.shape == (10, 2)
        ref = target.values(X, T.group.elements)
        assert np.max(np.abs(pred - ref)) / np.max(np.abs(ref)) < 0.2
        np.testing.assert_allclose(est.scalar_product_, est.pair_.product)

    def test_predict_subset_of_elements(self, fitted):
        est, target = fitted
        X = make_test_set(target.representation, 3, 1.0)
        np.testing.assert_array_equal(est.predict(X, [1])[:, 0], est.predict(X)[:, 1])

    def test_bad_inputs(self, fitted):
        est, _ = fitted
        with pytest.raises(InvalidArgument):
            est.predict(np.zeros((2, 3)))
        with pytest.raises(InvalidArgument):
            est.predict(np.zeros((2, 2)), [5])
        with pytest.raises(InvalidArgument):
            RidgeletGCNN().fit(np.zeros((3, 2)))
        with pytest.raises(InvalidArgument):
            RidgeletGCNN(x_points=0).fit(gaussian_orbit(cyclic_regular(2)))

    def test_to_network(self, fitted):
        est, target = fitted
        fin = est.to_network(4)
        assert fin.n_units_ == 4**3
        X = make_test_set(target.representation, 5, 1.0)
        full = est.to_network(16).predict(X)
        np.testing.assert_allclose(full, est.predict(X), rtol=1e-10, atol=1e-12)


class TestFiniteGCNN:
    def test_predict_matches_network(self, rng):
        T = cyclic_regular(3)
        net = random_network(T, 5, ReLU(), rng)
        X = rng.normal(size=(4, 3))
        est = FiniteGCNN(net).fit()
        np.testing.assert_array_equal(est.predict(X), net.values(X, range(3)))
        assert est.n_units_ == 5

    def test_requires_network(self):
        with pytest.raises(InvalidArgument):
            FiniteGCNN().fit()
