import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gcnn_ridgelet.exceptions import InvalidArgument
from gcnn_ridgelet.feature_space import FeatureSpace
from gcnn_ridgelet.quadrature import BoxGrid, integrate

finite = st.floats(-1e3, 1e3, allow_nan=False)


class TestConstruction:
    def test_rejects_nonpositive_weights(self):
        with pytest.raises(InvalidArgument):
            FeatureSpace([1.0, 0.0])
        with pytest.raises(InvalidArgument):
            FeatureSpace([1.0, -2.0])

    def test_rejects_empty(self):
        with pytest.raises(InvalidArgument):
            FeatureSpace([])

    def test_uniform_default_is_average(self):
        fs = FeatureSpace.uniform(4)
        np.testing.assert_array_equal(fs.metric_weights, np.full(4, 0.25))

    def test_immutable_weights(self):
        fs = FeatureSpace([1.0, 2.0])
        with pytest.raises(ValueError):
            fs.metric_weights[0] = 5.0


class TestInner:
    def test_constant_vectors(self):
        fs = FeatureSpace([0.5, 0.5])
        assert fs.inner([1.0, 1.0], [1.0, 1.0]) == 1.0

    def test_zero(self, rng):
        fs = FeatureSpace.uniform(3)
        assert fs.inner(np.zeros(3), rng.normal(size=3)) == 0.0

    def test_matches_double_loop(self, rng):
        fs = FeatureSpace.uniform(3)
        x, y = rng.normal(size=3), rng.normal(size=3)
        total = 0.0
        for i in range(3):
            for j in range(3):
                if i == j:
                    total += fs.metric_weights[i] * x[i] * y[j]
        np.testing.assert_allclose(fs.inner(x, y), total, rtol=1e-14)

    def test_dimension_mismatch(self):
        fs = FeatureSpace.uniform(3)
        with pytest.raises(InvalidArgument):
            fs.inner(np.ones(2), np.ones(3))

    def test_broadcasts(self, rng):
        fs = FeatureSpace([1.0, 2.0, 3.0])
        X = rng.normal(size=(5, 3))
        y = rng.normal(size=3)
        np.testing.assert_allclose(fs.inner(X, y), [fs.inner(x, y) for x in X])

    @given(arrays(float, 4, elements=finite), arrays(float, 4, elements=finite))
    def test_symmetric(self, x, y):
        fs = FeatureSpace([0.1, 1.0, 2.0, 7.0])
        assert fs.inner(x, y) == fs.inner(y, x)


class TestOrthonormal:
    def test_unit_metric_is_identity(self, rng):
        fs = FeatureSpace(np.ones(3))
        x = rng.normal(size=3)
        np.testing.assert_array_equal(fs.to_orthonormal(x), x)

    def test_quarter_weight(self):
        np.testing.assert_allclose(FeatureSpace([0.25]).to_orthonormal([2.0]), [1.0])

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidArgument):
            FeatureSpace.uniform(2).from_orthonormal(np.ones(3))

    @settings(max_examples=50)
    @given(arrays(float, 3, elements=finite),
           arrays(float, 3, elements=st.floats(1e-3, 1e3)))
    def test_isometry_and_round_trip(self, x, w):
        fs = FeatureSpace(w)
        c = fs.to_orthonormal(x)
        np.testing.assert_allclose(c @ c, fs.inner(x, x), rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(fs.from_orthonormal(c), x, rtol=1e-12, atol=1e-12)


def test_hypercube_volume():
    # indicator of [-0.5, 1] x [0, 0.75] in orthonormal coordinates
    grid = BoxGrid.cube(2, 2.0, 400)
    lo, hi = np.array([-0.5, 0.0]), np.array([1.0, 0.75])

    def ind(c):
        return np.all((c >= lo) & (c <= hi), axis=1).astype(float)

    np.testing.assert_allclose(integrate(ind, grid), 1.5 * 0.75, rtol=1e-12)
