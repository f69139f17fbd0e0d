import numpy as np
import pytest
from scipy.special import erf

from gcnn_ridgelet.exceptions import InvalidArgument, NumericFailure, ResourceLimitError
from gcnn_ridgelet.quadrature import BoxGrid, PointCloud, integrate, monte_carlo, refine


class TestBoxGrid:
    def test_counts_and_weights(self):
        g = BoxGrid([1.0, 2.0, 3.0], 4)
        assert g.size == 64
        np.testing.assert_allclose(g.weights, 2 * 4 * 6 / 64)
        assert g.nodes.shape == (64, 3)

    def test_nodes_are_cell_centers(self):
        g = BoxGrid([1.0], 4)
        np.testing.assert_allclose(g.nodes[:, 0], [-0.75, -0.25, 0.25, 0.75])

    def test_last_axis_fastest(self):
        g = BoxGrid([1.0, 1.0], 2)
        np.testing.assert_allclose(g.nodes, [[-.5, -.5], [-.5, .5], [.5, -.5], [.5, .5]])

    def test_boundary_mask(self):
        g = BoxGrid.cube(2, 1.0, 4)
        assert g.boundary_mask().sum() == 16 - 4

    def test_invalid(self):
        with pytest.raises(InvalidArgument):
            BoxGrid([0.0], 3)
        with pytest.raises(InvalidArgument):
            BoxGrid([1.0], 0)

    def test_node_cap(self):
        with pytest.raises(ResourceLimitError):
            BoxGrid.cube(4, 1.0, 101)


class TestIntegrate:
    def test_volume(self):
        assert integrate(lambda x: np.ones(len(x)), BoxGrid.cube(2, 1.0, 7)) == pytest.approx(4.0)

    def test_odd_integrand(self):
        assert abs(integrate(lambda x: x[:, 0], BoxGrid.cube(2, 3.0, 9))) < 1e-12

    def test_gaussian(self):
        val = integrate(lambda x: np.exp(-0.5 * (x**2).sum(1)), BoxGrid.cube(2, 8.0, 256))
        np.testing.assert_allclose(val, 2 * np.pi, atol=1e-6)

    def test_affine_exact(self, rng):
        c = rng.normal(size=3)
        g = BoxGrid([1.0, 2.0, 0.5], 5)
        val = integrate(lambda x: 1.5 + x @ c, g)
        np.testing.assert_allclose(val, 1.5 * 2 * 4 * 1, atol=1e-12)

    def test_linear_in_fn(self, rng):
        g = BoxGrid.cube(2, 2.0, 16)
        f = lambda x: np.sin(x[:, 0]) + x[:, 1] ** 2  # noqa: E731
        h = lambda x: np.cos(x[:, 1])  # noqa: E731
        lhs = integrate(lambda x: 2 * f(x) - 3 * h(x), g)
        np.testing.assert_allclose(lhs, 2 * integrate(f, g) - 3 * integrate(h, g), rtol=1e-12)

    def test_vector_valued(self):
        val = integrate(lambda x: np.stack([np.ones(len(x)), x[:, 0] ** 2], 1), BoxGrid([1.0], 64))
        np.testing.assert_allclose(val, [2.0, 2 / 3], rtol=1e-3)

    def test_nonfinite_reports_node(self):
        g = BoxGrid([1.0], 4)
        with pytest.raises(NumericFailure, match="node"):
            integrate(lambda x: 1.0 / (x[:, 0] - g.nodes[2, 0]), g)

    def test_point_cloud(self):
        pc = PointCloud([[0.0], [1.0]], [2.0, 3.0])
        assert integrate(lambda x: x[:, 0] + 1, pc) == 2 * 1 + 3 * 2

    def test_monte_carlo_seeded(self):
        a = monte_carlo([1.0, 1.0], 1000, seed=3)
        b = monte_carlo([1.0, 1.0], 1000, seed=3)
        np.testing.assert_array_equal(a.nodes, b.nodes)
        np.testing.assert_allclose(integrate(lambda x: np.ones(len(x)), a), 4.0)


class TestRefine:
    def test_points(self):
        assert refine(BoxGrid([1.0], 10), 2).points == (20,)

    def test_factor_check(self):
        with pytest.raises(InvalidArgument):
            refine(BoxGrid([1.0], 10), 1)

    def test_compose(self):
        g = BoxGrid([1.0, 2.0], 3)
        np.testing.assert_array_equal(refine(refine(g, 2), 2).nodes, refine(g, 4).nodes)

    def test_overflow(self):
        with pytest.raises(ResourceLimitError):
            refine(BoxGrid.cube(4, 1.0, 60), 2)

    def test_error_decays(self):
        exact = (np.sqrt(2 * np.pi) * erf(6 / np.sqrt(2))) ** 2
        f = lambda x: np.exp(-0.5 * (x**2).sum(1))  # noqa: E731
        g = BoxGrid.cube(2, 6.0, 6)
        errs, vals = [], []
        for _ in range(3):
            vals.append(integrate(f, g))
            errs.append(abs(vals[-1] - exact))
            g = refine(g, 2)
        assert errs[1] < errs[0]
        assert errs[2] < errs[1] or errs[2] < 1e-12
        changes = np.abs(np.diff(vals))
        assert changes[1] < changes[0] / 2
