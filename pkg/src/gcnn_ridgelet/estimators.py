"""Estimator-style wrappers around the ridgelet pipeline."""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_elements, check_points, check_positive_int
from .calculus import RidgeletPair
from .core import FiniteNetwork, apply_S_table, discretize, ridgelet_transform
from .exceptions import InvalidArgument
from .quadrature import BoxGrid
from .targets import TargetFunction

__all__ = ["RidgeletGCNN", "FiniteGCNN"]


class RidgeletGCNN(BaseEstimator):
    """Continuous GCNN S[R[f; rho]] / <<sigma, rho>> fitted to a target.

    ``fit`` takes a :class:`TargetFunction` rather than samples: the
    ridgelet transform is a closed-form analysis operator, not a solver.

    Parameters
    ----------
    activation, rho0 : str, dict or object
    x_radius, x_points : float, int
        Midpoint grid over the filter space (orthonormal coordinates).
    a_radius, b_radius, ab_points : float, float, int
        Midpoint grid over (a, b).
    threads : int or None
    """

    def __init__(self, activation="gaussian", rho0=None, x_radius=6.0, x_points=64,
                 a_radius=4.0, b_radius=8.0, ab_points=32, threads=None):
        self.activation = activation
        self.rho0 = rho0
        self.x_radius = x_radius
        self.x_points = x_points
        self.a_radius = a_radius
        self.b_radius = b_radius
        self.ab_points = ab_points
        self.threads = threads

    def _grids(self, m):
        xg = BoxGrid.cube(m, self.x_radius, check_positive_int(self.x_points, "x_points"))
        ab = BoxGrid([self.a_radius] * m + [self.b_radius],
                     check_positive_int(self.ab_points, "ab_points"))
        return xg, ab

    def fit(self, target, y=None):
        if not isinstance(target, TargetFunction):
            raise InvalidArgument("fit expects a TargetFunction")
        T = target.representation
        m = T.param_space.dim
        rho0 = self.rho0 or {"type": "hermite_gaussian", "order": 2, "width": 1.0}
        self.pair_ = RidgeletPair(self.activation, rho0, m)
        self.x_grid_, self.ab_grid_ = self._grids(m)
        self.gamma_ = ridgelet_transform(target, self.pair_, self.x_grid_, self.ab_grid_,
                                         self.threads)
        self.representation_ = T
        self.scalar_product_ = self.pair_.product
        return self

    def predict(self, X, elements=None):
        """Array (n_samples, n_elements) approximating f(x)(g)."""
        check_is_fitted(self, "gamma_")
        T = self.representation_
        X = check_points(X, T)
        elements = check_elements(elements, T.group)
        raw = apply_S_table(self.gamma_, self.pair_.sigma, T, X, elements, self.threads)
        return raw / self.scalar_product_

    def to_network(self, n_per_axis):
        """Finite GCNN from the cube partition with ``n_per_axis`` cells per axis."""
        check_is_fitted(self, "gamma_")
        net = discretize(self.gamma_, self.pair_, self.representation_, n_per_axis)
        return FiniteGCNN(net, threads=self.threads)


class FiniteGCNN(BaseEstimator):
    """Thin estimator view of a :class:`FiniteNetwork`."""

    def __init__(self, network=None, threads=None):
        self.network = network
        self.threads = threads

    def fit(self, X=None, y=None):
        if not isinstance(self.network, FiniteNetwork):
            raise InvalidArgument("FiniteGCNN needs a FiniteNetwork")
        self.network_ = self.network
        return self

    def predict(self, X, elements=None):
        net = self.network if not hasattr(self, "network_") else self.network_
        if not isinstance(net, FiniteNetwork):
            raise InvalidArgument("FiniteGCNN needs a FiniteNetwork")
        T = net.representation
        X = check_points(X, T)
        return net.values(X, check_elements(elements, T.group), self.threads)

    @property
    def n_units_(self):
        return self.network.size
