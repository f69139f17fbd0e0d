"""Finite-dimensional real Hilbert spaces with a diagonal metric.

Vectors are plain ``numpy`` arrays in *raw* coordinates whose last axis has
length ``dim``.  All integration happens in *orthonormal* coordinates
``c_i = sqrt(w_i) x_i``, in which the Lebesgue measure is the standard one.
"""

from __future__ import annotations

import numpy as np

from .exceptions import InvalidArgument

__all__ = ["FeatureSpace"]


class FeatureSpace:
    """Real space R^m with inner product <x, y> = sum_i w_i x_i y_i.

    Parameters
    ----------
    metric_weights : array_like of shape (m,)
        Strictly positive diagonal metric.
    """

    __slots__ = ("_w", "_sqrt_w")

    def __init__(self, metric_weights):
        w = np.array(metric_weights, dtype=float).reshape(-1)
        if w.size == 0:
            raise InvalidArgument("feature space needs at least one dimension")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise InvalidArgument(f"metric weights must be finite and > 0, got {w}")
        w.setflags(write=False)
        sw = np.sqrt(w)
        sw.setflags(write=False)
        self._w = w
        self._sqrt_w = sw

    @classmethod
    def uniform(cls, dim: int, weight: float | None = None) -> "FeatureSpace":
        """Uniform metric; the default weight ``1/dim`` matches an average."""
        if dim < 1:
            raise InvalidArgument("dim must be >= 1")
        return cls(np.full(dim, 1.0 / dim if weight is None else float(weight)))

    @property
    def dim(self) -> int:
        return self._w.size

    @property
    def metric_weights(self) -> np.ndarray:
        return self._w

    def __repr__(self):
        return f"FeatureSpace(metric_weights={self._w.tolist()})"

    def __eq__(self, other):
        return isinstance(other, FeatureSpace) and np.array_equal(self._w, other._w)

    def __hash__(self):
        return hash(self._w.tobytes())

    def check(self, x, name="x") -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim == 0 or x.shape[-1] != self.dim:
            raise InvalidArgument(
                f"{name} has trailing dimension {x.shape[-1] if x.ndim else 0}, "
                f"expected {self.dim}")
        return x

    def inner(self, x, y):
        """Inner product, broadcasting over leading axes."""
        x = self.check(x)
        y = self.check(y, "y")
        # x * y first, so the result is exactly symmetric
        return np.sum(x * y * self._w, axis=-1)

    def norm_sq(self, x):
        x = self.check(x)
        return np.sum(self._w * x * x, axis=-1)

    def to_orthonormal(self, x):
        return self.check(x) * self._sqrt_w

    def from_orthonormal(self, c):
        return self.check(c, "c") / self._sqrt_w

    def zeros(self, *lead) -> np.ndarray:
        return np.zeros(lead + (self.dim,))
