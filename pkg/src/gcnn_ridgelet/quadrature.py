"""Deterministic node sets for every integral in the toolkit.

``BoxGrid`` is a tensor-product midpoint rule on an axis-aligned box; each
node is the center of one cell of the partition.  ``PointCloud`` is an
arbitrary weighted node set and backs both the seeded Monte Carlo mode and
sums of point masses.
"""

from __future__ import annotations

import numpy as np

from .exceptions import InvalidArgument, NumericFailure, ResourceLimitError

__all__ = ["BoxGrid", "PointCloud", "integrate", "refine", "monte_carlo",
           "MAX_NODES", "BLOCK"]

MAX_NODES = 10**8
# Fixed evaluation block; results never depend on how blocks are scheduled.
BLOCK = 4096


class BoxGrid:
    """Midpoint grid on prod_i [-r_i, r_i] with ``points`` cells per axis.

    Parameters
    ----------
    radii : sequence of float
        Half-width of the box along each axis.
    points : int or sequence of int
        Number of cells per axis.
    """

    def __init__(self, radii, points):
        radii = np.array(radii, dtype=float).reshape(-1)
        if radii.size == 0 or np.any(radii <= 0) or not np.all(np.isfinite(radii)):
            raise InvalidArgument(f"radii must be positive, got {radii}")
        pts = np.broadcast_to(np.asarray(points), radii.shape).astype(int)
        if np.any(pts < 1):
            raise InvalidArgument("points per axis must be >= 1")
        total = int(np.prod(pts.astype(object)))
        if total > MAX_NODES:
            raise ResourceLimitError(f"grid would have {total} nodes (cap {MAX_NODES})")
        self.radii = radii
        self.points = tuple(int(p) for p in pts)
        self.spacing = 2.0 * radii / pts
        self.weight = float(np.prod(self.spacing))
        self._nodes = None

    @classmethod
    def cube(cls, dim, radius, points):
        return cls([radius] * dim, [points] * dim)

    @property
    def dim(self):
        return self.radii.size

    @property
    def size(self):
        return int(np.prod(self.points))

    def axis_nodes(self, i):
        h = self.spacing[i]
        return -self.radii[i] + h * (np.arange(self.points[i]) + 0.5)

    @property
    def nodes(self) -> np.ndarray:
        """All nodes, shape (size, dim), last axis varying fastest."""
        if self._nodes is None:
            axes = [self.axis_nodes(i) for i in range(self.dim)]
            mesh = np.meshgrid(*axes, indexing="ij")
            self._nodes = np.stack([m.reshape(-1) for m in mesh], axis=-1)
            self._nodes.setflags(write=False)
        return self._nodes

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.size, self.weight)

    def boundary_mask(self) -> np.ndarray:
        """True for nodes in the outermost layer of cells."""
        idx = np.indices(self.points).reshape(self.dim, -1).T
        return np.any((idx == 0) | (idx == np.array(self.points) - 1), axis=1)

    def __repr__(self):
        return f"BoxGrid(radii={self.radii.tolist()}, points={list(self.points)})"

    def __eq__(self, other):
        return (isinstance(other, BoxGrid) and self.points == other.points
                and np.array_equal(self.radii, other.radii))


class PointCloud:
    """Explicit nodes with per-node weights."""

    def __init__(self, nodes, weights):
        nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
        weights = np.asarray(weights, dtype=float).reshape(-1)
        if weights.size != nodes.shape[0]:
            raise InvalidArgument("one weight per node required")
        if nodes.shape[0] > MAX_NODES:
            raise ResourceLimitError(f"{nodes.shape[0]} nodes exceeds cap {MAX_NODES}")
        self.nodes = nodes
        self.weights = weights

    @property
    def dim(self):
        return self.nodes.shape[1]

    @property
    def size(self):
        return self.nodes.shape[0]

    def __repr__(self):
        return f"PointCloud(size={self.size}, dim={self.dim})"


def monte_carlo(radii, n_samples, seed=0) -> PointCloud:
    """Uniform samples on a box, each weighted by vol/n."""
    radii = np.asarray(radii, dtype=float)
    rng = np.random.default_rng(seed)
    nodes = rng.uniform(-radii, radii, size=(int(n_samples), radii.size))
    vol = float(np.prod(2 * radii))
    return PointCloud(nodes, np.full(int(n_samples), vol / n_samples))


def integrate(fn, grid):
    """Sum of ``fn(node) * weight`` over all nodes of ``grid``.

    ``fn`` receives a block of nodes of shape (k, dim) and returns values of
    shape (k,) or (k, ...).  Blocks are summed in a fixed order.
    """
    nodes = grid.nodes
    weights = grid.weights
    total = None
    for start in range(0, nodes.shape[0], BLOCK):
        blk = nodes[start:start + BLOCK]
        vals = np.asarray(fn(blk))
        if not np.all(np.isfinite(vals)):
            bad = np.argwhere(~np.isfinite(vals.reshape(vals.shape[0], -1)))[0, 0]
            raise NumericFailure(f"non-finite integrand at node {blk[bad].tolist()}")
        w = weights[start:start + BLOCK].reshape((-1,) + (1,) * (vals.ndim - 1))
        part = np.sum(vals * w, axis=0)
        total = part if total is None else total + part
    return total


def refine(grid: BoxGrid, factor: int) -> BoxGrid:
    """Same box with ``factor`` times as many cells per axis."""
    if int(factor) < 2:
        raise InvalidArgument("refinement factor must be >= 2")
    return BoxGrid(grid.radii, [p * int(factor) for p in grid.points])
