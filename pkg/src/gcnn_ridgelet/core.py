"""Ridgelet transform, integral network S[gamma] and its discretization.

Parameters ``a`` live in orthonormal coordinates of the filter space while
integrating, and in raw coordinates inside networks.  ``apply_S`` and
``eval_network`` share one evaluation kernel, so a network and the
point-mass distribution it defines give bit-identical outputs.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from math import comb

import numpy as np
from threadpoolctl import threadpool_limits

from .calculus import DifferenceActivation, RidgeletPair, c_norm, make_activation
from .exceptions import InvalidArgument, NumericFailure, PreconditionViolation, ResourceLimitError
from .groups import Representation
from .quadrature import BLOCK, BoxGrid, PointCloud
from .targets import TargetFunction

__all__ = [
    "ParamDistribution", "FiniteNetwork", "ridgelet_transform", "apply_S",
    "apply_S_table", "reconstruct", "discretize", "eval_network",
    "universality_sweep", "reduce_difference_model", "calibrate_c_norm",
    "make_test_set", "random_network", "MAX_UNITS", "DECAY_TOL",
]

MAX_UNITS = 10**7
DECAY_TOL = 1e-6
_ROWS = 64


def _run_blocks(fn, n_items, block, threads):
    """Apply ``fn(start, stop)`` over fixed blocks; results in block order."""
    starts = list(range(0, n_items, block))
    spans = [(s, min(s + block, n_items)) for s in starts]
    with threadpool_limits(limits=1, user_api="blas"):
        if threads is None or threads <= 1 or len(spans) == 1:
            return [fn(s, e) for s, e in spans]
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            return list(pool.map(lambda se: fn(*se), spans))


def _dots(Y, A):
    """Y @ A.T for small inner dimension, accumulated in a fixed order."""
    out = Y[:, None, 0] * A[None, :, 0]
    for k in range(1, A.shape[1]):
        out += Y[:, None, k] * A[None, :, k]
    return out


def _kernel(sigma, A, b, coef, Yw, threads=None):
    """sum_i coef_i sigma(<y, a_i> - b_i) for every row of ``Yw`` (= w * y)."""
    n_units = A.shape[0]
    dtype = np.result_type(coef.dtype, float)

    def rows(r0, r1):
        Y = Yw[r0:r1]
        acc = np.zeros(Y.shape[0], dtype=dtype)
        for u0 in range(0, n_units, BLOCK):
            u1 = min(u0 + BLOCK, n_units)
            t = _dots(Y, A[u0:u1])
            t -= b[u0:u1]
            acc += np.sum(sigma(t) * coef[u0:u1], axis=1)
        return acc

    parts = _run_blocks(rows, Yw.shape[0], _ROWS, threads)
    out = np.concatenate(parts) if parts else np.zeros(0, dtype=dtype)
    if not np.all(np.isfinite(out)):
        raise NumericFailure("non-finite network output")
    return out


class ParamDistribution:
    """gamma(a, b) tabulated on a node set over (a, b)-space.

    Parameters
    ----------
    grid : BoxGrid or PointCloud
        Nodes ``(a_1..a_m, b)`` with ``a`` in orthonormal coordinates.
    values : array_like
        gamma at each node; real or complex.
    space : FeatureSpace
        Filter space the ``a`` coordinates belong to.
    """

    def __init__(self, grid, values, space, a_raw=None):
        values = np.asarray(values)
        if values.dtype.kind not in "fc":
            values = values.astype(float)
        values = values.reshape(-1)
        if values.size != grid.size:
            raise InvalidArgument(f"{values.size} values for {grid.size} nodes")
        if grid.dim != space.dim + 1:
            raise InvalidArgument("grid dimension must be filter dim + 1")
        if not np.all(np.isfinite(values)):
            raise NumericFailure("parameter distribution has non-finite values")
        self.grid = grid
        self.values = values
        self.space = space
        nodes = grid.nodes
        self.a_raw = space.from_orthonormal(nodes[:, :-1]) if a_raw is None else a_raw
        self.b = np.ascontiguousarray(nodes[:, -1])

    @classmethod
    def point_masses(cls, net: "FiniteNetwork"):
        """gamma_n = sum_i c_i delta_(a_i, b_i)."""
        space = net.representation.param_space
        nodes = np.column_stack([space.to_orthonormal(net.a), net.b])
        cloud = PointCloud(nodes, np.ones(net.size))
        return cls(cloud, net.c, space, a_raw=net.a)

    @property
    def masses(self):
        """gamma times quadrature weight at every node."""
        return self.values * self.grid.weights

    def __repr__(self):
        return f"ParamDistribution({self.grid!r})"


class FiniteNetwork:
    """f_n(x)(g) = sum_i c_i sigma((a_i * x)(g) - b_i), ``a`` in raw coordinates."""

    def __init__(self, a, b, c, sigma, representation: Representation):
        space = representation.param_space
        a = space.check(np.atleast_2d(np.asarray(a, dtype=float)), "a")
        b = np.asarray(b, dtype=float).reshape(-1)
        c = np.asarray(c).reshape(-1)
        if c.dtype.kind not in "fc":
            c = c.astype(float)
        if not (a.shape[0] == b.size == c.size) or b.size < 1:
            raise InvalidArgument("a, b, c must describe the same number (>= 1) of units")
        if b.size > MAX_UNITS:
            raise ResourceLimitError(f"{b.size} units exceeds cap {MAX_UNITS}")
        self.a = a
        self.b = b
        self.c = c
        self.sigma = make_activation(sigma)
        self.representation = representation

    @property
    def size(self):
        return self.b.size

    @property
    def units(self):
        return [(self.a[i], float(self.b[i]), self.c[i]) for i in range(self.size)]

    def values(self, X, elements, threads=None):
        return _evaluate(self.sigma, self.representation, self.a, self.b, self.c, X,
                         elements, threads)

    def __call__(self, x, g):
        return eval_network(self, x, g)

    def __repr__(self):
        return f"FiniteNetwork(units={self.size}, sigma={self.sigma!r})"


def _evaluate(sigma, T, A, b, coef, X, elements, threads=None):
    X = T.space.check(np.atleast_2d(X))
    w = T.param_space.metric_weights
    elements = list(elements)
    # rows ordered (element, point); fixed regardless of thread count
    Y = np.concatenate([T.pulled_back(X, g) for g in elements], axis=0) * w
    out = _kernel(sigma, A, b, coef, np.ascontiguousarray(Y), threads)
    return out.reshape(len(elements), X.shape[0]).T


def eval_network(net: FiniteNetwork, x, g):
    """f_n(x)(g); ``x`` may carry leading batch axes."""
    x = net.representation.space.check(x)
    flat = x.reshape(-1, x.shape[-1])
    return net.values(flat, [g])[:, 0].reshape(x.shape[:-1])


def apply_S_table(gamma: ParamDistribution, sigma, T: Representation, X, elements,
                  threads=None):
    """S[gamma](x)(g) for all x in ``X`` and g in ``elements``: shape (n, k)."""
    if gamma.space != T.param_space:
        raise InvalidArgument("distribution and representation use different filter spaces")
    return _evaluate(make_activation(sigma), T, gamma.a_raw, gamma.b, gamma.masses, X,
                     elements, threads)


def apply_S(gamma: ParamDistribution, sigma, T: Representation, x, g):
    """S[gamma](x)(g) = int gamma(a, b) sigma((a * x)(g) - b) da db."""
    x = T.space.check(x)
    flat = x.reshape(-1, x.shape[-1])
    return apply_S_table(gamma, sigma, T, flat, [g])[:, 0].reshape(x.shape[:-1])


def _check_decay(target, x_grid, fx):
    if isinstance(x_grid, BoxGrid):
        edge = fx[x_grid.boundary_mask()]
        peak = np.max(np.abs(fx))
        if edge.size and np.max(np.abs(edge)) > DECAY_TOL * peak:
            raise PreconditionViolation(
                f"target {target.name!r} has not decayed at the x-box boundary "
                f"(|f_e| = {np.max(np.abs(edge)):.3g}, peak {peak:.3g}); "
                "enlarge the box or multiply by a cutoff")


def ridgelet_transform(target: TargetFunction, pair: RidgeletPair, x_grid, ab_grid,
                       threads=None) -> ParamDistribution:
    """R[f; rho](a, b) = int f(x)(e) rho(<x, a> - b) dx on every (a, b) node.

    Both grids are in orthonormal coordinates of the filter space.
    """
    if not target.projected:
        raise InvalidArgument("ridgelet_transform needs a target that depends on P x only")
    space = target.representation.param_space
    m = space.dim
    if pair.m != m:
        raise InvalidArgument(f"pair built for m={pair.m}, filter space has m={m}")
    if x_grid.dim != m or ab_grid.dim != m + 1:
        raise InvalidArgument("grid dimensions do not match the filter space")
    X = np.ascontiguousarray(x_grid.nodes)
    fx = np.asarray(target.value_e(space.from_orthonormal(X)), dtype=float)
    if not np.all(np.isfinite(fx)):
        raise NumericFailure("target is not finite on the x-grid")
    _check_decay(target, x_grid, fx)
    fw = fx * x_grid.weights
    keep = fw != 0
    X, fw = X[keep], fw[keep]
    rho = pair.rho
    if fw.size == 0:
        return ParamDistribution(ab_grid, np.zeros(ab_grid.size), space)

    if isinstance(ab_grid, BoxGrid):
        # tensor structure: a over the first m axes, b on the last (fastest)
        a_grid = BoxGrid(ab_grid.radii[:m], ab_grid.points[:m])
        A = a_grid.nodes
        bvals = ab_grid.axis_nodes(m)

        def block(r0, r1):
            t = _dots(A[r0:r1], X)
            return np.stack([rho(t - bj) @ fw for bj in bvals], axis=1)

        step = max(1, BLOCK * 64 // max(X.shape[0], 1))
        values = np.concatenate(_run_blocks(block, A.shape[0], step, threads)).reshape(-1)
    else:
        nodes = ab_grid.nodes

        def block(r0, r1):
            t = _dots(nodes[r0:r1, :m], X)
            t -= nodes[r0:r1, m:]
            return rho(t) @ fw

        step = max(1, BLOCK * 64 // max(X.shape[0], 1))
        values = np.concatenate(_run_blocks(block, nodes.shape[0], step, threads))
    if not np.all(np.isfinite(values)):
        raise NumericFailure("ridgelet transform produced non-finite values")
    return ParamDistribution(ab_grid, values, space)


def make_test_set(T: Representation, n: int, radius: float, seed: int = 0):
    """``n`` points uniform in the orthonormal filter-space box, embedded in the full space."""
    rng = np.random.default_rng(seed)
    c = rng.uniform(-radius, radius, size=(int(n), T.param_space.dim))
    return T.embed(T.param_space.from_orthonormal(c))


def _errors(values, reference):
    diff = np.abs(values - reference)
    sup = float(np.max(diff)) if diff.size else 0.0
    scale = float(np.max(np.abs(reference))) if diff.size else 0.0
    rel = sup / scale if scale > 0 else sup
    return sup, rel


def reconstruct(target: TargetFunction, pair: RidgeletPair, x_grid, ab_grid, X, elements,
                gamma: ParamDistribution | None = None, threads=None) -> dict:
    """Compare S[R[f; rho]] with <<sigma, rho>> f on the test set.

    ``rel_error`` is sup|S - ref| / sup|ref| over all (x, g); when the
    reference vanishes identically the absolute error is reported instead.
    """
    T = target.representation
    if gamma is None:
        gamma = ridgelet_transform(target, pair, x_grid, ab_grid, threads)
    values = apply_S_table(gamma, pair.sigma, T, X, elements, threads)
    reference = pair.product * target.values(X, elements)
    sup, rel = _errors(values, reference)
    return {"values": values, "reference": reference, "sup_error": sup,
            "rel_error": rel, "gamma": gamma}


def discretize(gamma: ParamDistribution, pair: RidgeletPair, T: Representation,
               n_per_axis: int) -> FiniteNetwork:
    """Finite network from the cube partition of the (a, b)-box.

    Each coarse cell becomes one unit at its center with coefficient
    ``int_cell gamma / <<sigma, rho>>``; the cell integral is the sum of the
    fine-grid masses it contains, so ``n_per_axis`` must divide the fine
    point count on every axis.
    """
    n = int(n_per_axis)
    if n < 1:
        raise InvalidArgument("n_per_axis must be >= 1")
    grid = gamma.grid
    if not isinstance(grid, BoxGrid):
        raise InvalidArgument("discretize needs a tensor grid")
    units = n ** grid.dim
    if units > MAX_UNITS:
        raise ResourceLimitError(f"{units} units exceeds cap {MAX_UNITS}")
    if any(p % n for p in grid.points):
        raise InvalidArgument(f"n_per_axis={n} does not divide grid points {grid.points}")
    if gamma.space != T.param_space:
        raise InvalidArgument("distribution and representation use different filter spaces")
    shape = []
    for p in grid.points:
        shape += [n, p // n]
    cells = gamma.masses.reshape(shape).sum(axis=tuple(range(1, 2 * grid.dim, 2)))
    coarse = BoxGrid(grid.radii, [n] * grid.dim)
    nodes = coarse.nodes
    a = T.param_space.from_orthonormal(nodes[:, :-1])
    return FiniteNetwork(a, nodes[:, -1], cells.reshape(-1) / pair.product, pair.sigma, T)


def universality_sweep(target: TargetFunction, pair: RidgeletPair, x_grid, ab_grid, n_list,
                       X, elements, gamma=None, threads=None) -> dict:
    """sup |f - f_n| over the test set for each width parameter n.

    Returns ``rows`` (n, units, sup_error, rel_error) and ``networks``.
    """
    n_list = [int(n) for n in n_list]
    if not n_list or any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise InvalidArgument("n_list must be nonempty and strictly increasing")
    T = target.representation
    if gamma is None:
        gamma = ridgelet_transform(target, pair, x_grid, ab_grid, threads)
    reference = target.values(X, elements)
    rows, nets = [], []
    for n in n_list:
        net = discretize(gamma, pair, T, n)
        sup, rel = _errors(net.values(X, elements, threads), reference)
        rows.append({"n": n, "units": net.size, "sup_error": sup, "rel_error": rel})
        nets.append(net)
    return {"rows": rows, "networks": nets, "gamma": gamma}


def reduce_difference_model(net: FiniteNetwork, k: int | None = None,
                            theta: float | None = None) -> FiniteNetwork:
    """Rewrite sum c_i Delta_theta^k[sigma](a_i x - b_i) with plain sigma units.

    Unit i becomes k+1 units with biases b_i - j theta and coefficients
    c_i (-1)^{k-j} C(k, j), j = 0..k.
    """
    sigma = net.sigma
    if isinstance(sigma, DifferenceActivation):
        k = sigma.k if k is None else int(k)
        theta = sigma.theta if theta is None else float(theta)
        base = sigma.base
        if (k, theta) != (sigma.k, sigma.theta):
            raise InvalidArgument("k/theta disagree with the network's difference activation")
    else:
        if k is None or theta is None:
            raise InvalidArgument("k and theta are required for a plain activation")
        base = sigma
        k, theta = int(k), float(theta)
    if k < 0:
        raise InvalidArgument("k must be >= 0")
    if k == 0:
        return FiniteNetwork(net.a, net.b, net.c, base, net.representation)
    j = np.arange(k + 1)
    w = np.array([(-1) ** (k - i) * comb(k, i) for i in j], dtype=float)
    a = np.repeat(net.a, k + 1, axis=0)
    b = (net.b[:, None] - j[None, :] * theta).reshape(-1)
    c = (net.c[:, None] * w[None, :]).reshape(-1)
    return FiniteNetwork(a, b, c, base, net.representation)


def calibrate_c_norm(target: TargetFunction, pair: RidgeletPair, x_grid, ab_grid, X,
                     elements, threads=None) -> dict:
    """Solve S[R f] = C * (int sigma rho0) * f for C by least squares.

    The estimate is matched against the candidate normalizations
    {1, 2pi, (2pi)^m}; ``matched`` is the closest one and ``rel_dev`` the
    relative distance to it.
    """
    T = target.representation
    gamma = ridgelet_transform(target, pair, x_grid, ab_grid, threads)
    s = apply_S_table(gamma, pair.sigma, T, X, elements, threads).reshape(-1)
    f = target.values(X, elements).reshape(-1) * pair.inner_l2
    denom = float(f @ f)
    if denom == 0:
        raise InvalidArgument("calibration target vanishes on the test set")
    est = float(s @ f) / denom
    m = pair.m
    candidates = {"1": 1.0, "2pi": 2 * math.pi, "(2pi)^m": c_norm(m)}
    name = min(candidates, key=lambda k: abs(est / candidates[k] - 1))
    return {"estimate": est, "matched": name, "candidate": candidates[name],
            "rel_dev": abs(est / candidates[name] - 1), "candidates": candidates}


def random_network(T: Representation, units: int, sigma, rng) -> FiniteNetwork:
    """Network with standard-normal filters, biases and coefficients."""
    m = T.param_space.dim
    return FiniteNetwork(rng.normal(size=(units, m)), rng.normal(size=units),
                         rng.normal(size=units), sigma, T)
