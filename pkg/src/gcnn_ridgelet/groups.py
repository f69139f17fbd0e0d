"""Groups, their representations on feature spaces, and (G,T)-convolution.

Finite groups enumerate their elements; the torus is continuous but is
evaluated on a fixed grid of angles.  A representation acts on the full
feature space ``space``; filters ``a`` live in the (possibly smaller)
subspace ``param_space`` reached through ``project``/``embed``.  For the
finite groups both spaces coincide.
"""

from __future__ import annotations

import itertools
import math
from collections import deque

import numpy as np

from .exceptions import InvalidArgument, ResourceLimitError
from .feature_space import FeatureSpace

__all__ = [
    "Group", "CyclicGroup", "ProductCyclicGroup", "PermutationGroup",
    "SymmetricGroup", "TorusGroup", "Representation",
    "PermutationRepresentation", "TorusRepresentation", "cyclic_regular",
    "image_regular", "permutation_representation", "gconv",
    "equivariance_defect", "exhaustive_defect", "MAX_SUBGROUP",
]

MAX_SUBGROUP = 10**4
TWO_PI = 2.0 * math.pi


class Group:
    """Common interface; subclasses define the arithmetic."""

    finite = True

    @property
    def elements(self) -> tuple:
        return self._elements

    @property
    def order(self):
        return len(self._elements) if self.finite else None

    def contains(self, g) -> bool:
        return g in self._index

    def index(self, g) -> int:
        try:
            return self._index[self.validate(g)]
        except KeyError:
            raise InvalidArgument(f"{g!r} is not an element of {self}") from None

    def validate(self, g):
        g = self._normalize(g)
        if self.finite and g not in self._index:
            raise InvalidArgument(f"{g!r} is not an element of {self}")
        return g

    def _normalize(self, g):
        return g

    def compose(self, g, h):
        return self._compose(self.validate(g), self.validate(h))

    def inverse(self, g):
        return self._inverse(self.validate(g))

    def _finish(self, elements):
        self._elements = tuple(elements)
        self._index = {g: i for i, g in enumerate(self._elements)}

    def evaluation_elements(self) -> tuple:
        """Elements at which functions on the group are tabulated."""
        return self._elements


class CyclicGroup(Group):
    """Z_m under addition mod m."""

    def __init__(self, m: int):
        if int(m) < 1:
            raise InvalidArgument("cyclic order must be >= 1")
        self.m = int(m)
        self.identity = 0
        self._finish(range(self.m))

    def _normalize(self, g):
        if isinstance(g, (int, np.integer)):
            return int(g)
        raise InvalidArgument(f"cyclic element must be an int, got {g!r}")

    def _compose(self, g, h):
        return (g + h) % self.m

    def _inverse(self, g):
        return (-g) % self.m

    def __repr__(self):
        return f"CyclicGroup({self.m})"


class ProductCyclicGroup(Group):
    """Z_m1 x Z_m2, elements are pairs (p, q)."""

    def __init__(self, m1: int, m2: int):
        if int(m1) < 1 or int(m2) < 1:
            raise InvalidArgument("cyclic orders must be >= 1")
        self.m1, self.m2 = int(m1), int(m2)
        self.identity = (0, 0)
        self._finish(itertools.product(range(self.m1), range(self.m2)))

    def _normalize(self, g):
        try:
            p, q = g
            return (int(p), int(q))
        except (TypeError, ValueError):
            raise InvalidArgument(f"product-cyclic element must be a pair, got {g!r}") from None

    def _compose(self, g, h):
        return ((g[0] + h[0]) % self.m1, (g[1] + h[1]) % self.m2)

    def _inverse(self, g):
        return ((-g[0]) % self.m1, (-g[1]) % self.m2)

    def __repr__(self):
        return f"ProductCyclicGroup({self.m1}, {self.m2})"


class PermutationGroup(Group):
    """Subgroup of S_n generated by ``generators``.

    A permutation is a tuple ``g`` with ``g[i]`` the image of ``i``;
    ``compose(g, h)`` applies ``h`` first.
    """

    def __init__(self, n: int, generators=()):
        self.n = int(n)
        if self.n < 1:
            raise InvalidArgument("n must be >= 1")
        self.identity = tuple(range(self.n))
        gens = [self._check_perm(g) for g in generators]
        self.generators = tuple(gens)
        seen = {self.identity}
        order = [self.identity]
        queue = deque([self.identity])
        while queue:
            g = queue.popleft()
            for s in gens:
                gs = tuple(s[g[i]] for i in range(self.n))
                if gs not in seen:
                    if len(seen) >= MAX_SUBGROUP:
                        raise ResourceLimitError(
                            f"generated subgroup exceeds {MAX_SUBGROUP} elements")
                    seen.add(gs)
                    order.append(gs)
                    queue.append(gs)
        self._finish(sorted(order))
        self._verify()

    def _check_perm(self, g):
        try:
            g = tuple(int(v) for v in g)
        except TypeError:
            raise InvalidArgument(f"permutation must be a sequence, got {g!r}") from None
        if sorted(g) != list(range(self.n)):
            raise InvalidArgument(f"{g} is not a permutation of range({self.n})")
        return g

    def _verify(self):
        for g in self._elements:
            if self._compose(g, self._inverse(g)) != self.identity:
                raise InvalidArgument("inverse check failed")  # pragma: no cover

    def _normalize(self, g):
        return self._check_perm(g)

    def _compose(self, g, h):
        return tuple(g[h[i]] for i in range(self.n))

    def _inverse(self, g):
        inv = [0] * self.n
        for i, gi in enumerate(g):
            inv[gi] = i
        return tuple(inv)

    def __repr__(self):
        return f"PermutationGroup(n={self.n}, order={len(self._elements)})"


class SymmetricGroup(PermutationGroup):
    """Full S_n, generated by a transposition and an n-cycle."""

    def __init__(self, n: int):
        n = int(n)
        gens = []
        if n >= 2:
            gens.append(tuple([1, 0] + list(range(2, n))))
            gens.append(tuple(list(range(1, n)) + [0]))
        super().__init__(n, gens)

    def __repr__(self):
        return f"SymmetricGroup({self.n})"


class TorusGroup(Group):
    """R / 2piZ; elements are angles in [0, 2pi), tabulated on ``angles`` points."""

    finite = False

    def __init__(self, angles: int = 64):
        if int(angles) < 1:
            raise InvalidArgument("angle grid needs at least one point")
        self.angles = int(angles)
        self.identity = 0.0
        self._grid = tuple(TWO_PI * k / self.angles for k in range(self.angles))

    @property
    def elements(self):
        return self._grid

    def evaluation_elements(self):
        return self._grid

    def validate(self, g):
        try:
            g = float(g)
        except (TypeError, ValueError):
            raise InvalidArgument(f"torus element must be an angle, got {g!r}") from None
        if not math.isfinite(g):
            raise InvalidArgument("torus angle must be finite")
        return g % TWO_PI

    def contains(self, g):
        try:
            self.validate(g)
        except InvalidArgument:
            return False
        return True

    def index(self, g):
        raise InvalidArgument("torus elements are not indexed")

    def _compose(self, g, h):
        return (g + h) % TWO_PI

    def _inverse(self, g):
        return (-g) % TWO_PI

    def sample(self, rng, n):
        return tuple(rng.uniform(0.0, TWO_PI, size=n).tolist())

    def __repr__(self):
        return f"TorusGroup(angles={self.angles})"


class Representation:
    """Linear action g -> T_g on ``space``.

    Subclasses implement ``act``.  ``dual_act(g, a)`` is the adjoint of
    ``act(g^-1, .)`` under the space's inner product, so that
    ``<T_g x, a> = <x, T*_{g^-1} a>``.
    """

    group: Group
    space: FeatureSpace
    param_space: FeatureSpace

    def project(self, z):
        """Raw coordinates in ``param_space`` of the orthogonal projection."""
        return self.space.check(z)

    def embed(self, c):
        return self.param_space.check(c, "a")

    def act(self, g, x):
        raise NotImplementedError

    def dual_act(self, g, a):
        raise NotImplementedError

    def matrix(self, g) -> np.ndarray:
        """Matrix of T_g in raw coordinates (columns are images of e_i)."""
        return self.act(g, np.eye(self.space.dim)).T

    def pulled_back(self, x, g):
        """P T_{g^-1} x, the filter-space vector seen by a unit at ``g``."""
        return self.project(self.act(self.group.inverse(g), x))

    def gconv(self, a, x, g):
        """(a *_T x)(g) = <T_{g^-1} x, a>."""
        a = self.param_space.check(a, "a")
        return self.param_space.inner(self.pulled_back(x, g), a)


class PermutationRepresentation(Representation):
    """T_g permutes raw coordinates: ``act(g, x)[j] = x[src_g[j]]``.

    Parameters
    ----------
    group : Group
        A finite group.
    space : FeatureSpace
    source : callable
        ``source(g)`` returns the index array ``src_g``.
    """

    def __init__(self, group, space, source, name="permutation"):
        if not group.finite:
            raise InvalidArgument("permutation representations need a finite group")
        self.group = group
        self.space = space
        self.param_space = space
        self.name = name
        self._src = {}
        for g in group.elements:
            src = np.asarray(source(g), dtype=np.intp)
            if sorted(src.tolist()) != list(range(space.dim)):
                raise InvalidArgument(f"source map for {g!r} is not a permutation")
            src.setflags(write=False)
            self._src[g] = src
        w = space.metric_weights
        self._dual = {}
        for g in group.elements:
            # adjoint of act(g^-1): (M^T W a)_i / w_i with M[j, s(j)] = 1
            s = self._src[group.inverse(g)]
            t = np.argsort(s)
            self._dual[g] = (t, w[t] / w)
        self._check_homomorphism()

    def _check_homomorphism(self):
        G = self.group
        if not np.array_equal(self._src[G.identity], np.arange(self.space.dim)):
            raise InvalidArgument("T_e is not the identity")
        elems = G.elements
        if len(elems) ** 2 > 10**6:
            return
        for g in elems:
            for h in elems:
                # act(gh, x)[j] = act(g, act(h, x))[j] = x[src_h[src_g[j]]]
                if not np.array_equal(self._src[G._compose(g, h)],
                                      self._src[h][self._src[g]]):
                    raise InvalidArgument(
                        f"source maps are not a homomorphism at ({g!r}, {h!r})")

    def source(self, g):
        return self._src[self.group.validate(g)]

    def act(self, g, x):
        x = self.space.check(x)
        return x[..., self._src[self.group.validate(g)]]

    def dual_act(self, g, a):
        a = self.space.check(a, "a")
        t, scale = self._dual[self.group.validate(g)]
        return a[..., t] * scale

    def __repr__(self):
        return f"PermutationRepresentation({self.name}, {self.group}, dim={self.space.dim})"


def cyclic_regular(m: int, metric_weights=None) -> PermutationRepresentation:
    """Regular representation of Z_m on R^m: ``act(g, x)[j] = x[j - g]``."""
    G = CyclicGroup(m)
    space = FeatureSpace(metric_weights) if metric_weights is not None else FeatureSpace.uniform(m)
    if space.dim != m:
        raise InvalidArgument("metric length must equal m")
    return PermutationRepresentation(
        G, space, lambda g: (np.arange(m) - g) % m, name="cyclic_regular")


def image_regular(m1: int, m2: int, channels: int = 1, metric_weights=None):
    """Z_m1 x Z_m2 translating an (m1, m2, channels) image, flattened C-order."""
    G = ProductCyclicGroup(m1, m2)
    dim = m1 * m2 * channels
    space = FeatureSpace(metric_weights) if metric_weights is not None else FeatureSpace.uniform(dim)
    if space.dim != dim:
        raise InvalidArgument("metric length must equal m1*m2*channels")
    i, j, k = np.indices((m1, m2, channels))

    def source(g):
        p, q = g
        return np.ravel_multi_index(((i - p) % m1, (j - q) % m2, k), (m1, m2, channels)).reshape(-1)

    return PermutationRepresentation(G, space, source, name="image_regular")


def permutation_representation(group: PermutationGroup, metric_weights=None):
    """``act(g, x) = (x[g^-1(0)], ..., x[g^-1(n-1)])``."""
    n = group.n
    space = FeatureSpace(metric_weights) if metric_weights is not None else FeatureSpace.uniform(n, 1.0)
    if space.dim != n:
        raise InvalidArgument("metric length must equal n")
    return PermutationRepresentation(
        group, space, lambda g: np.asarray(group._inverse(g)), name="permutation")


class TorusRepresentation(Representation):
    """Rotations of real band-limited signals on the circle.

    A signal ``x(theta) = sum_{|n|<m} xh_n e^{i n theta}`` with
    ``xh_n = c_n + i s_n`` and ``xh_{-n} = conj(xh_n)`` is stored as
    ``(x_0, c_1..c_{m-1}, s_1..s_{m-1})``.  The inner product
    ``sum_{|n|<m} xh_n conj(yh_n)`` has metric ``(1, 2, ..., 2)``.  The
    filter space is the cosine subspace (``s = 0``), i.e. the first ``m``
    coordinates, on which ``(a * x)(alpha) = sum_{|n|<m} a_n x_n cos(n alpha)``.
    """

    def __init__(self, band: int, angles: int = 64):
        self.band = int(band)
        if self.band < 1:
            raise InvalidArgument("band must be >= 1")
        m = self.band
        self.group = TorusGroup(angles)
        self.space = FeatureSpace(np.r_[1.0, np.full(2 * (m - 1), 2.0)])
        self.param_space = FeatureSpace(np.r_[1.0, np.full(m - 1, 2.0)])
        self._freq = np.arange(1, m, dtype=float)

    def project(self, z):
        z = self.space.check(z)
        return z[..., :self.band]

    def embed(self, c):
        c = self.param_space.check(c, "a")
        return np.concatenate([c, np.zeros(c.shape[:-1] + (self.band - 1,))], axis=-1)

    def _rotate(self, alpha, x):
        m = self.band
        cos = np.cos(self._freq * alpha)
        sin = np.sin(self._freq * alpha)
        c = x[..., 1:m]
        s = x[..., m:]
        out = np.empty_like(x)
        out[..., 0] = x[..., 0]
        out[..., 1:m] = c * cos + s * sin
        out[..., m:] = s * cos - c * sin
        return out

    def act(self, g, x):
        x = self.space.check(x)
        return self._rotate(self.group.validate(g), x)

    def dual_act(self, g, a):
        # rotations are orthogonal for this metric, so the adjoint of
        # act(g^-1) is act(g)
        a = self.space.check(a, "a")
        return self._rotate(self.group.validate(g), a)

    def signal(self, z, theta):
        """Evaluate x(theta) for coefficient vectors ``z`` (full space)."""
        z = self.space.check(z)
        m = self.band
        theta = np.asarray(theta, dtype=float)
        n = self._freq
        ct = np.cos(np.multiply.outer(theta, n))
        st = np.sin(np.multiply.outer(theta, n))
        c = z[..., 1:m]
        s = z[..., m:]
        return z[..., 0][..., None] + 2.0 * (c[..., None, :] * ct - s[..., None, :] * st).sum(-1) \
            if z.ndim > 1 else z[0] + 2.0 * (ct @ c - st @ s)

    def __repr__(self):
        return f"TorusRepresentation(band={self.band}, angles={self.group.angles})"


def gconv(T: Representation, a, x, g):
    """(G,T)-convolution ``(a *_T x)(g) = <T_{g^-1} x, a>``."""
    return T.gconv(a, x, g)


def equivariance_defect(fn, T: Representation, samples) -> float:
    """max |fn(T_g x, h) - fn(x, g^-1 h)| over ``samples`` of (x, g, h)."""
    samples = list(samples)
    if not samples:
        raise InvalidArgument("equivariance_defect needs at least one sample")
    G = T.group
    worst = 0.0
    for x, g, h in samples:
        lhs = fn(T.act(g, x), h)
        rhs = fn(x, G.compose(G.inverse(g), h))
        worst = max(worst, float(np.max(np.abs(np.asarray(lhs) - np.asarray(rhs)))))
    return worst


def exhaustive_defect(table_fn, T: Representation, X, elements=None) -> float:
    """Equivariance defect over all (g, h) pairs for a batched evaluator.

    ``table_fn(X, elements)`` must return an array of shape (n, len(elements))
    with entry ``[i, k] = f(X[i])(elements[k])``.  Group elements ``g`` range
    over ``elements`` as well; for the torus the grid must be closed under
    composition, which holds for the uniform angle grid.
    """
    G = T.group
    elements = tuple(G.evaluation_elements() if elements is None else elements)
    X = T.space.check(np.atleast_2d(X))
    base = np.asarray(table_fn(X, elements))
    if G.finite:
        pos = {e: k for k, e in enumerate(elements)}
        lookup = lambda e: pos[e]  # noqa: E731
    else:
        L = len(elements)
        lookup = lambda e: int(round(e / TWO_PI * L)) % L  # noqa: E731
    worst = 0.0
    for g in elements:
        moved = np.asarray(table_fn(T.act(g, X), elements))
        ginv = G.inverse(g)
        idx = [lookup(G.compose(ginv, h)) for h in elements]
        worst = max(worst, float(np.max(np.abs(moved - base[:, idx]))))
    return worst
