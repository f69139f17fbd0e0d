"""Equivariant target functions built from their value at the identity.

A target is a scalar function ``f_e`` plus a representation; the full map is
``f(x)(g) = f_e(T_{g^-1} x)``.  Targets meant for reconstruction are
*projected*: ``f_e`` reads only the filter-space coordinates, so
``f(x)(g) = f_e(P T_{g^-1} x)``, which is what a network can represent.
"""

from __future__ import annotations

import warnings

import numpy as np

from .exceptions import InvalidArgument
from .groups import (CyclicGroup, PermutationGroup, Representation, SymmetricGroup,
                     TorusRepresentation, cyclic_regular, permutation_representation)

__all__ = [
    "Cutoff", "GaussianFactor", "BoxIndicator", "SmoothBump", "make_cutoff",
    "TargetFunction", "orbit_target", "gaussian_orbit", "difference_filter",
    "torus_differential", "torus_moment", "deepsets_target", "NonInvariantCutoffWarning",
]


class NonInvariantCutoffWarning(UserWarning):
    """The cutoff is not invariant under the group, so equivariance is lost."""


# -- cutoffs -----------------------------------------------------------------

class Cutoff:
    """Multiplier with values in [0, 1]; ``space`` supplies the norm."""

    def __call__(self, x, space):
        raise NotImplementedError

    def spec(self) -> dict:
        raise NotImplementedError

    def is_invariant(self, T: Representation, rng=None, samples=8) -> bool:
        """Spot-check ``cutoff(T_g x) == cutoff(x)`` over the group."""
        rng = np.random.default_rng(0) if rng is None else rng
        X = rng.normal(size=(samples, T.space.dim))
        base = self(X, T.space)
        elems = T.group.evaluation_elements()
        return all(np.allclose(self(T.act(g, X), T.space), base, rtol=0, atol=1e-12)
                   for g in elems)


class GaussianFactor(Cutoff):
    """phi_t(x) = exp(-|x|^2 / 4t); invariant under any isometric T."""

    def __init__(self, t: float):
        if not t > 0:
            raise InvalidArgument("t must be positive")
        self.t = float(t)

    def __call__(self, x, space):
        return np.exp(-space.norm_sq(x) / (4.0 * self.t))

    def spec(self):
        return {"type": "gaussian", "t": self.t}


class BoxIndicator(Cutoff):
    """1 on the raw-coordinate box |x_i| <= r_i, else 0."""

    def __init__(self, radius):
        r = np.asarray(radius, dtype=float)
        if np.any(r <= 0):
            raise InvalidArgument("box radius must be positive")
        self.radius = r

    def __call__(self, x, space):
        x = space.check(x)
        return np.all(np.abs(x) <= self.radius, axis=-1).astype(float)

    def spec(self):
        return {"type": "box", "radius": self.radius.tolist()}


class SmoothBump(Cutoff):
    """C-infinity radial bump: 1 for |x| <= r, 0 for |x| >= r + width."""

    def __init__(self, radius: float, width: float):
        if not radius > 0 or not width > 0:
            raise InvalidArgument("radius and width must be positive")
        self.radius = float(radius)
        self.width = float(width)

    @staticmethod
    def _psi(s):
        with np.errstate(divide="ignore", over="ignore"):
            return np.where(s > 0, np.exp(-1.0 / np.where(s > 0, s, 1.0)), 0.0)

    def __call__(self, x, space):
        r = np.sqrt(space.norm_sq(x))
        s = np.clip((self.radius + self.width - r) / self.width, 0.0, 1.0)
        a = self._psi(s)
        return a / (a + self._psi(1.0 - s))

    def spec(self):
        return {"type": "smooth_bump", "radius": self.radius, "width": self.width}


def make_cutoff(spec) -> Cutoff | None:
    if spec is None or isinstance(spec, Cutoff):
        return spec
    spec = dict(spec)
    kind = spec.pop("type", None)
    cls = {"gaussian": GaussianFactor, "box": BoxIndicator, "smooth_bump": SmoothBump}.get(kind)
    if cls is None:
        raise InvalidArgument(f"unknown cutoff {kind!r}")
    try:
        return cls(**spec)
    except TypeError as exc:
        raise InvalidArgument(f"bad parameters for cutoff {kind!r}: {exc}") from None


# -- targets -----------------------------------------------------------------

class TargetFunction:
    """f(x)(g) = f_e(T_{g^-1} x), optionally through the projection P.

    Parameters
    ----------
    f_e : callable
        Vectorized over leading axes.  Receives filter-space coordinates
        when ``projected`` is true, full-space coordinates otherwise.
    representation : Representation
    projected : bool
    """

    def __init__(self, f_e, representation: Representation, projected: bool = True,
                 name: str = "custom", params: dict | None = None):
        self.f_e = f_e
        self.representation = representation
        self.projected = bool(projected)
        self.name = name
        self.params = dict(params or {})

    @property
    def input_space(self):
        T = self.representation
        return T.param_space if self.projected else T.space

    def value_e(self, x):
        """f(x)(e); ``x`` lives in ``input_space``."""
        return np.asarray(self.f_e(self.input_space.check(x)), dtype=float)

    def __call__(self, x, g):
        T = self.representation
        y = T.act(T.group.inverse(g), x)
        return self.value_e(T.project(y) if self.projected else y)

    def values(self, X, elements) -> np.ndarray:
        """Table of shape (n, len(elements))."""
        X = self.representation.space.check(np.atleast_2d(X))
        return np.stack([self(X, g) for g in elements], axis=-1)

    def __repr__(self):
        return f"TargetFunction({self.name}, {self.representation!r})"


def orbit_target(f_e, T: Representation, projected: bool = True, name="orbit", params=None):
    """Equivariant extension of ``f_e`` along the orbit of T."""
    return TargetFunction(f_e, T, projected, name, params)


def gaussian_orbit(T: Representation, length: float = 1.0, center=None, amplitude=1.0):
    """f_e(x) = A exp(-|x - mu|^2 / 2 l^2) in the filter-space norm."""
    if not length > 0:
        raise InvalidArgument("length must be positive")
    space = T.param_space
    mu = space.zeros() if center is None else space.check(np.asarray(center, dtype=float), "center")

    def f_e(x):
        return amplitude * np.exp(-space.norm_sq(x - mu) / (2.0 * length**2))

    return TargetFunction(f_e, T, True, "gaussian_orbit",
                          {"length": length, "center": mu.tolist(), "amplitude": amplitude})


def _warn_if_variant(cutoff, T):
    if cutoff is not None and not cutoff.is_invariant(T):
        warnings.warn(f"{cutoff.spec()} is not invariant under {T.group!r}; "
                      "equivariance holds only where the cutoff is constant",
                      NonInvariantCutoffWarning, stacklevel=3)


def difference_filter(m: int, cutoff: Cutoff | None = None, T: Representation | None = None):
    """f(x)(i) = (x_{i+1} - x_i) * cutoff(x) under the cyclic regular representation."""
    if int(m) < 2:
        raise InvalidArgument("difference filter needs m >= 2")
    T = cyclic_regular(int(m)) if T is None else T
    if not isinstance(T.group, CyclicGroup) or T.space.dim != m:
        raise InvalidArgument("difference filter needs the cyclic regular representation")
    cutoff = make_cutoff(cutoff)
    _warn_if_variant(cutoff, T)
    space = T.space

    def f_e(x):
        d = x[..., 1] - x[..., 0]
        return d if cutoff is None else d * cutoff(x, space)

    return TargetFunction(f_e, T, True, "difference",
                          {"m": int(m), "cutoff": None if cutoff is None else cutoff.spec()})


def torus_differential(band: int, t: float, angles: int = 64, T=None):
    """f(x)(alpha) = x'(alpha) phi_t(x) for band-limited signals x.

    Acts on the full coefficient space: ``x'(0) = -2 sum_n n s_n``.
    """
    if int(band) < 2:
        raise InvalidArgument("band must be >= 2")
    T = TorusRepresentation(band, angles) if T is None else T
    phi = GaussianFactor(t)
    m = T.band
    n = np.arange(1, m, dtype=float)

    def f_e(z):
        return -2.0 * (z[..., m:] @ n) * phi(z, T.space)

    return TargetFunction(f_e, T, False, "torus_diff", {"band": m, "t": float(t)})


def torus_moment(band: int, t: float, angles: int = 64, T=None):
    """f_e(x) = (sum_{n=1}^{m-1} n x_n) phi_t(x) on the cosine subspace.

    This is the positive-frequency half of the differential filter's
    coefficient sum; unlike the full sum it does not vanish under
    x_{-n} = x_n, and it depends on P x only, so it can be reconstructed.
    """
    if int(band) < 2:
        raise InvalidArgument("band must be >= 2")
    T = TorusRepresentation(band, angles) if T is None else T
    phi = GaussianFactor(t)
    space = T.param_space
    n = np.arange(T.band, dtype=float)

    def f_e(x):
        return (x @ n) * phi(x, space)

    return TargetFunction(f_e, T, True, "torus_moment", {"band": T.band, "t": float(t)})


def deepsets_target(n: int, group: PermutationGroup | None = None):
    """f_e(x) = x_0 exp(-|x|^2 / 2) with the unit metric."""
    group = SymmetricGroup(n) if group is None else group
    if group.n != n:
        raise InvalidArgument("group must act on n points")
    T = permutation_representation(group)
    space = T.space

    def f_e(x):
        return x[..., 0] * np.exp(-0.5 * space.norm_sq(x))

    return TargetFunction(f_e, T, True, "deepsets", {"n": int(n)})
