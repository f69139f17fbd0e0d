"""Activations, mother ridgelets and the constant <<sigma, rho>>.

Fourier convention: ``f#(omega) = int f(b) exp(-i omega b) db``.  With
``rho = Lap^{m/2} rho0`` (multiplier ``|omega|^m``) the scalar product

    <<sigma, rho>> = (2 pi)^{m-1} int sigma#(w) conj(rho#(w)) |w|^{-m} dw

reduces by Parseval to ``c_norm(m) * int sigma(b) conj(rho0(b)) db`` with
``c_norm(m) = (2 pi)^m``.  The time-domain form never needs the
distributional spectrum of ReLU or Step.
"""

from __future__ import annotations

import math
from math import comb

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicSpline
from scipy.special import eval_hermitenorm

from .exceptions import DegeneratePairError, InvalidArgument, PreconditionViolation

__all__ = [
    "Activation", "ReLU", "Tanh", "Gaussian", "Step", "TruncatedPower",
    "make_activation", "MotherRidgelet", "HermiteGaussian", "GaussianRidgelet",
    "TabulatedSpectrum", "make_rho0", "DerivedRidgelet", "fractional_laplacian",
    "c_norm", "time_inner", "scalar_product", "scalar_product_fourier",
    "RidgeletPair", "forward_difference", "DifferenceActivation", "a3_check",
    "DEGENERATE_TOL",
]

DEGENERATE_TOL = 1e-12
FFT_RADIUS = 40.0
FFT_POINTS = 2**14
FFT_PAD = 16
FFT_NOISE = 1e-15


def c_norm(m: int) -> float:
    """Factor turning int sigma rho0 db into <<sigma, Lap^{m/2} rho0>>."""
    return (2.0 * math.pi) ** int(m)


# -- activations -------------------------------------------------------------

class Activation:
    """Scalar nonlinearity, vectorized over numpy arrays."""

    name = "activation"
    kinks: tuple = ()

    def __call__(self, b):
        raise NotImplementedError

    def spec(self) -> dict:
        return {"type": self.name}

    def __repr__(self):
        params = ", ".join(f"{k}={v}" for k, v in self.spec().items() if k != "type")
        return f"{type(self).__name__}({params})"

    def __eq__(self, other):
        return type(self) is type(other) and self.spec() == other.spec()

    def __hash__(self):
        return hash(tuple(sorted(self.spec().items())))


class ReLU(Activation):
    name = "relu"
    kinks = (0.0,)

    def __call__(self, b):
        return np.maximum(b, 0.0)


class Tanh(Activation):
    name = "tanh"

    def __call__(self, b):
        return np.tanh(b)


class Step(Activation):
    name = "step"
    kinks = (0.0,)

    def __call__(self, b):
        return (np.asarray(b) >= 0).astype(float)


class TruncatedPower(Activation):
    """b_+^k; k = 0 is the step and k = 1 is ReLU."""

    name = "truncated_power"
    kinks = (0.0,)

    def __init__(self, k: int = 1):
        if int(k) < 0:
            raise InvalidArgument("truncated power needs k >= 0")
        self.k = int(k)

    def __call__(self, b):
        b = np.asarray(b, dtype=float)
        if self.k == 0:
            return (b >= 0).astype(float)
        return np.maximum(b, 0.0) ** self.k

    def spec(self):
        return {"type": self.name, "k": self.k}


class Gaussian(Activation):
    """exp(-b^2 / 2 w^2), the only shipped activation with an L^1 spectrum."""

    name = "gaussian"

    def __init__(self, width: float = 1.0):
        if not width > 0:
            raise InvalidArgument("width must be positive")
        self.width = float(width)

    def __call__(self, b):
        return np.exp(-np.square(b) / (2.0 * self.width**2))

    def spectrum(self, omega):
        w = self.width
        return math.sqrt(2 * math.pi) * w * np.exp(-0.5 * (w * np.asarray(omega)) ** 2)

    def spec(self):
        return {"type": self.name, "width": self.width}


_ACTIVATIONS = {"relu": ReLU, "tanh": Tanh, "step": Step,
                "truncated_power": TruncatedPower, "gaussian": Gaussian}


def make_activation(spec) -> Activation:
    """Build from ``"relu"`` or ``{"type": "gaussian", "width": 1.0}``."""
    if isinstance(spec, Activation):
        return spec
    if isinstance(spec, str):
        spec = {"type": spec}
    spec = dict(spec)
    kind = spec.pop("type", None)
    if kind not in _ACTIVATIONS:
        raise InvalidArgument(f"unknown activation {kind!r}")
    try:
        return _ACTIVATIONS[kind](**spec)
    except TypeError as exc:
        raise InvalidArgument(f"bad parameters for activation {kind!r}: {exc}") from None


# -- mother ridgelets --------------------------------------------------------

class MotherRidgelet:
    """Rapidly decreasing rho0 with a known (or tabulated) spectrum."""

    name = "rho0"
    amplitude = 1.0

    def __call__(self, b):
        raise NotImplementedError

    def spectrum(self, omega):
        raise NotImplementedError

    @property
    def decay_radius(self) -> float:
        """|b| beyond which rho0 is negligible (< 1e-16 relative)."""
        raise NotImplementedError

    def scaled(self, alpha: float) -> "MotherRidgelet":
        raise NotImplementedError

    def spec(self) -> dict:
        return {"type": self.name}

    def __repr__(self):
        params = ", ".join(f"{k}={v}" for k, v in self.spec().items() if k != "type")
        return f"{type(self).__name__}({params})"


class HermiteGaussian(MotherRidgelet):
    """rho0(b) = A (-1)^{floor(n/2)} He_n(b/w) exp(-(b/w)^2 / 2).

    The sign makes the spectrum of even orders nonnegative:
    rho0#(w) = A (-1)^{floor(n/2)} (-i w omega)^n sqrt(2 pi) w exp(-(w omega)^2 / 2).
    Order 0 is the Gaussian.
    """

    name = "hermite_gaussian"

    def __init__(self, order: int = 2, width: float = 1.0, amplitude: float = 1.0):
        if int(order) < 0:
            raise InvalidArgument("order must be >= 0")
        if not width > 0:
            raise InvalidArgument("width must be positive")
        self.order = int(order)
        self.width = float(width)
        self.amplitude = float(amplitude)
        self._sign = (-1) ** (self.order // 2)

    def __call__(self, b):
        u = np.asarray(b, dtype=float) / self.width
        return (self.amplitude * self._sign) * eval_hermitenorm(self.order, u) * np.exp(-0.5 * u * u)

    def spectrum(self, omega):
        w = self.width
        om = np.asarray(omega, dtype=float)
        return (self.amplitude * self._sign * math.sqrt(2 * math.pi) * w) \
            * (-1j * w * om) ** self.order * np.exp(-0.5 * (w * om) ** 2)

    @property
    def decay_radius(self):
        return self.width * (10.0 + math.sqrt(self.order))

    def laplacian_closed_form(self, m: int):
        """Lap^{m/2} rho0 for even m, as a callable: (-1)^{m/2} w^{-m} He_{n+m}."""
        if m % 2:
            raise InvalidArgument("closed form exists only for even m")
        n, w = self.order, self.width
        coef = self.amplitude * self._sign * (-1) ** (m // 2) * w ** (-m)

        def rho(b):
            u = np.asarray(b, dtype=float) / w
            return coef * eval_hermitenorm(n + m, u) * np.exp(-0.5 * u * u)

        return rho

    def scaled(self, alpha):
        return HermiteGaussian(self.order, self.width, self.amplitude * alpha)

    def spec(self):
        return {"type": self.name, "order": self.order, "width": self.width,
                "amplitude": self.amplitude}


class GaussianRidgelet(HermiteGaussian):
    """rho0(b) = A exp(-b^2 / 2 w^2)."""

    name = "gaussian"

    def __init__(self, width: float = 1.0, amplitude: float = 1.0):
        super().__init__(0, width, amplitude)

    def scaled(self, alpha):
        return GaussianRidgelet(self.width, self.amplitude * alpha)

    def spec(self):
        return {"type": self.name, "width": self.width, "amplitude": self.amplitude}


class TabulatedSpectrum(MotherRidgelet):
    """rho0 given by samples of a Hermitian spectrum on a uniform omega grid.

    ``rho0(b) = (1/2pi) int rho0#(w) exp(i w b) dw`` by the trapezoid rule.
    """

    name = "tabulated"

    def __init__(self, omega, values, amplitude: float = 1.0):
        omega = np.asarray(omega, dtype=float).reshape(-1)
        values = np.asarray(values, dtype=complex).reshape(-1)
        if omega.size != values.size or omega.size < 3:
            raise InvalidArgument("need matching omega/value arrays of length >= 3")
        d = np.diff(omega)
        if np.any(d <= 0) or not np.allclose(d, d[0], rtol=1e-9, atol=0):
            raise InvalidArgument("omega grid must be uniform and increasing")
        self.omega = omega
        self.values = values
        self.amplitude = float(amplitude)
        self._dw = d[0]
        self._trap = np.full(omega.size, self._dw)
        self._trap[[0, -1]] *= 0.5

    def __call__(self, b):
        b = np.asarray(b, dtype=float)
        phase = np.exp(1j * np.multiply.outer(b, self.omega))
        out = phase @ (self.values * self._trap) / (2 * math.pi)
        return self.amplitude * out.real

    def spectrum(self, omega):
        om = np.asarray(omega, dtype=float)
        re = np.interp(om, self.omega, self.values.real, left=0.0, right=0.0)
        im = np.interp(om, self.omega, self.values.imag, left=0.0, right=0.0)
        return self.amplitude * (re + 1j * im)

    @property
    def decay_radius(self):
        return min(FFT_RADIUS, 2 * math.pi / self._dw / 2)

    def scaled(self, alpha):
        return TabulatedSpectrum(self.omega, self.values, self.amplitude * alpha)

    def spec(self):
        return {"type": self.name, "omega": self.omega.tolist(),
                "real": self.values.real.tolist(), "imag": self.values.imag.tolist(),
                "amplitude": self.amplitude}


def make_rho0(spec) -> MotherRidgelet:
    if isinstance(spec, MotherRidgelet):
        return spec
    spec = dict(spec)
    kind = spec.pop("type", None)
    try:
        if kind == "gaussian":
            return GaussianRidgelet(**spec)
        if kind == "hermite_gaussian":
            return HermiteGaussian(**spec)
        if kind == "tabulated":
            vals = np.asarray(spec.pop("real")) + 1j * np.asarray(spec.pop("imag", 0.0))
            return TabulatedSpectrum(spec.pop("omega"), vals, **spec)
    except (TypeError, KeyError) as exc:
        raise InvalidArgument(f"bad parameters for rho0 {kind!r}: {exc}") from None
    raise InvalidArgument(f"unknown rho0 type {kind!r}")


# -- fractional Laplacian ----------------------------------------------------

class DerivedRidgelet:
    """rho = Lap^{m/2} rho0 as an evaluable with spectrum |omega|^m rho0#."""

    def __init__(self, rho0, m, fn, method, nodes=None, samples=None):
        self.rho0 = rho0
        self.m = m
        self._fn = fn
        self.method = method
        self.nodes = nodes
        self.samples = samples

    def __call__(self, b):
        return self._fn(b)

    def spectrum(self, omega):
        om = np.asarray(omega, dtype=float)
        return np.abs(om) ** self.m * self.rho0.spectrum(om)

    def __repr__(self):
        return f"DerivedRidgelet(m={self.m}, method={self.method!r}, rho0={self.rho0!r})"


def fractional_laplacian(rho0: MotherRidgelet, m: int, method: str = "auto",
                         radius: float = FFT_RADIUS, points: int = FFT_POINTS,
                         boundary_tol: float = 1e-12, pad: int = FFT_PAD) -> DerivedRidgelet:
    """rho = Lap^{m/2} rho0 via the Fourier multiplier |omega|^m.

    ``method="closed_form"`` (even m, Hermite-Gaussian family) differentiates
    exactly; ``"fft"`` samples rho0 on the periodic grid ``[-radius, radius)``
    with ``points`` nodes, multiplies the DFT and interpolates with a cubic
    spline (zero outside the grid).  ``"auto"`` prefers the closed form.

    For odd m the result decays only algebraically, so the samples are
    zero-padded to ``pad`` times the window before the transform; the
    aliasing error falls like ``pad**-2``.  Spectral coefficients below
    ``FFT_NOISE`` relative to the peak are roundoff and are dropped before
    the multiplier amplifies them.
    """
    m = int(m)
    if m < 0:
        raise InvalidArgument("m must be >= 0")
    if method not in ("auto", "fft", "closed_form"):
        raise InvalidArgument(f"unknown method {method!r}")
    if m == 0:
        return DerivedRidgelet(rho0, 0, rho0, "identity")
    closed_ok = m % 2 == 0 and isinstance(rho0, HermiteGaussian)
    if method == "closed_form" and not closed_ok:
        raise InvalidArgument("closed form needs even m and a Hermite-Gaussian rho0")
    if method == "closed_form" or (method == "auto" and closed_ok):
        return DerivedRidgelet(rho0, m, rho0.laplacian_closed_form(m), "closed_form")

    h = 2.0 * radius / points
    b = -radius + h * np.arange(points)
    vals = np.asarray(rho0(b), dtype=float)
    peak = np.max(np.abs(vals))
    edge = max(abs(vals[0]), abs(float(rho0(radius))))
    if edge > boundary_tol * max(peak, np.finfo(float).tiny):
        raise PreconditionViolation(
            f"rho0 has not decayed at |b| = {radius} (|rho0| = {edge:.3g}, "
            f"peak {peak:.3g}); widen the grid")
    pad = int(pad)
    if pad < 1:
        raise InvalidArgument("pad must be >= 1")
    spec = np.fft.rfft(vals, n=pad * points)
    spec[np.abs(spec) < FFT_NOISE * np.max(np.abs(spec))] = 0.0
    omega = 2.0 * math.pi * np.fft.rfftfreq(pad * points, d=h)
    out = np.fft.irfft(spec * omega**m, n=pad * points)[:points]
    coef = CubicSpline(b, out).c  # (4, points - 1), uniform knots
    c0, c1, c2, c3 = (np.ascontiguousarray(c) for c in coef)
    last = points - 2

    def rho(x):
        # piecewise cubic on uniform knots, zero outside [b_0, b_{N-1}]
        x = np.asarray(x, dtype=float)
        s = (x - b[0]) / h
        i = np.floor(s)
        inside = (s >= 0) & (s <= last + 1)
        i = np.clip(i, 0, last).astype(np.intp)
        d = x - b[i]
        y = ((c0[i] * d + c1[i]) * d + c2[i]) * d + c3[i]
        return np.where(inside, y, 0.0)

    return DerivedRidgelet(rho0, m, rho, "fft", b, out)


# -- scalar product ----------------------------------------------------------

def time_inner(sigma: Activation, rho0: MotherRidgelet) -> float:
    """int sigma(b) rho0(b) db by adaptive quadrature, split at kinks."""
    R = rho0.decay_radius
    cuts = sorted({-R, R, *[k for k in sigma.kinks if -R < k < R]})
    total = 0.0
    f = lambda t: float(sigma(t) * rho0(t))  # noqa: E731
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        val, _ = integrate.quad(f, lo, hi, limit=400, epsabs=1e-15, epsrel=1e-13)
        total += val
    return total


def _check_product(value, what):
    if not np.isfinite(value) or abs(value) < DEGENERATE_TOL:
        raise DegeneratePairError(f"{what} = {value!r}; the pair cannot reconstruct")
    return float(value)


def scalar_product(sigma: Activation, rho0: MotherRidgelet, m: int) -> float:
    """<<sigma, Lap^{m/2} rho0>> from the time-domain integral."""
    return _check_product(c_norm(m) * time_inner(sigma, rho0), "<<sigma, rho>>")


def scalar_product_fourier(sigma, rho, m: int, omega_max: float | None = None,
                           points: int = 200_000) -> float:
    """(2pi)^{m-1} int sigma# conj(rho#) |omega|^{-m} d omega (midpoint rule).

    ``sigma`` must expose an integrable ``spectrum``; ``rho`` is a
    ``DerivedRidgelet``.  The midpoint grid never samples omega = 0.
    """
    if not hasattr(sigma, "spectrum"):
        raise InvalidArgument(f"{sigma!r} has no classical spectrum")
    if omega_max is None:
        omega_max = 40.0 / min(getattr(sigma, "width", 1.0), getattr(rho.rho0, "width", 1.0))
    points += points % 2
    h = 2.0 * omega_max / points
    om = -omega_max + h * (np.arange(points) + 0.5)
    integrand = sigma.spectrum(om) * np.conj(rho.spectrum(om)) * np.abs(om) ** (-float(m))
    val = (2 * math.pi) ** (m - 1) * np.sum(integrand) * h
    if abs(val.imag) > 1e-8 * max(abs(val.real), 1.0):
        raise InvalidArgument("scalar product has a nonzero imaginary part")
    return _check_product(val.real, "<<sigma, rho>>")


class RidgeletPair:
    """Activation sigma, mother rho0, derived rho and <<sigma, rho>>.

    Parameters
    ----------
    sigma : Activation
    rho0 : MotherRidgelet
    m : int
        Dimension of the filter space.
    method : str
        Passed to :func:`fractional_laplacian`.
    """

    def __init__(self, sigma, rho0, m: int, method: str = "auto"):
        self.sigma = make_activation(sigma)
        self.rho0 = make_rho0(rho0)
        self.m = int(m)
        self.inner_l2 = time_inner(self.sigma, self.rho0)
        self.c_norm = c_norm(self.m)
        self.product = _check_product(self.c_norm * self.inner_l2, "<<sigma, rho>>")
        self.rho = fractional_laplacian(self.rho0, self.m, method=method)

    def __repr__(self):
        return (f"RidgeletPair(sigma={self.sigma!r}, rho0={self.rho0!r}, m={self.m}, "
                f"product={self.product:.6g})")


# -- forward differences and (A3) -------------------------------------------

def forward_difference(sigma, n: int, theta: float, method: str = "binomial"):
    """Delta_theta^n[sigma] as a callable.

    ``"binomial"`` uses sum_j (-1)^{n-j} C(n,j) sigma(t + j theta);
    ``"recursive"`` applies Delta^1 n times.
    """
    n = int(n)
    if n < 0:
        raise InvalidArgument("n must be >= 0")
    if n >= 1 and not theta > 0:
        raise InvalidArgument("theta must be positive")
    if n == 0:
        return sigma
    if method == "binomial":
        coefs = [(j, (-1) ** (n - j) * comb(n, j)) for j in range(n + 1)]

        def diff(t):
            t = np.asarray(t, dtype=float)
            return sum(c * sigma(t + j * theta) for j, c in coefs)

        return diff
    if method == "recursive":
        prev = forward_difference(sigma, n - 1, theta, "recursive")
        return lambda t: prev(np.asarray(t, dtype=float) + theta) - prev(t)
    raise InvalidArgument(f"unknown method {method!r}")


def a3_check(sigma, n: int, theta: float, radius: float = 100.0, spacing: float = 1e-2,
             refinements: int = 2) -> dict:
    """Check that Delta_theta^n[sigma] is bounded and Lipschitz on [-R, R].

    Returns ``sup``, ``lipschitz_est`` (max slope between neighbouring grid
    nodes), ``bounded`` (sup finite and unchanged within 1e-6 when R
    doubles), ``lipschitz_history`` (estimate under ``refinements``
    successive halvings of the spacing) and ``lipschitz`` (history stable
    within 1%).
    """
    if radius < 100:
        raise InvalidArgument("a3_check needs radius >= 100")
    d = forward_difference(sigma, n, theta)

    def scan(R, h):
        k = int(round(R / h))
        t = np.linspace(-R, R, 2 * k + 1)
        v = np.asarray(d(t), dtype=float)
        return v, t[1] - t[0]

    v, h = scan(radius, spacing)
    sup = float(np.max(np.abs(v)))
    v2, _ = scan(2 * radius, spacing)
    sup2 = float(np.max(np.abs(v2)))
    bounded = bool(np.isfinite(sup) and np.isfinite(sup2) and abs(sup2 - sup) <= 1e-6)
    lip = float(np.max(np.abs(np.diff(v))) / h)
    history = [lip]
    for r in range(1, refinements + 1):
        vr, hr = scan(radius, spacing / 2**r)
        history.append(float(np.max(np.abs(np.diff(vr))) / hr))
    stable = all(abs(b - a) <= 0.01 * max(abs(a), 1e-300) for a, b in zip(history, history[1:]))
    return {"bounded": bounded, "sup": sup, "lipschitz_est": lip,
            "lipschitz_history": history, "lipschitz": bool(stable)}


class DifferenceActivation(Activation):
    """Delta_theta^k[sigma] packaged as an activation."""

    name = "difference"

    def __init__(self, base, k: int, theta: float):
        self.base = make_activation(base)
        self.k = int(k)
        self.theta = float(theta)
        self._fn = forward_difference(self.base, self.k, self.theta)
        self.kinks = tuple(t - j * self.theta for t in self.base.kinks for j in range(self.k + 1))

    def __call__(self, b):
        return self._fn(b)

    def spec(self):
        return {"type": self.name, "base": self.base.spec(), "k": self.k, "theta": self.theta}

    def __hash__(self):
        return hash((self.name, hash(self.base), self.k, self.theta))


_ACTIVATIONS["difference"] = DifferenceActivation
