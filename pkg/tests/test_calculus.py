import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate
from scipy.special import dawsn

from gcnn_ridgelet.calculus import (DifferenceActivation, Gaussian, GaussianRidgelet,
                                    HermiteGaussian, ReLU, RidgeletPair, Step, Tanh,
                                    TabulatedSpectrum, TruncatedPower, a3_check, c_norm,
                                    forward_difference, fractional_laplacian, make_activation,
                                    make_rho0, scalar_product, scalar_product_fourier, time_inner)
from gcnn_ridgelet.exceptions import (DegeneratePairError, InvalidArgument,
                                      PreconditionViolation)

B = np.linspace(-6, 6, 241)


class TestActivations:
    def test_values(self):
        b = np.array([-2.0, 0.0, 1.5])
        np.testing.assert_array_equal(ReLU()(b), [0.0, 0.0, 1.5])
        np.testing.assert_array_equal(Step()(b), [0.0, 1.0, 1.0])
        np.testing.assert_array_equal(TruncatedPower(2)(b), [0.0, 0.0, 2.25])
        np.testing.assert_allclose(Gaussian(2.0)(b), np.exp(-b**2 / 8))
        np.testing.assert_allclose(Tanh()(b), np.tanh(b))

    def test_truncated_power_endpoints(self):
        np.testing.assert_array_equal(TruncatedPower(0)(B), Step()(B))
        np.testing.assert_array_equal(TruncatedPower(1)(B), ReLU()(B))

    def test_gaussian_spectrum(self):
        g = Gaussian(1.3)
        for w in (0.0, 0.7, 2.0):
            re, _ = integrate.quad(lambda t: g(t) * math.cos(w * t), -np.inf, np.inf)
            np.testing.assert_allclose(g.spectrum(w), re, rtol=1e-10)

    def test_make(self):
        assert make_activation("relu") == ReLU()
        assert make_activation({"type": "gaussian", "width": 2.0}) == Gaussian(2.0)
        assert make_activation(Gaussian(2.0).spec()) == Gaussian(2.0)
        with pytest.raises(InvalidArgument):
            make_activation("softplus")
        with pytest.raises(InvalidArgument):
            make_activation({"type": "relu", "width": 1.0})
        with pytest.raises(InvalidArgument):
            Gaussian(0.0)


class TestMother:
    @pytest.mark.parametrize("order", [0, 1, 2, 3, 4])
    def test_spectrum_matches_quadrature(self, order):
        rho0 = HermiteGaussian(order, width=0.8, amplitude=1.7)
        for w in (0.0, 0.5, 1.9):
            re, _ = integrate.quad(lambda t: rho0(t) * math.cos(w * t), -30, 30, limit=200)
            im, _ = integrate.quad(lambda t: -rho0(t) * math.sin(w * t), -30, 30, limit=200)
            np.testing.assert_allclose(rho0.spectrum(w), re + 1j * im, atol=1e-10)

    def test_gaussian_is_order_zero(self):
        np.testing.assert_array_equal(GaussianRidgelet(1.5)(B), HermiteGaussian(0, 1.5)(B))

    def test_even_spectrum_nonnegative(self):
        om = np.linspace(-10, 10, 101)
        for n in (0, 2, 4, 6):
            s = HermiteGaussian(n).spectrum(om)
            assert np.all(s.real >= 0) and np.all(s.imag == 0)

    def test_tabulated_inverts(self):
        om = np.linspace(-40, 40, 4001)
        tab = TabulatedSpectrum(om, GaussianRidgelet().spectrum(om))
        np.testing.assert_allclose(tab(B), GaussianRidgelet()(B), atol=1e-10)

    def test_make(self):
        assert make_rho0({"type": "gaussian"}).spec() == GaussianRidgelet().spec()
        with pytest.raises(InvalidArgument):
            make_rho0({"type": "gaussian", "order": 3})
        with pytest.raises(InvalidArgument):
            make_rho0({"type": "wavelet"})


class TestFractionalLaplacian:
    def test_m0_identity(self):
        rho0 = HermiteGaussian(2)
        np.testing.assert_array_equal(fractional_laplacian(rho0, 0)(B), rho0(B))

    def test_zero_mother(self):
        rho = fractional_laplacian(GaussianRidgelet(amplitude=0.0), 3)
        np.testing.assert_array_equal(rho(B), 0.0)

    @pytest.mark.parametrize("order,m", [(0, 2), (2, 2), (1, 4), (4, 2)])
    def test_fft_matches_closed_form(self, order, m):
        rho0 = HermiteGaussian(order)
        fft = fractional_laplacian(rho0, m, method="fft")
        exact = fractional_laplacian(rho0, m, method="closed_form")
        np.testing.assert_allclose(fft(B), exact(B), rtol=0, atol=1e-8)

    def test_laplacian_is_minus_second_derivative(self):
        rho0 = HermiteGaussian(2, width=1.3)
        h = 1e-4
        fd = -(rho0(B + h) - 2 * rho0(B) + rho0(B - h)) / h**2
        np.testing.assert_allclose(fractional_laplacian(rho0, 2)(B), fd, atol=1e-5)

    def test_m1_dawson_oracle(self):
        # Lap^{1/2} exp(-b^2/2) = sqrt(2/pi) (1 - sqrt(2) b F(b/sqrt(2))), F Dawson's integral
        rho = fractional_laplacian(GaussianRidgelet(), 1)
        exact = math.sqrt(2 / math.pi) * (1 - math.sqrt(2) * B * dawsn(B / math.sqrt(2)))
        np.testing.assert_allclose(rho(B), exact, rtol=0, atol=5e-6)

    def test_m1_inverse_fourier_quadrature(self):
        # (1/pi) int_0^inf w rho0#(w) cos(w b) dw for the even Gaussian mother
        rho0 = GaussianRidgelet()
        rho = fractional_laplacian(rho0, 1)
        for b in (-2.0, 0.0, 0.3, 1.7):
            ref, _ = integrate.quad(lambda w: w * rho0.spectrum(w).real * math.cos(w * b),
                                    0, 60, limit=400)
            np.testing.assert_allclose(rho(b), ref / math.pi, atol=5e-6)

    def test_linear(self):
        r1 = fractional_laplacian(GaussianRidgelet(amplitude=1.0), 3)
        r2 = fractional_laplacian(GaussianRidgelet(amplitude=-2.5), 3)
        np.testing.assert_allclose(r2(B), -2.5 * r1(B), atol=1e-14)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_parity(self, m):
        # |omega|^m is even, so the parity of rho0 is preserved
        for order in (0, 1, 2):
            rho = fractional_laplacian(HermiteGaussian(order), m, method="fft")
            sign = (-1) ** order
            np.testing.assert_allclose(rho(-B), sign * rho(B), atol=1e-10)

    def test_zero_outside_grid(self):
        rho = fractional_laplacian(GaussianRidgelet(), 1)
        np.testing.assert_array_equal(rho(np.array([-41.0, 45.0])), 0.0)

    def test_boundary_precondition(self):
        with pytest.raises(PreconditionViolation):
            fractional_laplacian(GaussianRidgelet(width=10.0), 1)

    def test_invalid(self):
        with pytest.raises(InvalidArgument):
            fractional_laplacian(GaussianRidgelet(), -1)
        with pytest.raises(InvalidArgument):
            fractional_laplacian(GaussianRidgelet(), 3, method="closed_form")
        with pytest.raises(InvalidArgument):
            fractional_laplacian(GaussianRidgelet(), 2, method="wavelet")


class TestScalarProduct:
    def test_c_norm(self):
        assert c_norm(0) == 1.0
        np.testing.assert_allclose(c_norm(3), (2 * math.pi) ** 3)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_gaussian_pair(self, m):
        # int exp(-b^2) db = sqrt(pi)
        np.testing.assert_allclose(scalar_product(Gaussian(), GaussianRidgelet(), m),
                                   c_norm(m) * math.sqrt(math.pi), rtol=1e-12)

    def test_relu_hermite2_against_mpmath(self):
        rho0 = HermiteGaussian(2)
        mpmath.mp.dps = 30
        ref = mpmath.quad(lambda t: -t * (t * t - 1) * mpmath.exp(-t * t / 2), [0, mpmath.inf])
        assert abs(float(ref) + 1.0) < 1e-20
        np.testing.assert_allclose(time_inner(ReLU(), rho0), float(ref), rtol=1e-12)

    def test_relu_hermite4(self):
        # int_0^inf b He_4(b) exp(-b^2/2) db = 8 - 12 + 3
        np.testing.assert_allclose(time_inner(ReLU(), HermiteGaussian(4)), -1.0, rtol=1e-12)

    def test_tanh_hermite1_positive(self):
        assert time_inner(Tanh(), HermiteGaussian(1)) > 0

    @pytest.mark.parametrize("m", [1, 2, 3])
    @pytest.mark.parametrize("order", [0, 2])
    def test_fourier_matches_time(self, m, order):
        sigma, rho0 = Gaussian(), HermiteGaussian(order)
        rho = fractional_laplacian(rho0, m)
        np.testing.assert_allclose(scalar_product_fourier(sigma, rho, m),
                                   scalar_product(sigma, rho0, m), rtol=1e-10)

    @pytest.mark.parametrize("alpha", [2.0, -1.0, 0.5])
    def test_bilinear(self, alpha):
        base = scalar_product(ReLU(), HermiteGaussian(2), 2)
        np.testing.assert_allclose(scalar_product(ReLU(), HermiteGaussian(2).scaled(alpha), 2),
                                   alpha * base, rtol=1e-12)

    def test_degenerate(self):
        with pytest.raises(DegeneratePairError):
            scalar_product(ReLU(), GaussianRidgelet(amplitude=0.0), 2)
        with pytest.raises(DegeneratePairError):
            # odd rho0 against the even Gaussian activation
            RidgeletPair(Gaussian(), HermiteGaussian(1), 2)

    def test_fourier_needs_spectrum(self):
        with pytest.raises(InvalidArgument):
            scalar_product_fourier(ReLU(), fractional_laplacian(HermiteGaussian(2), 2), 2)

    def test_pair_attributes(self):
        pair = RidgeletPair("relu", {"type": "hermite_gaussian", "order": 2}, 2)
        np.testing.assert_allclose(pair.inner_l2, -1.0, rtol=1e-12)
        assert pair.product == pair.c_norm * pair.inner_l2
        assert pair.rho.method == "closed_form"


class TestForwardDifference:
    def test_relu_examples(self):
        d = forward_difference(ReLU(), 1, 1.0)
        np.testing.assert_array_equal(d(np.array([-3.0, -0.5, 0.0, 2.0])), [0.0, 0.5, 1.0, 1.0])

    def test_second_difference_of_square(self):
        d = forward_difference(lambda t: t * t, 2, 0.5)
        np.testing.assert_allclose(d(B), 2 * 0.25, atol=1e-12)

    def test_order_zero(self):
        sigma = ReLU()
        assert forward_difference(sigma, 0, 1.0) is sigma

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 6), st.floats(0.05, 3.0), st.sampled_from(["relu", "tanh", "step"]))
    def test_binomial_equals_recursive(self, n, theta, name):
        sigma = make_activation(name)
        t = np.linspace(-10, 10, 101)
        np.testing.assert_allclose(forward_difference(sigma, n, theta, "binomial")(t),
                                   forward_difference(sigma, n, theta, "recursive")(t),
                                   rtol=0, atol=1e-12)

    def test_invalid(self):
        with pytest.raises(InvalidArgument):
            forward_difference(ReLU(), 1, 0.0)
        with pytest.raises(InvalidArgument):
            forward_difference(ReLU(), -1, 1.0)

    def test_difference_activation(self):
        act = DifferenceActivation("relu", 2, 0.5)
        np.testing.assert_array_equal(act(B), forward_difference(ReLU(), 2, 0.5)(B))
        assert make_activation(act.spec()) == act
        assert set(act.kinks) == {0.0, -0.5, -1.0}


class TestA3:
    def test_relu(self):
        res = a3_check(ReLU(), 1, 1.0)
        assert res["bounded"] and res["lipschitz"]
        np.testing.assert_allclose(res["sup"], 1.0)
        np.testing.assert_allclose(res["lipschitz_est"], 1.0, rtol=1e-9)

    def test_step_not_lipschitz(self):
        res = a3_check(Step(), 1, 1.0)
        assert res["bounded"] and not res["lipschitz"]
        np.testing.assert_allclose(res["lipschitz_history"], [100.0, 200.0, 400.0], rtol=1e-9)

    def test_relu_order_zero_unbounded(self):
        assert not a3_check(ReLU(), 0, 1.0)["bounded"]

    def test_square_of_relu_needs_two(self):
        sq = TruncatedPower(2)
        assert not a3_check(sq, 1, 1.0)["bounded"]
        assert a3_check(sq, 2, 1.0)["bounded"]

    def test_radius_floor(self):
        with pytest.raises(InvalidArgument):
            a3_check(ReLU(), 1, 1.0, radius=50.0)
