import math

import numpy as np
import pytest

from nugamma.errors import IntegrationError
from nugamma.specfun import QuadratureSpec, bessel_k, integrate, log_gamma

import oracles


class TestLogGamma:
    def test_gamma_one(self):
        assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)

    def test_gamma_half(self):
        assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-14)

    def test_small_argument_oracle(self):
        assert log_gamma(0.1) == pytest.approx(oracles.LOG_GAMMA_01, rel=1e-13)

    @pytest.mark.parametrize("x", [0.01, 0.03, 0.2, 1.7, 9.5, 42.0, 99.0, 170.0])
    def test_relative_accuracy(self, x):
        exact = float(oracles.log_gamma_mp(x))
        if exact == 0.0:
            assert abs(log_gamma(x)) < 1e-13
        else:
            assert abs(log_gamma(x) - exact) <= 1e-13 * abs(exact)

    def test_functional_equation(self):
        xs = np.geomspace(0.02, 160.0, 40)
        for x in xs:
            lhs = log_gamma(x + 1.0) - log_gamma(x)
            assert lhs == pytest.approx(math.log(x), rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
    def test_domain_error(self, x):
        with pytest.raises(ValueError):
            log_gamma(x)


class TestBesselK:
    def test_half_order_closed_form(self):
        # K_{1/2}(z) = sqrt(pi / 2z) e^{-z}
        expect = math.sqrt(math.pi / 4.0) * math.exp(-2.0)
        assert bessel_k(0.5, 2.0) == pytest.approx(expect, rel=1e-12)

    def test_order_symmetry(self):
        assert bessel_k(-0.4, 1.0) == bessel_k(0.4, 1.0)

    def test_integral_representation_oracle(self):
        assert bessel_k(0.4, 1.0) == pytest.approx(oracles.BESSEL_K_04_1, rel=1e-12)
        live = float(oracles.bessel_k_integral_mp(0.4, 1.0))
        assert bessel_k(0.4, 1.0) == pytest.approx(live, rel=1e-12)

    @pytest.mark.parametrize("nu", [-1.0, -0.45, 0.0, 0.13, 0.5, 0.99])
    @pytest.mark.parametrize("x", [1e-3, 0.4, 3.0, 60.0])
    def test_relative_accuracy(self, nu, x):
        exact = float(oracles.bessel_k_mp(nu, x))
        assert abs(bessel_k(nu, x) - exact) <= 1e-10 * abs(exact)

    def test_recurrence(self):
        # K_{nu+1}(x) = K_{nu-1}(x) + (2 nu / x) K_nu(x)
        for nu in (-0.3, 0.0, 0.25, 0.5):
            for x in np.geomspace(0.05, 50.0, 12):
                lhs = bessel_k(nu + 1.0, x)
                rhs = bessel_k(nu - 1.0, x) + (2.0 * nu / x) * bessel_k(nu, x)
                assert lhs == pytest.approx(rhs, rel=1e-9)

    def test_underflow_signal(self):
        assert bessel_k(0.3, 800.0) == 0.0

    @pytest.mark.parametrize("x", [0.0, -2.0])
    def test_domain_error(self, x):
        with pytest.raises(ValueError):
            bessel_k(0.3, x)


class TestIntegrate:
    def test_exponential(self):
        v, err = integrate(lambda t: math.exp(-t), 0.0, math.inf)
        assert v == pytest.approx(1.0, abs=1e-10)
        assert err < 1e-8

    def test_gaussian(self):
        v, _ = integrate(lambda t: math.exp(-t * t), 0.0, math.inf)
        assert v == pytest.approx(math.sqrt(math.pi) / 2.0, abs=1e-10)

    def test_endpoint_singularity(self):
        v, _ = integrate(lambda t: t ** -0.4, 0.0, 1.0)
        assert v == pytest.approx(1.0 / 0.6, rel=1e-9)

    def test_linearity(self):
        f = lambda t: math.exp(-t)
        g = lambda t: math.exp(-t * t)
        a, b = 2.5, -1.25
        lhs, _ = integrate(lambda t: a * f(t) + b * g(t), 0.0, math.inf)
        vf, _ = integrate(f, 0.0, math.inf)
        vg, _ = integrate(g, 0.0, math.inf)
        assert lhs == pytest.approx(a * vf + b * vg, abs=1e-9)

    def test_non_convergence_error(self):
        spec = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12, max_subdivisions=1)
        with pytest.raises(IntegrationError):
            integrate(lambda t: math.sin(1e4 * t), 0.0, 1.0, spec)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(abs_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_subdivisions=0)
