"""Tests for the special-function and quadrature kernels.

Expected values come from the stated independent oracles (Euler-Maclaurin
corrected harmonic sums, long power series, bisection), frozen here; a
high-precision library cross-check guards the J0 accuracy contract.
"""

import math

import mpmath
import numpy as np
import pytest

from ltcert.specfun import (
    ConvergenceError,
    PoleError,
    bessel_j0,
    bessel_j0_zero,
    gauss_legendre,
    integrate_semi_infinite,
    polygamma,
)

mpmath.mp.dps = 30


def euler_gamma_oracle(m=100000):
    # sum_{n<=M} 1/n - log M - 1/(2M) + 1/(12 M^2), error O(M^-4)
    s = math.fsum(1.0 / n for n in range(1, m + 1))
    return s - math.log(m) - 0.5 / m + 1.0 / (12.0 * m * m)


def zeta2_oracle(m=100000):
    # sum_{n<=M} n^-2 + 1/M - 1/(2M^2) + 1/(6M^3), error O(M^-5)
    s = math.fsum(1.0 / (n * n) for n in range(1, m + 1))
    return s + 1.0 / m - 0.5 / m**2 + 1.0 / (6.0 * m**3)


class TestPolygamma:
    def test_digamma_at_one(self):
        assert polygamma(0, 1.0).real == pytest.approx(-euler_gamma_oracle(), abs=1e-13)
        assert abs(polygamma(0, 1.0).imag) < 1e-15

    def test_digamma_recurrence_shift(self):
        # psi(2) = psi(1) + 1
        assert polygamma(0, 2.0).real == pytest.approx(
            -euler_gamma_oracle() + 1.0, abs=1e-13
        )

    def test_trigamma_at_one(self):
        assert polygamma(1, 1.0).real == pytest.approx(zeta2_oracle(), abs=1e-12)

    def test_conjugation_symmetry(self):
        z = 1.0 + 2.0j
        for order in (0, 1):
            left = polygamma(order, z.conjugate())
            right = polygamma(order, z).conjugate()
            assert abs(left - right) < 1e-14

    @pytest.mark.parametrize("order", [0, 1])
    def test_recurrence_random_complex(self, order):
        rng = np.random.default_rng(42)
        for _ in range(100):
            z = complex(rng.uniform(-30, 30), rng.uniform(-30, 30))
            if abs(z.imag) < 1e-3:
                z += 0.5j
            lhs = polygamma(order, z + 1) - polygamma(order, z)
            rhs = -1.0 / (z * z) if order == 1 else 1.0 / z
            assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs))

    def test_trigamma_is_digamma_derivative(self):
        rng = np.random.default_rng(3)
        h = 1e-4
        for _ in range(20):
            z = complex(rng.uniform(0.5, 20), rng.uniform(-10, 10))
            fd = (polygamma(0, z + h) - polygamma(0, z - h)) / (2 * h)
            assert abs(fd - polygamma(1, z)) < 1e-6

    def test_accuracy_against_reference(self):
        rng = np.random.default_rng(11)
        pts = [complex(rng.uniform(-50, 1e3), rng.uniform(-1e3, 1e3)) for _ in range(40)]
        pts += [1e6 + 0.0j, 0.1 + 1e5j, -5.5 - 7.05j]
        for z in pts:
            for order in (0, 1):
                ref = complex(
                    mpmath.digamma(mpmath.mpc(z)) if order == 0 else mpmath.polygamma(1, mpmath.mpc(z))
                )
                got = polygamma(order, z)
                assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref)), (order, z)

    @pytest.mark.parametrize("bad", [0.0, -1.0, -7.0])
    def test_pole_inputs_raise(self, bad):
        with pytest.raises(PoleError):
            polygamma(0, bad)

    def test_bad_order_raises(self):
        with pytest.raises(ValueError):
            polygamma(2, 1.0)


class TestBesselJ0:
    def test_value_at_zero(self):
        assert bessel_j0(0.0) == 1.0

    def test_first_zero_bisection_oracle(self):
        # bisect the power series itself on [2, 3]
        def series(x):
            q = 0.25 * x * x
            term, acc = 1.0, 1.0
            for k in range(1, 40):
                term = -term * q / (k * k)
                acc += term
            return acc

        lo, hi = 2.0, 3.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if series(lo) * series(mid) <= 0:
                hi = mid
            else:
                lo = mid
        root = 0.5 * (lo + hi)
        assert root == pytest.approx(2.404825557695773, abs=1e-12)
        assert abs(bessel_j0(root)) < 1e-9

    def test_at_ten_against_power_series_oracle(self):
        # 60-term power series in exact rational arithmetic
        from fractions import Fraction

        q = Fraction(10) ** 2 / 4
        term, acc = Fraction(1), Fraction(1)
        for k in range(1, 61):
            term = -term * q / (k * k)
            acc += term
        assert bessel_j0(10.0) == pytest.approx(float(acc), abs=1e-13)

    def test_crossover_continuity(self):
        for cut in (8.0, 15.0):
            below = bessel_j0(cut - 1e-9)
            above = bessel_j0(cut + 1e-9)
            assert abs(above - below) < 1e-8  # |J0'| <= 1, so ~2e-9 plus noise

    def test_accuracy_grid_against_reference(self):
        xs = np.concatenate(
            [
                np.linspace(0.01, 8.0, 60),
                np.linspace(8.01, 15.0, 40),
                np.linspace(15.01, 120.0, 60),
                np.array([300.0, 1000.0]),
            ]
        )
        got = bessel_j0(xs)
        ref = np.array([float(mpmath.besselj(0, mpmath.mpf(float(v)))) for v in xs])
        assert np.max(np.abs(got - ref)) < 1e-12

    def test_bessel_equation_residual(self):
        # x J0'' + J0' + x J0 = 0, five-point finite differences on a grid
        # (the three-point stencil bottoms out just above 1e-8 in float64)
        h = 5e-3
        for x in np.arange(0.1, 30.0, 0.17):
            f = [bessel_j0(x + i * h) for i in (-2, -1, 0, 1, 2)]
            d1 = (-f[4] + 8 * f[3] - 8 * f[1] + f[0]) / (12 * h)
            d2 = (-f[4] + 16 * f[3] - 30 * f[2] + 16 * f[1] - f[0]) / (12 * h * h)
            assert abs(x * d2 + d1 + x * f[2]) < 1e-8

    def test_zero_cache(self):
        z1, z2, z3 = (bessel_j0_zero(s) for s in (1, 2, 3))
        assert z1 == pytest.approx(2.404825557695773, abs=1e-12)
        assert z2 == pytest.approx(5.520078110286311, abs=1e-12)
        assert z3 == pytest.approx(8.653727912911013, abs=1e-12)


class TestGaussLegendre:
    def test_exactness_on_random_polynomials(self):
        rng = np.random.default_rng(5)
        for order in (4, 9, 16):
            rule = gauss_legendre(order, -1.0, 2.0)
            assert np.all(rule.weights > 0)
            for _ in range(20):
                deg = rng.integers(0, 2 * order)
                coeffs = rng.uniform(-1, 1, deg + 1)
                poly = np.polynomial.Polynomial(coeffs)
                exact = poly.integ()(2.0) - poly.integ()(-1.0)
                assert rule.integrate(poly) == pytest.approx(exact, rel=1e-13, abs=1e-13)

    def test_weight_total(self):
        rule = gauss_legendre(12, 0.0, 4.0 * math.pi)
        assert math.fsum(rule.weights) == pytest.approx(4.0 * math.pi, abs=1e-13)


class TestSemiInfinite:
    def test_algebraic_decay(self):
        value, err = integrate_semi_infinite(lambda t: 1.0 / (1.0 + t * t) ** 2, tol=1e-12)
        assert value == pytest.approx(math.pi / 4.0, abs=1e-13)
        assert err < 1e-10

    def test_exponential_sqrt_decay(self):
        value, _ = integrate_semi_infinite(lambda x: np.exp(-5.0 * np.sqrt(x)), tol=1e-12)
        assert value == pytest.approx(0.08, abs=1e-13)

    def test_radial_transform_at_zero_frequency(self):
        value, _ = integrate_semi_infinite(lambda r: r / (r**4 + 1.0) ** 2, tol=1e-12)
        assert value == pytest.approx(math.pi / 8.0, abs=1e-13)

    def test_oscillatory_matches_reference(self):
        xi = 3.0
        value, err = integrate_semi_infinite(
            lambda r: bessel_j0(xi * r) * r / (r**4 + 1.0) ** 2,
            strategy="bessel-oscillatory",
            tol=1e-11,
            frequency=xi,
        )
        ref = float(
            mpmath.quadosc(
                lambda r: mpmath.besselj(0, xi * r) * r / ((r**4 + 1) ** 2),
                [0, mpmath.inf],
                period=2 * mpmath.pi / xi,
            )
        )
        assert value == pytest.approx(ref, abs=5e-11)
        assert err < 1e-10

    def test_zero_frequency_rejected(self):
        with pytest.raises(ValueError):
            integrate_semi_infinite(
                lambda r: r, strategy="bessel-oscillatory", tol=1e-8, frequency=0.0
            )

    def test_unknown_strategy_rejected(self):
        with pytest.raises(ValueError):
            integrate_semi_infinite(lambda t: t, strategy="monte-carlo", tol=1e-8)

    def test_nonconvergence_raises(self):
        # a non-decaying integrand can never settle
        with pytest.raises(ConvergenceError):
            integrate_semi_infinite(lambda t: np.ones_like(t), tol=1e-12)
