"""Tests for the sphere series evaluators and their certification."""

import math

import numpy as np
import pytest

from ltcert.sphere_series import (
    PROFILE_G_COEFFS,
    REMAINDER_LIMIT,
    AsymptoticCoefficients,
    certify_below_one_sphere,
    chi_series_equals_h,
    h_s2_closed_form,
    h_s2_closed_form_residual,
    h_s2_direct,
    h_s2_grid,
    remainder_curve,
    spectral_expansion,
)

# frozen direct-sum oracle values (tol 1e-14)
H_AT_1 = 0.157960271407339
H_AT_20 = 0.95755048598134
SMALL_A_LIMIT = 0.24417206752  # lim H/a^3, from the a = 1e-3 evaluation


class TestDirectSum:
    def test_value_at_one(self):
        ev = h_s2_direct(1.0, tol=1e-13)
        assert ev.value == pytest.approx(H_AT_1, abs=1e-12)
        assert ev.method == "direct"
        assert ev.tail_bound <= 1e-13

    def test_large_a_matches_expansion(self):
        ev = h_s2_direct(20.0, tol=1e-13)
        assert ev.value == pytest.approx(H_AT_20, abs=1e-12)
        expansion = 1.0 - 8.0 / (3.0 * math.pi * 20.0) - 64.0 / (315.0 * math.pi * 20.0**3)
        assert ev.value == pytest.approx(expansion, abs=2e-7)  # O(a^-4) remainder

    def test_small_a_cubic_limit(self):
        a = 1e-3
        ev = h_s2_direct(a, tol=1e-20)
        assert ev.value / a**3 == pytest.approx(SMALL_A_LIMIT, abs=1e-6)

    def test_tail_bound_is_honest(self):
        loose = h_s2_direct(5.0, tol=1e-6)
        tight = h_s2_direct(5.0, tol=1e-14)
        assert abs(loose.value - tight.value) <= loose.tail_bound

    def test_grid_matches_scalar_eval(self):
        grid = np.array([0.5, 2.0, 7.0])
        values, tails = h_s2_grid(grid, tol=1e-12)
        for a, v in zip(grid, values):
            assert v == pytest.approx(h_s2_direct(float(a), tol=1e-12).value, abs=1e-12)
        assert np.all(tails <= 1e-12)

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            h_s2_direct(0.0)
        with pytest.raises(ValueError):
            h_s2_direct(1.0, tol=0.0)


class TestClosedForm:
    @pytest.mark.parametrize("a", [0.5, 5.0])
    def test_agrees_with_direct(self, a):
        assert h_s2_closed_form(a).value == pytest.approx(
            h_s2_direct(a, tol=1e-13).value, abs=1e-10
        )

    def test_method_agreement_log_grid(self):
        for a in np.geomspace(0.1, 100.0, 20):
            dev = abs(h_s2_closed_form(float(a)).value - h_s2_direct(float(a), tol=1e-12).value)
            assert dev <= 1e-10, a

    def test_imaginary_residue(self):
        assert h_s2_closed_form_residual(7.3) <= 1e-12


class TestSpectralExpansion:
    def test_profile_coefficients(self):
        c = PROFILE_G_COEFFS
        assert (c.g0, c.g1, c.g2) == (1.0, 0.0, -4.0)
        assert c.integral == pytest.approx(math.pi / 4.0)

    def test_profile_expansion_form(self):
        a = 7.0
        got = spectral_expansion(PROFILE_G_COEFFS, 1.0 / a)
        expected = a * math.pi / 4.0 - 2.0 / 3.0 - 16.0 / 315.0 / a**2
        assert got == pytest.approx(expected, abs=1e-14)

    def test_zero_function(self):
        zero = AsymptoticCoefficients(0.0, 0.0, 0.0, 0.0)
        assert spectral_expansion(zero, 0.3) == 0.0

    def test_displayed_term_arithmetic(self):
        c = AsymptoticCoefficients(g0=1.0, g1=0.0, g2=0.0, integral=1.0)
        assert spectral_expansion(c, 1.0) == pytest.approx(1.0 / 3.0, abs=1e-15)

    def test_third_order_accuracy(self):
        # |direct Sigma - expansion| <= C a^-3 with fitted C < 1 on [10, 100]
        worst = 0.0
        for a in np.geomspace(10.0, 100.0, 15):
            h = h_s2_direct(float(a), tol=1e-14).value
            direct_sigma = math.pi * a / 4.0 * h
            expansion = spectral_expansion(PROFILE_G_COEFFS, 1.0 / float(a))
            worst = max(worst, abs(direct_sigma - expansion) * float(a) ** 3)
        assert worst < 1.0


class TestRemainderCurve:
    def test_at_100(self):
        value = float(remainder_curve([100.0])[0, 1])
        assert value == pytest.approx(REMAINDER_LIMIT, abs=5e-3)

    def test_at_10(self):
        value = float(remainder_curve([10.0])[0, 1])
        assert value == pytest.approx(REMAINDER_LIMIT, abs=0.05)

    def test_limit_constant(self):
        assert REMAINDER_LIMIT == pytest.approx(-64.0 / (315.0 * math.pi), abs=1e-16)

    def test_sign_convention_documented(self):
        assert "plus sign" in remainder_curve.__doc__

    def test_grid_precondition(self):
        with pytest.raises(ValueError):
            remainder_curve([0.5])


class TestCertification:
    def test_default_certificate(self):
        rec = certify_below_one_sphere(40.0, 0.01, tol=1e-9)
        assert rec.passed
        assert rec.computed < 1.0
        # min margin sits at the right edge, ~ 8/(3 pi a_max)
        assert rec.margin >= 8.0 / (3.0 * math.pi * 40.0) - 1e-3
        assert "asymptotic certificate" in rec.notes

    def test_monotone_positive_below_one(self):
        grid = np.arange(0.05, 40.0, 0.05)
        values, _ = h_s2_grid(grid, tol=1e-10)
        assert np.all(values > 0.0)
        assert np.all(values < 1.0)

    def test_small_a_margin_approaches_one(self):
        assert 1.0 - h_s2_direct(1e-4, tol=1e-18).value == pytest.approx(1.0, abs=1e-11)

    def test_preconditions(self):
        with pytest.raises(ValueError):
            certify_below_one_sphere(10.0, 0.01)
        with pytest.raises(ValueError):
            certify_below_one_sphere(40.0, 0.1)


class TestChiLink:
    def test_scaled_series_matches(self):
        # (a/16) H_S2(a) is the budget series at E = 4a/pi
        a = math.pi / 4.0 * 10.0
        series = chi_series_equals_h(a)
        assert series == pytest.approx(0.4377, abs=2e-4)
        assert series < math.pi / 64.0 * 10.0
