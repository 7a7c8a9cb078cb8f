import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rsext import core
from rsext.core import (
    TWO_PI,
    StripPoint,
    err_series_im,
    err_series_re,
    grid_quantities,
    log_scale_factor_F,
    log_scale_factor_f,
    scale_factor_F,
    scale_factor_f,
    stirling_log_gamma,
    stirling_remainder_bound,
    theta,
    theta1,
    theta_correction,
)
from rsext.errors import AccuracyWarning, DomainError
from rsext.oracle import log_gamma_ref


def mp_log_F(t):
    with mpmath.workdps(40):
        t = mpmath.mpf(t)
        v = mpmath.log((mpmath.pi / 2) ** 0.25 * t**1.75) - mpmath.pi * t / 4
        return float(v)


class TestStripPoint:
    def test_s(self):
        assert StripPoint(100.0, 0.25).s == complex(0.75, 100.0)

    @pytest.mark.parametrize("t,e", [(0.0, 0.0), (-1.0, 0.0), (math.inf, 0.0), (10.0, 1.01), (10.0, math.nan)])
    def test_rejects(self, t, e):
        with pytest.raises(DomainError):
            StripPoint(t, e)

    def test_closed_epsilon_bound(self):
        assert StripPoint(50.0, -1.0).epsilon == -1.0


class TestGrid:
    def test_two_pi(self):
        g = grid_quantities(TWO_PI)
        assert (g.N, g.p, g.omega) == (1, 0.0, 1.0)

    @pytest.mark.parametrize("t,N", [(7000.0, 33), (250000.0, 199)])
    def test_table_points(self, t, N):
        g = grid_quantities(t)
        ref = float(mpmath.sqrt(mpmath.mpf(t) / (2 * mpmath.pi)))
        assert g.N == N
        assert g.p == pytest.approx(ref - N, abs=1e-12)

    def test_table_p_values(self):
        assert grid_quantities(7000.0).p == pytest.approx(0.3779, abs=1e-4)
        assert grid_quantities(250000.0).p == pytest.approx(0.4711, abs=1e-4)

    @pytest.mark.parametrize("k", [1, 2, 3, 17, 33, 199, 1000])
    def test_floor_at_lattice_boundaries(self, k):
        t0 = TWO_PI * k * k
        for t in (math.nextafter(t0, 0), t0, math.nextafter(t0, math.inf)):
            exact = Fraction(t) / Fraction(TWO_PI)
            N = grid_quantities(t).N
            assert N * N <= exact < (N + 1) ** 2

    @settings(max_examples=200, deadline=None)
    @given(st.floats(min_value=1.0, max_value=1e12))
    def test_sum_and_omega(self, t):
        g = grid_quantities(t)
        a = math.sqrt(t / TWO_PI)
        assert 0.0 <= g.p < 1.0
        assert abs(g.N + g.p - a) <= 2 * math.ulp(a)
        assert g.omega**2 * t == pytest.approx(TWO_PI, rel=4e-16)
        assert g.a_mod == pytest.approx(math.sqrt(TWO_PI * t), rel=1e-15)

    @pytest.mark.parametrize("t", [0.0, -3.0, math.nan, math.inf])
    def test_domain(self, t):
        with pytest.raises(DomainError):
            grid_quantities(t)


class TestTheta:
    def test_special_points(self):
        assert theta1(TWO_PI * math.e) == pytest.approx(-math.pi / 8, abs=1e-12)
        assert theta1(TWO_PI) == pytest.approx(-math.pi - math.pi / 8, abs=1e-14)

    def test_7000_against_mpmath(self):
        with mpmath.workdps(30):
            t = mpmath.mpf(7000)
            ref = t / 2 * mpmath.log(t / (2 * mpmath.pi * mpmath.e)) - mpmath.pi / 8
        assert theta1(7000.0) == pytest.approx(float(ref), rel=1e-15)
        assert theta1(7000.0) == pytest.approx(21054.8666, abs=1e-4)

    def test_correction(self):
        assert theta(1000.0) - theta1(1000.0) == pytest.approx(1 / 48000 + 7 / 5.76e12, rel=1e-9)
        assert theta(7000.0) - theta1(7000.0) == pytest.approx(2.976e-6, rel=1e-3)
        assert theta_correction(7000.0) == 1 / (48 * 7000.0) + 7 / (5760 * 7000.0**3)

    def test_ratio_tends_to_one(self):
        assert abs(theta(1e12) / theta1(1e12) - 1) < 1e-20 + 1e-15

    @pytest.mark.parametrize("t", [20.0, 100.0, 7000.0, 1e5, 1e6])
    def test_derivative(self, t):
        h = 1e-4 * max(1.0, math.sqrt(t))
        d = (theta1(t + h) - theta1(t - h)) / (2 * h)
        assert d == pytest.approx(0.5 * math.log(t / TWO_PI), rel=1e-8)

    def test_domain(self):
        with pytest.raises(DomainError):
            theta1(0.0)
        with pytest.raises(DomainError):
            theta(-1.0)


class TestScaleFactors:
    def test_F_at_one(self):
        # (pi/2)^(1/4) = 1.1195..., so F(1) = 0.51043
        assert scale_factor_F(1.0) == pytest.approx(0.510430, abs=1e-6)
        assert scale_factor_F(1.0) == pytest.approx(math.exp(mp_log_F(1.0)), rel=1e-14)

    def test_log_F_two_pi(self):
        ln = math.log
        expect = 0.75 * ln(math.pi) + ln(TWO_PI) / 2 - ln(math.pi) / 4 - math.pi**2 / 2 + ln(TWO_PI)
        assert log_scale_factor_F(TWO_PI) == pytest.approx(expect, rel=1e-14)

    @pytest.mark.parametrize("t,frozen", [(100.0, -70.37), (7000.0, -5482.18)])
    def test_log_F_values(self, t, frozen):
        # frozen values come from the closed form evaluated at 40 digits
        assert log_scale_factor_F(t) == pytest.approx(mp_log_F(t), abs=1e-9)
        assert log_scale_factor_F(t) == pytest.approx(frozen, abs=5e-3)

    @pytest.mark.parametrize("t", np.linspace(0.5, 900.0, 37))
    def test_log_linear_consistency(self, t):
        assert math.exp(log_scale_factor_F(t)) == pytest.approx(scale_factor_F(t), rel=1e-13)

    def test_F_underflows_but_log_does_not(self):
        assert scale_factor_F(2000.0) == 0.0
        assert math.isfinite(log_scale_factor_F(2000.0))

    def test_log_F_decreasing(self):
        ts = np.linspace(3.0, 1e4, 2000)
        vals = [log_scale_factor_F(t) for t in ts]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_F_vs_f(self):
        assert abs(math.exp(log_scale_factor_F(100.0) - log_scale_factor_f(100.0)) - 1) <= 1e-3
        assert abs(math.exp(log_scale_factor_F(1000.0) - log_scale_factor_f(1000.0)) - 1) <= 1e-5
        devs = [abs(math.exp(log_scale_factor_F(t) - log_scale_factor_f(t)) - 1) for t in (50, 100, 500, 1000, 5000)]
        assert all(b < a for a, b in zip(devs, devs[1:]))
        for t, d in zip((50, 100, 500, 1000, 5000), devs):
            assert d <= 1.0 / t

    def test_f_direct_vs_mpmath(self):
        with mpmath.workdps(30):
            t = mpmath.mpf(40)
            ref = 0.5 * mpmath.pi**-0.25 * (t * t + 0.25) * abs(mpmath.gamma(mpmath.mpc(0.25, t / 2)))
        assert scale_factor_f(40.0) == pytest.approx(float(ref), rel=1e-12)


class TestStirling:
    def test_gamma_two(self):
        assert abs(stirling_log_gamma(1.0, 3)) <= stirling_remainder_bound(1.0, 3)

    def test_large_imaginary(self):
        z = 0.5 * complex(-0.5, 7000.0)
        ref = log_gamma_ref(z + 1)
        err = abs(stirling_log_gamma(z, 3) - ref)
        # the series bound (~1e-20) sits far below double rounding of |ln Gamma| ~ 3e4
        assert err <= stirling_remainder_bound(z, 3) + 8 * math.ulp(abs(ref))
        assert stirling_remainder_bound(z, 3) <= 1 / (4.9 * 7000.0**5)

    def test_imaginary_part_growth(self):
        # Im ln Gamma(1/4 + i t/2) = theta(t) + (t/2) ln pi; compare at t = 7000
        t = 7000.0
        z = complex(-0.75, t / 2)
        im = stirling_log_gamma(z, 3).imag
        assert im == pytest.approx(theta(t) + 0.5 * t * math.log(math.pi), abs=1e-9)

    def test_real_axis_bound(self):
        z, K = 7.5, 3
        expect = abs(float(core.BERNOULLI_EVEN[6])) / (6 * 5 * z**5)
        assert stirling_remainder_bound(z, K) == pytest.approx(expect, rel=1e-15)

    def test_bound_decreasing_on_ray(self):
        ray = cmath.exp(0.7j)
        vals = [stirling_remainder_bound(r * ray, 4) for r in np.linspace(2, 200, 50)]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_against_oracle_random(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            r = rng.uniform(5.0, 500.0)
            a = rng.uniform(-0.9 * math.pi, 0.9 * math.pi)
            K = int(rng.integers(1, 7))
            z = r * cmath.exp(1j * a)
            err = abs(stirling_log_gamma(z, K) - log_gamma_ref(z + 1))
            assert err <= stirling_remainder_bound(z, K) + 1e-12 * abs(log_gamma_ref(z + 1))

    @pytest.mark.parametrize("z", [-2.0, 0.0, complex(-1.0, 0.0)])
    def test_negative_axis(self, z):
        with pytest.raises(DomainError):
            stirling_log_gamma(z)
        with pytest.raises(DomainError):
            stirling_remainder_bound(z)

    @pytest.mark.parametrize("K", [0, 7])
    def test_K_range(self, K):
        with pytest.raises(DomainError):
            stirling_log_gamma(3.0, K)


class TestErrorSeries:
    def test_eps_zero(self):
        assert err_series_im(10.0, 0.0, 1) == 1 / 480
        assert err_series_im(10.0, 0.0, -1) == -1 / 480
        assert err_series_re(10.0, 0.0, 1) == err_series_re(10.0, 0.0, -1) == 27 / 9600

    def test_values(self):
        assert err_series_im(7000.0, 0.3, -1) == pytest.approx(-9.62e-5, rel=1e-3)
        assert err_series_re(100.0, 0.0, 1) == pytest.approx(2.8125e-5, rel=1e-15)

    @pytest.mark.parametrize("sign", [1, -1])
    def test_limit(self, sign):
        assert err_series_im(50.0, 1e-12, sign) == pytest.approx(sign / 2400.0, rel=1e-9)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(1.0, 1e6), st.floats(-1.0, 1.0), st.sampled_from([1, -1]))
    def test_scaling(self, t, e, sign):
        assert err_series_im(2 * t, e, sign) == pytest.approx(err_series_im(t, e, sign) / 2, rel=1e-15, abs=1e-300)
        assert err_series_re(2 * t, e, sign) == pytest.approx(err_series_re(t, e, sign) / 4, rel=1e-15, abs=1e-300)

    def test_bad_sign(self):
        with pytest.raises(DomainError):
            err_series_im(10.0, 0.1, 0)


def test_low_t_warning():
    with pytest.warns(AccuracyWarning):
        core.warn_low_t(15.0)
