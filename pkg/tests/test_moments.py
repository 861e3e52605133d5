import math

import pytest

from pballs.gamma_core import TruncationPolicy
from pballs.moments import (
    Route,
    Sign,
    bound_comparator,
    derivative_sign_series,
    f_endpoint,
    f_gamma,
    f_product,
    g_term,
    gk_ratio_product,
    kuperberg_bound,
    kuperberg_check,
    monotonicity_scan,
    per_term_minimum,
    per_term_positivity,
    remark_limit_check,
)
from pballs.pball import Exponent

FAST = TruncationPolicy(max_terms=50_000, rel_tol=1e-8)


class TestGTerm:
    @pytest.mark.parametrize(
        "k,m,t,expected",
        [(1, 0.0, 0.25, 1.0), (1, 2.0, 0.25, 4.0), (3, 5.0, 0.1, 26.5)],
    )
    def test_values(self, k, m, t, expected):
        assert g_term(k, m, t) == expected

    @pytest.mark.parametrize("k,m,t", [(0, 1.0, 0.1), (-1, 1.0, 0.1), (1.5, 1.0, 0.1), (1, -1.0, 0.1), (1, 1.0, -0.1)])
    def test_validation(self, k, m, t):
        with pytest.raises(ValueError):
            g_term(k, m, t)


class TestFEndpoint:
    def test_values(self):
        assert f_endpoint(1) == 1.0 / 9.0
        assert f_endpoint(2) == 1.0 / 9.0
        assert f_endpoint(3) == 0.1


class TestFGamma:
    def test_one_dimensional_is_constant(self):
        for p in (1.0, 1.5, 2.0, 3.0, 9.0, math.inf):
            assert f_gamma(1, p).value == pytest.approx(1.0 / 9.0, rel=1e-13)

    def test_self_dual_value(self):
        assert f_gamma(2, 2.0).value == pytest.approx(0.125, rel=1e-13)

    def test_endpoints_are_exact(self):
        for n in (1, 2, 3, 10, 100):
            assert f_gamma(n, 1.0).value == f_endpoint(n)
            assert f_gamma(n, math.inf).value == f_endpoint(n)

    def test_metadata(self):
        r = f_gamma(3, 1.5)
        assert r.route is Route.GAMMA_CLOSED_FORM
        assert r.error_estimate == 0.0
        assert r.n == 3
        assert r.exponent.p == 1.5
        assert r.converged

    def test_conjugate_symmetry(self):
        for n, p in [(2, 1.5), (5, 1.25), (17, 1.9)]:
            e = Exponent(p)
            assert f_gamma(n, e).value == pytest.approx(f_gamma(n, e.conjugate()).value, rel=1e-13)

    def test_bound_invariant(self):
        for n in (1, 2, 7, 40):
            for p in (1.0, 1.4, 2.0, 6.0, math.inf):
                for r in (f_gamma(n, p), f_product(n, p, FAST)):
                    assert 0.0 < r.value <= kuperberg_bound(n) + r.error_estimate + 1e-12


class TestFProduct:
    def test_telescoped_endpoint(self):
        r = f_product(4, 1.0)
        assert r.value == 4.0 / 45.0
        assert r.error_estimate == 0.0
        assert r.route is Route.INFINITE_PRODUCT

    def test_telescoped_self_dual(self):
        r = f_product(4, 2.0)
        assert r.value == 1.0 / 9.0
        assert r.error_estimate == 0.0

    def test_agrees_with_gamma_within_reported_error(self):
        for n, p in [(5, 1.25), (2, 1.5), (20, 1.1), (3, 1.9)]:
            fg = f_gamma(n, p).value
            fp = f_product(n, p, FAST)
            assert abs(fp.value - fg) <= fp.error_estimate + 1e-10 * fg

    def test_default_policy_reports_unmet_tolerance(self):
        r = f_product(5, 1.25)  # 1e-10 is out of reach for a 1e6-term budget
        assert not r.converged
        assert r.error_estimate > 0.0

    def test_loose_tolerance_converges(self):
        r = f_product(5, 1.25, TruncationPolicy(1_000_000, 1e-4))
        assert r.converged

    def test_stricter_policy_tightens_error(self):
        loose = f_product(7, 1.5, TruncationPolicy(20_000, 1e-8))
        tight = f_product(7, 1.5, TruncationPolicy(400_000, 1e-8))
        assert tight.error_estimate < loose.error_estimate
        fg = f_gamma(7, 1.5).value
        assert abs(tight.value - fg) < abs(loose.value - fg) + tight.error_estimate

    def test_factor_deviation_quadratic_decay(self):
        # fit C at k = 1e3, validate the k^-2 law at k = 1e4
        from pballs._kernels import moment_product_log

        for n in (2, 5, 20, 50):
            for t in (0.05, 0.25):
                log_f3, _ = moment_product_log(float(n), t, 1_000, 1_000)
                log_f4, _ = moment_product_log(float(n), t, 10_000, 10_000)
                c_fit = 1.1 * abs(log_f3) * 1_000.0**2
                assert abs(math.expm1(log_f4)) <= c_fit / 10_000.0**2


class TestGkRatioProduct:
    def test_exact_ends(self):
        for n in (2, 5, 20):
            assert gk_ratio_product(n, 0.0)[0] == 6.0 / ((n + 1) * (n + 2))
            assert gk_ratio_product(n, 0.25)[0] == 9.0 / ((n + 2) ** 2)

    def test_matches_f_product_scaling(self):
        value, bound, _, _ = gk_ratio_product(3, 0.2, FAST)
        r = f_product(3, 2.0 / (1.0 + math.sqrt(1.0 - 0.8)), FAST)
        assert (3.0 / 9.0) * value == pytest.approx(r.value, rel=1e-10)


class TestDerivativeSignSeries:
    def test_n1_series_is_identically_zero(self):
        report = derivative_sign_series(1, 0.2, FAST)
        assert report.series_value == 0.0
        assert report.sign is Sign.ZERO
        assert not report.all_terms_positive

    @pytest.mark.parametrize("n,t", [(2, 0.1), (2, 0.25), (5, 0.01), (10, 0.25), (20, 0.05)])
    def test_positive_for_higher_dimensions(self, n, t):
        report = derivative_sign_series(n, t, FAST)
        assert report.sign is Sign.POSITIVE

    def test_not_termwise_positive_near_self_dual(self):
        # the k=1 term is negative at (n=2, t=1/4) even though the sum is not
        report = derivative_sign_series(2, 0.25, FAST)
        assert report.sign is Sign.POSITIVE
        assert not report.all_terms_positive

    def test_sign_matches_finite_difference(self):
        h = 1e-5
        for n, t in [(2, 0.1), (10, 0.2)]:
            report = derivative_sign_series(n, t, FAST)
            p_lo = 2.0 / (1.0 + math.sqrt(1.0 - 4.0 * (t - h)))
            p_hi = 2.0 / (1.0 + math.sqrt(1.0 - 4.0 * (t + h)))
            fd = f_gamma(n, p_hi).value - f_gamma(n, p_lo).value
            assert (report.sign is Sign.POSITIVE) == (fd > 0.0)

    @pytest.mark.parametrize("t", [0.0, -0.1, 0.2500001, 1.0])
    def test_t_validation(self, t):
        with pytest.raises(ValueError):
            derivative_sign_series(2, t)


class TestPerTermPositivity:
    @pytest.mark.parametrize("k,n,t", [(1, 2, 0.25), (1, 2, 10.0), (100, 50, 0.01), (10_000, 50, 10.0)])
    def test_holds(self, k, n, t):
        assert per_term_positivity(k, n, t)

    @pytest.mark.parametrize("k,n,t", [(0, 2, 0.1), (1, 1, 0.1), (1, 2, 0.0), (1.5, 2, 0.1)])
    def test_validation(self, k, n, t):
        with pytest.raises(ValueError):
            per_term_positivity(k, n, t)

    def test_minimum_scan(self):
        mn, arg = per_term_minimum(2, 0.25, 10_000)
        assert mn > 0.0
        assert 1 <= arg <= 10_000


class TestMonotonicityScan:
    def test_constant_for_n1(self):
        scan = monotonicity_scan(1, [1.0, 1.5, 2.0])
        assert scan.nondecreasing
        assert not scan.strictly_increasing
        for _, value in scan.points:
            assert value == pytest.approx(1.0 / 9.0, rel=1e-13)

    def test_strict_increase_for_n2(self):
        scan = monotonicity_scan(2, [1.0, 2.0])
        assert scan.nondecreasing and scan.strictly_increasing
        assert scan.points[0][1] == pytest.approx(1.0 / 9.0, rel=1e-13)
        assert scan.points[1][1] == pytest.approx(0.125, rel=1e-13)

    def test_21_point_grid_ends_at_self_dual(self):
        grid = [1.0 + 0.05 * i for i in range(21)]
        scan = monotonicity_scan(3, grid)
        assert scan.strictly_increasing
        assert scan.first_violation is None
        assert scan.points[-1][1] == pytest.approx(3.0 / 25.0, rel=1e-12)

    def test_unordered_grid_rejected(self):
        with pytest.raises(ValueError):
            monotonicity_scan(2, [1.0, 1.6, 1.4])

    def test_out_of_range_grid_rejected(self):
        with pytest.raises(ValueError):
            monotonicity_scan(2, [1.0, 2.5])

    def test_short_grid_rejected(self):
        with pytest.raises(ValueError):
            monotonicity_scan(2, [1.5])


class TestKuperbergCheck:
    def test_equality_at_self_dual(self):
        ok, margin = kuperberg_check(2, 2.0)
        assert ok
        assert abs(margin) <= 1e-15

    def test_one_dimensional_equality(self):
        ok, margin = kuperberg_check(1, 7.0)
        assert ok
        assert abs(margin) <= 1e-15

    def test_strict_interior_margin(self):
        ok, margin = kuperberg_check(4, 1.3)
        assert ok
        assert margin > 1e-4


class TestBoundComparator:
    def test_forward_regime_telescoped_endpoints(self):
        res = bound_comparator(2, 1.0, 2.0, FAST)
        assert res.product_r == 0.5
        assert res.product_s == 9.0 / 16.0
        assert res.expected == "less"
        assert res.verdict

    def test_reversed_regime(self):
        res = bound_comparator(3, 2.0, math.inf, FAST)
        assert res.product_r == 9.0 / 25.0
        assert res.product_s == 6.0 / 20.0
        assert res.expected == "greater"
        assert res.verdict

    def test_interior_pair(self):
        res = bound_comparator(5, 1.2, 1.8, FAST)
        assert res.verdict
        assert res.product_r < res.product_s

    @pytest.mark.parametrize("r,s", [(1.5, 3.0), (1.0, 2.5), (2.0, 2.0), (3.0, 2.5), (0.5, 1.5)])
    def test_bad_pairs_rejected(self, r, s):
        with pytest.raises(ValueError):
            bound_comparator(4, r, s, FAST)

    def test_n1_rejected(self):
        with pytest.raises(ValueError):
            bound_comparator(1, 1.0, 2.0, FAST)


class TestRemarkLimit:
    def test_exact_at_n1(self):
        assert remark_limit_check(1, 1e6) == 1.0

    def test_examples(self):
        assert abs(remark_limit_check(4, 1e6) - 2.0) < 1e-4
        assert abs(remark_limit_check(10, 1e3) - 4.0) < 1e-2

    def test_q_validation(self):
        with pytest.raises(ValueError):
            remark_limit_check(3, 100.0)
