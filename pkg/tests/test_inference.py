import math

import numpy as np
import pytest
from scipy.special import ndtri

import qexpfit as qf
from conftest import loglik_longdouble


class TestFisherInformation:
    def test_unit_pair_entries(self):
        info = qf.fisher_information(qf.ThetaSigma(1.0, 1.0))
        want = np.array([[1.0, -0.5], [-0.5, 1.0 / 3.0]])
        assert np.allclose(info.entries, want, rtol=1e-14)

    def test_figure_truth_entries(self, truth):
        info = qf.fisher_information(truth)
        want = np.array([[1.0 / 9.0, -0.00125], [-0.00125, 1.5e-5]])
        assert np.allclose(info.entries, want, rtol=1e-12)

    def test_positive_definite(self):
        g = np.random.default_rng(2)
        for _ in range(50):
            p = qf.ThetaSigma(float(g.uniform(0.1, 10)), float(g.uniform(0.01, 1e4)))
            m = qf.fisher_information(p).entries
            assert np.linalg.det(m) > 0 and np.trace(m) > 0

    def test_matches_score_covariance(self, truth):
        # information equals the covariance of the per-observation score at truth
        s = qf.sample(truth, 100000, qf.RngStream(201))
        x = s.values
        u_theta = 1.0 / truth.theta - np.log1p(x / truth.sigma)
        u_sigma = -1.0 / truth.sigma + (truth.theta + 1.0) * x / (truth.sigma * (truth.sigma + x))
        emp = np.cov(np.vstack([u_theta, u_sigma]))
        want = qf.fisher_information(truth).entries
        assert np.allclose(emp, want, rtol=0.02)

    def test_inverse_times_information_is_identity(self, truth):
        info = qf.fisher_information(truth).entries
        prod = np.linalg.inv(info) @ info
        assert np.allclose(prod, np.eye(2), atol=1e-10)


class TestCensoredFisherInformation:
    def test_shifted_scale_entries(self):
        info = qf.fisher_information_censored(qf.ThetaSigma(1.0, 1.0), 1.0)
        want = np.array([[1.0, -0.25], [-0.25, 1.0 / 12.0]])
        assert np.allclose(info.entries, want, rtol=1e-14)

    def test_zero_threshold_reduction(self, truth):
        a = qf.fisher_information_censored(truth, 0.0).entries
        b = qf.fisher_information(truth).entries
        assert np.array_equal(a, b)

    def test_matches_observed_information_on_tail_data(self, truth):
        x0 = 50.0
        s = qf.sample_tail(truth, x0, 100000, qf.RngStream(203))
        expected = qf.fisher_information_censored(truth, x0).entries
        observed = qf.observed_information(s, truth).entries
        assert np.allclose(observed, expected, rtol=0.03)


class TestObservedInformation:
    def test_shape_entry_exact(self, truth):
        s = qf.sample(truth, 37, qf.RngStream(204))
        j = qf.observed_information(s, qf.ThetaSigma(2.5, 90.0)).entries
        assert j[0, 0] == pytest.approx(1.0 / 2.5**2, rel=1e-14)

    def test_matches_finite_differences(self):
        root = qf.RngStream(205)
        for trial in range(20):
            gen = root.child(trial).generator()
            theta = float(gen.uniform(0.6, 4.0))
            sigma = float(gen.uniform(0.3, 150.0))
            x0 = 0.0 if trial % 2 == 0 else float(gen.uniform(0.05, 0.5)) * sigma
            s = qf.sample_tail(qf.ThetaSigma(theta, sigma), x0, 300, root.child(trial).child(9))
            pe = qf.ThetaSigma(theta * 1.07, sigma * 0.93)
            j = qf.observed_information(s, pe).entries
            j_fd = -_fd_hessian(s, pe.theta, pe.sigma) / s.n
            assert np.allclose(j, j_fd, rtol=1e-5)

    def test_information_identity_at_mle(self, truth):
        s = qf.sample(truth, 100000, qf.RngStream(206))
        fit = qf.mle_joint(s)
        j = qf.observed_information(s, fit.params).entries
        i = qf.fisher_information(fit.params).entries
        assert np.allclose(j, i, rtol=0.03)


class TestCovarianceReport:
    def _fit(self, truth, n=1000):
        s = qf.sample(truth, n, qf.RngStream(207))
        return s, qf.mle_joint(s)

    def test_expected_covariance_closed_form(self, truth):
        s, fit = self._fit(truth)
        rep = qf.covariance_report(s, fit)
        t, g = fit.params.theta, fit.params.sigma
        n = s.n
        assert rep.cov_theta_sigma[0, 0] == pytest.approx(t**2 * (t + 1) ** 2 / n, rel=1e-10)
        assert rep.cov_theta_sigma[0, 1] == pytest.approx(t * g * (t + 1) * (t + 2) / n, rel=1e-10)
        assert rep.cov_theta_sigma[1, 1] == pytest.approx(g**2 * (t + 2) * (t + 1) ** 2 / t / n, rel=1e-10)

    def test_q_variance_delta_method(self, truth):
        s, fit = self._fit(truth)
        rep = qf.covariance_report(s, fit)
        want = rep.cov_theta_sigma[0, 0] / fit.params.theta**4
        assert rep.cov_q_kappa[0, 0] == pytest.approx(want, rel=1e-12)
        assert rep.se_q == pytest.approx(math.sqrt(want), rel=1e-12)

    def test_wald_interval_width(self, truth):
        # 90% interval half-width at the truth is z * sqrt(144/n)
        s = qf.sample(truth, 1000, qf.RngStream(208))
        fit = qf.mle_joint(s)
        rep = qf.covariance_report(s, fit, level=0.90)
        lo, hi = rep.wald_cis["theta"]
        half = 0.5 * (hi - lo)
        assert half == pytest.approx(1.6448536269514722 * rep.se_theta, rel=1e-9)

    def test_delta_method_order_invariance(self, truth):
        # propagating the covariance equals inverting the reparameterized information
        s, fit = self._fit(truth)
        rep = qf.covariance_report(s, fit)
        g = qf.inference.qk_jacobian(fit.params)
        ginv = np.linalg.inv(g)
        info_qk = ginv.T @ np.linalg.inv(rep.cov_theta_sigma * s.n) @ ginv
        cov_qk = np.linalg.inv(info_qk) / s.n
        assert np.allclose(cov_qk, rep.cov_q_kappa, rtol=1e-10)

    def test_observed_kind(self, truth):
        s, fit = self._fit(truth)
        rep = qf.covariance_report(s, fit, kind="observed")
        assert rep.kind == "observed"
        assert rep.se_theta > 0

    def test_censored_sample_uses_shifted_information(self, truth):
        s = qf.sample_tail(truth, 50.0, 2000, qf.RngStream(209))
        fit = qf.mle_joint_censored(s)
        rep = qf.covariance_report(s, fit)
        info = qf.fisher_information_censored(fit.params, s.x0).entries
        assert np.allclose(rep.cov_theta_sigma, np.linalg.inv(info) / s.n, rtol=1e-12)

    def test_singular_information_raises(self):
        # far from the MLE the observed information need not be positive definite
        s = qf.Sample(np.full(50, 1e-3) + np.linspace(0, 1e-4, 50))
        p = qf.ThetaSigma(0.01, 100.0)
        fit = qf.FitResult(
            params=p, params_qk=qf.to_q_kappa(p), loglik=0.0,
            converged=True, iterations=1, residual=0.0,
        )
        with pytest.raises(qf.IllConditionedError):
            qf.covariance_report(s, fit, kind="observed")

    def test_unconverged_fit_rejected(self, truth):
        s = qf.sample(truth, 100, qf.RngStream(210))
        p = truth
        fit = qf.FitResult(
            params=p, params_qk=qf.to_q_kappa(p), loglik=0.0,
            converged=False, iterations=1, residual=1.0,
        )
        with pytest.raises(qf.ConvergenceError):
            qf.covariance_report(s, fit)


class TestInverseNormal:
    def test_against_scipy(self):
        ps = np.concatenate(
            [
                np.array([1e-12, 1e-9, 1e-6, 1e-3, 0.5, 1 - 1e-3, 1 - 1e-6, 1 - 1e-9]),
                np.linspace(0.01, 0.99, 197),
            ]
        )
        for p in ps:
            assert qf.inv_norm_cdf(float(p)) == pytest.approx(float(ndtri(p)), abs=1e-9)

    def test_symmetry(self):
        for p in (0.01, 0.2, 0.4):
            assert qf.inv_norm_cdf(p) == pytest.approx(-qf.inv_norm_cdf(1 - p), rel=1e-12)

    def test_domain(self):
        with pytest.raises(qf.DomainError):
            qf.inv_norm_cdf(0.0)
        with pytest.raises(qf.DomainError):
            qf.inv_norm_cdf(1.0)


def _fd_hessian(s, theta, sigma, h_rel=1e-5):
    f = lambda t, g: loglik_longdouble(s, t, g)
    ht = np.longdouble(h_rel * theta)
    hs = np.longdouble(h_rel * sigma)
    h_tt = (f(theta + ht, sigma) - 2 * f(theta, sigma) + f(theta - ht, sigma)) / ht**2
    h_ss = (f(theta, sigma + hs) - 2 * f(theta, sigma) + f(theta, sigma - hs)) / hs**2
    h_ts = (
        f(theta + ht, sigma + hs)
        - f(theta + ht, sigma - hs)
        - f(theta - ht, sigma + hs)
        + f(theta - ht, sigma - hs)
    ) / (4 * ht * hs)
    return np.array([[h_tt, h_ts], [h_ts, h_ss]], dtype=np.float64)
