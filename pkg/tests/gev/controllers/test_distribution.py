import unittest

import numpy as np
import scipy.stats

from gevtip.gev.controllers import distribution
from gevtip.gev.entities.gev import GevParams


class TestGevCdf(unittest.TestCase):
    def test_cdf_at_location_is_inverse_e(self):
        for shape in (-0.5, -1e-9, 0.0, 1e-9, 0.3):
            with self.subTest(shape=shape):
                params = GevParams(location=1.5, scale=2.0, shape=shape)
                self.assertAlmostEqual(
                    np.exp(-1), distribution.gev_cdf(1.5, params), places=12
                )

    def test_cdf_at_upper_endpoint_is_one(self):
        params = GevParams(location=0.0, scale=1.0, shape=-0.5)
        self.assertEqual(1.0, distribution.gev_cdf(2.0, params))
        self.assertEqual(1.0, distribution.gev_cdf(5.0, params))

    def test_cdf_left_of_support_is_zero(self):
        params = GevParams(location=0.0, scale=1.0, shape=0.5)
        self.assertEqual(0.0, distribution.gev_cdf(-3.0, params))

    def test_cdf_continuous_at_vanishing_shape(self):
        gumbel = distribution.gev_cdf(0.0, GevParams(shape=0.0))
        almost = distribution.gev_cdf(0.0, GevParams(shape=1e-9))
        self.assertLess(abs(gumbel - almost), 1e-6)

    def test_cdf_continuous_across_switch_tolerance(self):
        x = np.linspace(-3, 8, 101)
        gumbel = distribution.gev_cdf(x, GevParams(shape=0.0))
        for shape in (-1e-7, 1e-7, -2e-6, 2e-6):
            with self.subTest(shape=shape):
                cdf = distribution.gev_cdf(x, GevParams(shape=shape))
                self.assertLess(np.max(np.abs(cdf - gumbel)), 1e-5)

    def test_cdf_is_monotonic(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            params = GevParams(
                location=rng.normal(),
                scale=rng.uniform(0.1, 3),
                shape=rng.uniform(-1, 1),
            )
            x = np.sort(rng.normal(scale=5, size=200))
            with self.subTest(params=params):
                cdf = distribution.gev_cdf(x, params)
                self.assertTrue(np.all(np.diff(cdf) >= 0))
                self.assertTrue(np.all((cdf >= 0) & (cdf <= 1)))

    def test_cdf_agrees_with_scipy(self):
        x = np.linspace(-2, 4, 25)
        for shape in (-0.4, 0.0, 0.4):
            with self.subTest(shape=shape):
                params = GevParams(location=0.5, scale=1.5, shape=shape)
                reference = scipy.stats.genextreme.cdf(
                    x, -shape, loc=0.5, scale=1.5
                )
                np.testing.assert_allclose(
                    distribution.gev_cdf(x, params), reference, atol=1e-12
                )

    def test_cdf_returns_float_for_scalar(self):
        self.assertIsInstance(distribution.gev_cdf(0.0, GevParams()), float)

    def test_cdf_keeps_shape_of_array(self):
        x = np.zeros((2, 3))
        self.assertEqual((2, 3), distribution.gev_cdf(x, GevParams()).shape)


class TestGevPdf(unittest.TestCase):
    def test_pdf_agrees_with_scipy(self):
        x = np.linspace(-1, 3, 17)
        for shape in (-0.3, 0.0, 0.3):
            with self.subTest(shape=shape):
                params = GevParams(location=0.2, scale=0.8, shape=shape)
                reference = scipy.stats.genextreme.pdf(
                    x, -shape, loc=0.2, scale=0.8
                )
                np.testing.assert_allclose(
                    distribution.gev_pdf(x, params), reference, atol=1e-12
                )

    def test_pdf_outside_support_is_zero(self):
        params = GevParams(location=0.0, scale=1.0, shape=-0.5)
        self.assertEqual(0.0, distribution.gev_pdf(3.0, params))


class TestGevLogLikelihood(unittest.TestCase):
    def test_gumbel_log_density_at_mode(self):
        self.assertAlmostEqual(
            -1.0,
            distribution.gev_log_likelihood([0.5], GevParams(0.5, 1.0, 0.0)),
        )

    def test_support_violation_yields_minus_infinity(self):
        params = GevParams(location=0.0, scale=1.0, shape=-0.5)
        self.assertEqual(
            -np.inf, distribution.gev_log_likelihood([0.0, 2.5], params)
        )

    def test_nonpositive_scale_yields_minus_infinity(self):
        self.assertEqual(
            -np.inf,
            distribution.gev_log_likelihood([0.0], GevParams(scale=0.0)),
        )

    def test_truth_has_higher_likelihood(self):
        truth = GevParams(location=0.0, scale=1.0, shape=0.2)
        sample = distribution.gev_sample(truth, count=10000, seed=1)
        shifted = GevParams(location=0.5, scale=1.0, shape=0.2)
        self.assertGreater(
            distribution.gev_log_likelihood(sample, truth),
            distribution.gev_log_likelihood(sample, shifted),
        )

    def test_agrees_with_scipy(self):
        sample = np.linspace(-0.5, 2.5, 20)
        for shape in (-0.2, 5e-7, 0.0, 0.2):
            with self.subTest(shape=shape):
                params = GevParams(location=0.3, scale=1.2, shape=shape)
                reference = np.sum(
                    scipy.stats.genextreme.logpdf(
                        sample, -shape, loc=0.3, scale=1.2
                    )
                )
                self.assertAlmostEqual(
                    reference,
                    distribution.gev_log_likelihood(sample, params),
                    places=6,
                )


class TestGevQuantile(unittest.TestCase):
    def test_quantile_inverts_cdf(self):
        q = np.linspace(0.01, 0.99, 21)
        for shape in (-0.4, 0.0, 0.4):
            with self.subTest(shape=shape):
                params = GevParams(location=1.0, scale=2.0, shape=shape)
                x = distribution.gev_quantile(q, params)
                np.testing.assert_allclose(
                    distribution.gev_cdf(x, params), q, rtol=1e-10
                )

    def test_quantile_returns_float_for_scalar(self):
        self.assertIsInstance(
            distribution.gev_quantile(0.5, GevParams()), float
        )


class TestGevSample(unittest.TestCase):
    def test_zero_count_yields_empty_sample(self):
        sample = distribution.gev_sample(GevParams(), count=0)
        self.assertEqual(0, sample.size)

    def test_sample_is_deterministic_for_seed(self):
        params = GevParams(shape=0.1)
        np.testing.assert_array_equal(
            distribution.gev_sample(params, count=100, seed=5),
            distribution.gev_sample(params, count=100, seed=5),
        )

    def test_different_seeds_yield_different_samples(self):
        params = GevParams(shape=0.1)
        self.assertFalse(
            np.array_equal(
                distribution.gev_sample(params, count=100, seed=5),
                distribution.gev_sample(params, count=100, seed=6),
            )
        )

    def test_sample_does_not_exceed_upper_endpoint(self):
        params = GevParams(location=0.0, scale=1.0, shape=-0.5)
        sample = distribution.gev_sample(params, count=100000, seed=0)
        self.assertLessEqual(sample.max(), 2.0)
        self.assertLessEqual(sample.max(), params.upper_endpoint)

    def test_gumbel_sample_mean_is_euler_gamma(self):
        sample = distribution.gev_sample(GevParams(), count=100000, seed=2)
        self.assertLess(abs(sample.mean() - np.euler_gamma), 0.03)

    def test_sample_follows_distribution(self):
        count = 20000
        for shape in (-0.3, 0.0, 0.3):
            with self.subTest(shape=shape):
                params = GevParams(location=1.0, scale=0.5, shape=shape)
                sample = np.sort(
                    distribution.gev_sample(params, count=count, seed=7)
                )
                cdf = distribution.gev_cdf(sample, params)
                empirical_high = np.arange(1, count + 1) / count
                empirical_low = np.arange(count) / count
                distance = max(
                    np.max(empirical_high - cdf), np.max(cdf - empirical_low)
                )
                self.assertLess(distance, 2 / np.sqrt(count))
