import logging
import unittest

import numpy as np

from gevtip.ensemble.controllers import scanning
from gevtip.ensemble.entities.scan import (
    KramersResult,
    RealizationResult,
    RescaledCurve,
    ScanAnalysis,
    ScanPoint,
)
from gevtip.exceptions import ParameterError
from gevtip.gev.controllers.distribution import gev_sample
from gevtip.gev.entities.gev import GevFit, GevParams
from gevtip.models.entities.models import CoupledShearSpec, DoubleWellSpec
from gevtip.series.entities.series import BlockSpec, BulkStats, TimeSeries


def make_fit(shape=0.0, std_error=0.1, success=True):
    fit = GevFit()
    fit.params = GevParams(shape=shape)
    fit.set_errors((0.1, 0.1, std_error))
    fit.optimizer_success = success
    return fit


def make_result(realization_index=0, shape_max=-0.2, shape_min=0.1):
    result = RealizationResult(realization_index=realization_index)
    result.fit_max = None if shape_max is None else make_fit(shape_max)
    result.fit_min = None if shape_min is None else make_fit(shape_min)
    result.bulk = BulkStats()
    result.bulk.variance = 2.0
    result.bulk.skewness = -1.0
    result.n_transitions = 3
    result.n_bins = 100
    return result


def minima_series(shape=0.0, count=10000, seed=0, control_value=None):
    # Minima of -Z, Z ~ GEV, reversed in sign are maxima of Z
    values = -gev_sample(GevParams(shape=shape), count=count, seed=seed)
    return TimeSeries(values=values, control_value=control_value)


class TestRealizationSteps(unittest.TestCase):
    def test_number_of_steps(self):
        block = BlockSpec(bin_length=100, burn_in_fraction=0.1)
        self.assertEqual(1112, scanning.realization_steps(block, n_bins=10))

    def test_yields_requested_number_of_bins(self):
        for burn_in_fraction in (0.0, 0.1, 0.25, 0.33):
            block = BlockSpec(
                bin_length=37, burn_in_fraction=burn_in_fraction
            )
            n_steps = scanning.realization_steps(block, n_bins=53)
            with self.subTest(burn_in_fraction=burn_in_fraction):
                self.assertGreaterEqual(block.n_bins(n_steps), 53)


class TestAnalyseSeries(unittest.TestCase):
    def setUp(self):
        self.block = BlockSpec(bin_length=20, burn_in_fraction=0.0)
        logging.disable(logging.WARNING)

    def tearDown(self):
        logging.disable(logging.NOTSET)

    def test_fits_both_tails(self):
        series = minima_series(shape=-0.2, count=4000, control_value=1.0)
        result = scanning.analyse_series(series, self.block)
        self.assertEqual(200, result.maxima.size)
        self.assertEqual(200, result.minima.size)
        self.assertIsNotNone(result.fit_max)
        self.assertIsNotNone(result.fit_min)
        self.assertEqual(1.0, result.control_value)
        self.assertEqual(200, result.n_bins)

    def test_pooled_selects_without_fitting(self):
        series = minima_series(count=4000)
        result = scanning.analyse_series(series, self.block, pooled=True)
        self.assertEqual(200, result.minima.size)
        self.assertIsNone(result.fit_min)

    def test_records_failures_instead_of_raising(self):
        series = TimeSeries(values=np.ones(4000))
        result = scanning.analyse_series(series, self.block)
        self.assertIsNone(result.fit_max)
        self.assertIn("maxima", result.errors)
        self.assertIn("minima", result.errors)

    def test_too_short_series_yields_no_extremes(self):
        series = TimeSeries(values=np.arange(10.0))
        result = scanning.analyse_series(series, self.block)
        self.assertEqual(0, result.minima.size)
        self.assertEqual(0, result.n_bins)
        self.assertIsNotNone(result.bulk)


class TestAggregateRealizations(unittest.TestCase):
    def setUp(self):
        logging.disable(logging.WARNING)

    def tearDown(self):
        logging.disable(logging.NOTSET)

    def test_averages_shape_parameters(self):
        results = [
            make_result(0, shape_min=0.1),
            make_result(1, shape_min=0.3),
        ]
        point = scanning.aggregate_realizations(1.0, results)
        self.assertAlmostEqual(0.2, point.kappa_min_mean)
        self.assertAlmostEqual(
            np.std([0.1, 0.3], ddof=1), point.kappa_min_std
        )
        self.assertAlmostEqual(-0.2, point.kappa_max_mean)
        self.assertAlmostEqual(0.0, point.kappa_max_std)
        self.assertEqual([0.1, 0.3], point.kappa_min_values)

    def test_sums_transitions_and_averages_bulk_statistics(self):
        results = [make_result(index) for index in range(3)]
        point = scanning.aggregate_realizations(1.0, results)
        self.assertEqual(9, point.n_transitions_total)
        self.assertAlmostEqual(2.0, point.variance_mean)
        self.assertAlmostEqual(-1.0, point.skewness_mean)
        self.assertEqual(3, point.n_realizations)
        self.assertEqual(100, point.n_bins)

    def test_excludes_and_counts_failed_fits(self):
        results = [
            make_result(0, shape_min=0.1),
            make_result(1, shape_min=None),
            make_result(2, shape_max=None, shape_min=None),
        ]
        results[0].fit_max.optimizer_success = False
        point = scanning.aggregate_realizations(1.0, results)
        self.assertAlmostEqual(0.1, point.kappa_min_mean)
        self.assertEqual(2, point.fits_failed_min)
        self.assertEqual(2, point.fits_failed_max)
        self.assertEqual(3, point.fits_failed)
        self.assertGreaterEqual(point.n_realizations, point.fits_failed)

    def test_singular_information_fit_contributes(self):
        result = make_result(0, shape_min=0.4)
        result.fit_min.set_errors((np.inf, np.inf, np.inf))
        result.fit_min.converged = False
        point = scanning.aggregate_realizations(1.0, [result, make_result(1)])
        self.assertEqual(2, len(point.kappa_min_values))

    def test_fit_at_shape_bound_is_excluded_and_counted(self):
        result = make_result(0, shape_min=-1.0)
        result.fit_min.set_errors((np.inf, np.inf, np.inf))
        result.fit_min.converged = False
        result.fit_min.shape_at_bound = True
        point = scanning.aggregate_realizations(
            1.0, [result, make_result(1, shape_min=0.2)]
        )
        self.assertEqual([0.2], point.kappa_min_values)
        self.assertAlmostEqual(0.2, point.kappa_min_mean)
        self.assertEqual(1, point.fits_failed_min)
        self.assertEqual(1, point.fits_failed)

    def test_all_fits_failed_is_flagged(self):
        results = [make_result(index, shape_min=None) for index in range(2)]
        point = scanning.aggregate_realizations(1.0, results)
        self.assertTrue(np.isnan(point.kappa_min_mean))
        self.assertIn("all-fits-failed-min", point.flags)
        self.assertFalse(point.has_minima_fits)

    def test_single_realization_has_zero_spread(self):
        point = scanning.aggregate_realizations(1.0, [make_result()])
        self.assertEqual(0.0, point.kappa_min_std)
        self.assertIn("single-realization", point.flags)

    def test_single_realization_spread_from_fit(self):
        point = scanning.aggregate_realizations(
            1.0, [make_result()], std_from_fit=True
        )
        self.assertAlmostEqual(0.1, point.kappa_min_std)

    def test_does_not_depend_on_order_of_results(self):
        results = [
            make_result(index, shape_min=0.1 * index) for index in range(4)
        ]
        first = scanning.aggregate_realizations(1.0, results)
        second = scanning.aggregate_realizations(1.0, results[::-1])
        np.testing.assert_equal(first.to_dict(), second.to_dict())
        self.assertEqual(first.kappa_min_values, second.kappa_min_values)

    def test_pooled_fits_all_extremes(self):
        sample = gev_sample(GevParams(shape=0.2), count=400, seed=3)
        results = []
        for index, extremes in enumerate(np.split(sample, 4)):
            result = make_result(index)
            result.maxima = extremes
            result.minima = extremes
            results.append(result)
        point = scanning.aggregate_realizations(1.0, results, pooled=True)
        self.assertIn("pooled", point.flags)
        self.assertEqual(1, len(point.kappa_min_values))
        self.assertGreater(point.kappa_min_std, 0)
        self.assertEqual(0, point.fits_failed)


class TestRunScan(unittest.TestCase):
    def setUp(self):
        self.model = CoupledShearSpec(nu=0.2475)
        self.block = BlockSpec(bin_length=100, burn_in_fraction=0.1)
        logging.disable(logging.WARNING)

    def tearDown(self):
        logging.disable(logging.NOTSET)

    def run_scan(self, **kwargs):
        arguments = {
            "model": self.model,
            "control_grid": [0.1, 0.3],
            "n_realizations": 2,
            "block": self.block,
            "n_bins": 40,
            "master_seed": 3,
        }
        arguments.update(kwargs)
        return scanning.run_scan(**arguments)

    def test_returns_point_per_control_value(self):
        points = self.run_scan()
        self.assertEqual(2, len(points))
        self.assertIsInstance(points[0], ScanPoint)
        self.assertEqual(
            [0.1, 0.3], [point.control_value for point in points]
        )

    def test_points_contain_ensemble_statistics(self):
        for point in self.run_scan():
            with self.subTest(control_value=point.control_value):
                self.assertEqual(2, point.n_realizations)
                self.assertGreaterEqual(point.n_bins, 40)
                self.assertGreaterEqual(
                    point.n_realizations, point.fits_failed
                )
                self.assertTrue(np.isfinite(point.variance_mean))

    def test_is_deterministic_for_master_seed(self):
        first = [point.to_dict() for point in self.run_scan()]
        second = [point.to_dict() for point in self.run_scan()]
        np.testing.assert_equal(first, second)

    def test_master_seed_changes_results(self):
        first = [point.variance_mean for point in self.run_scan()]
        points = self.run_scan(master_seed=4)
        second = [point.variance_mean for point in points]
        self.assertNotEqual(first, second)

    def test_workers_do_not_change_results(self):
        serial = [point.to_dict() for point in self.run_scan()]
        parallel = [point.to_dict() for point in self.run_scan(workers=2)]
        np.testing.assert_equal(serial, parallel)

    def test_single_realization_is_flagged(self):
        points = self.run_scan(n_realizations=1)
        for point in points:
            with self.subTest(control_value=point.control_value):
                self.assertIn("single-realization", point.flags)
                if point.has_minima_fits:
                    self.assertEqual(0.0, point.kappa_min_std)

    def test_pooled_scan_is_flagged(self):
        for point in self.run_scan(pooled=True):
            self.assertIn("pooled", point.flags)

    def test_double_well_scan(self):
        model = DoubleWellSpec(epsilon=0.3)
        points = self.run_scan(model=model, control_grid=[0.0, 0.1])
        self.assertEqual(2, len(points))

    def test_invalid_grids_raise(self):
        for grid in ([], [0.1, 0.1], [0.1, 0.3, 0.2]):
            with self.subTest(grid=grid):
                with self.assertRaises(ParameterError):
                    self.run_scan(control_grid=grid)

    def test_invalid_counts_raise(self):
        for change in ({"n_realizations": 0}, {"n_bins": 0}, {"workers": 0}):
            with self.subTest(change=change):
                with self.assertRaises(ParameterError):
                    self.run_scan(**change)

    def test_invalid_control_value_raises(self):
        with self.assertRaises(ParameterError):
            self.run_scan(control_grid=[0.1, -0.1])


class TestAnalyzeExternal(unittest.TestCase):
    def setUp(self):
        self.block = BlockSpec(bin_length=20, burn_in_fraction=0.1)
        logging.disable(logging.WARNING)

    def tearDown(self):
        logging.disable(logging.NOTSET)

    def test_bounded_and_heavy_tailed_minima(self):
        series_set = [
            minima_series(shape=-0.3, count=11200, seed=1, control_value=300),
            minima_series(shape=0.3, count=11200, seed=2, control_value=277),
        ]
        analysis = scanning.analyze_external(series_set, self.block)
        self.assertIsInstance(analysis, ScanAnalysis)
        heavy, bounded = analysis.points
        self.assertEqual(277, heavy.control_value)
        self.assertGreater(heavy.kappa_min_mean, 0)
        self.assertLess(bounded.kappa_min_mean, 0)
        self.assertIsNotNone(analysis.threshold)
        self.assertGreater(analysis.threshold.control_critical, 277)
        self.assertLess(analysis.threshold.control_critical, 300)

    def test_single_series_spread_is_standard_error(self):
        series = minima_series(count=11200, control_value=1.0)
        point = scanning.analyze_external([series], self.block).points[0]
        self.assertIn("single-realization", point.flags)
        self.assertGreater(point.kappa_min_std, 0)

    def test_single_series_declines_threshold(self):
        series = minima_series(count=11200, control_value=1.0)
        analysis = scanning.analyze_external([series], self.block)
        self.assertIsNone(analysis.threshold)
        self.assertIsNotNone(analysis.no_crossing)
        self.assertIsNone(analysis.threshold_dict()["crossing"])

    def test_series_with_same_control_value_are_realizations(self):
        series_set = [
            minima_series(count=11200, seed=seed, control_value=1.0)
            for seed in range(3)
        ]
        analysis = scanning.analyze_external(series_set, self.block)
        self.assertEqual(1, len(analysis.points))
        self.assertEqual(3, analysis.points[0].n_realizations)

    def test_pooled_analysis(self):
        series_set = [
            minima_series(count=11200, seed=seed, control_value=1.0)
            for seed in range(2)
        ]
        analysis = scanning.analyze_external(
            series_set, self.block, pooled=True
        )
        self.assertIn("pooled", analysis.points[0].flags)

    def test_series_without_control_value_raises(self):
        with self.assertRaises(ValueError):
            scanning.analyze_external([minima_series()], self.block)

    def test_without_series_raises(self):
        with self.assertRaises(ValueError):
            scanning.analyze_external([], self.block)


class TestRescaledScan(unittest.TestCase):
    def setUp(self):
        logging.disable(logging.WARNING)
        self.arguments = {
            "a": 1.0,
            "lambda_grid": [0.0, 0.2],
            "pairs": [(50, 0.3)],
            "n_realizations": 1,
            "n_bins": 40,
            "master_seed": 1,
        }

    def tearDown(self):
        logging.disable(logging.NOTSET)

    def test_returns_curve_per_pair(self):
        epsilon = 0.3 * np.sqrt(np.log(50) / np.log(100))
        self.arguments["pairs"] = [(50, 0.3), (100, epsilon)]
        curves = scanning.rescaled_scan(**self.arguments)
        self.assertEqual(2, len(curves))
        self.assertIsInstance(curves[0], RescaledCurve)
        self.assertAlmostEqual(
            curves[0].rescaling_constant, curves[1].rescaling_constant
        )
        self.assertEqual(2, len(curves[0].points))

    def test_pair_with_number_of_bins(self):
        self.arguments["pairs"] = [(50, 0.3, 35)]
        curve = scanning.rescaled_scan(**self.arguments)[0]
        self.assertEqual(35, curve.n_bins)
        self.assertGreaterEqual(curve.points[0].n_bins, 35)

    def test_failures_of_pairs_are_isolated(self):
        self.arguments["pairs"] = [(50, -0.3), (50, 0.3)]
        curves = scanning.rescaled_scan(**self.arguments)
        self.assertTrue(curves[0].error)
        self.assertFalse(curves[1].error)
        self.assertEqual(2, len(curves[1].points))

    def test_mismatched_rescaling_constants_log_warning(self):
        logging.disable(logging.NOTSET)
        self.arguments["pairs"] = [(50, 0.3), (50, 0.4)]
        self.arguments["lambda_grid"] = [0.0]
        with self.assertLogs(scanning.logger, level="WARNING") as context:
            scanning.rescaled_scan(**self.arguments)
        self.assertIn("Rescaling constants", "\n".join(context.output))

    def test_invalid_pair_raises(self):
        self.arguments["pairs"] = [(50,)]
        with self.assertRaises(ParameterError):
            scanning.rescaled_scan(**self.arguments)


class TestKramersScan(unittest.TestCase):
    def setUp(self):
        logging.disable(logging.WARNING)

    def tearDown(self):
        logging.disable(logging.NOTSET)

    def test_collects_escape_statistics(self):
        result = scanning.kramers_scan(
            a=1.0, lambda_=0.0, epsilons=[0.8, 1.0], n_escapes=5
        )
        self.assertIsInstance(result, KramersResult)
        self.assertEqual(2, len(result.points))
        for point in result.points:
            with self.subTest(epsilon=point.epsilon):
                self.assertEqual(5, point.n_escapes)
                self.assertAlmostEqual(1.0, point.barrier)
                self.assertGreater(point.mean_time, 0)
                self.assertGreater(point.kramers_time, 0)
        self.assertTrue(np.isfinite(result.slope))

    def test_is_deterministic_for_master_seed(self):
        first = scanning.kramers_scan(epsilons=[0.9], n_escapes=3)
        second = scanning.kramers_scan(epsilons=[0.9], n_escapes=3)
        self.assertEqual(
            first.points[0].mean_time, second.points[0].mean_time
        )

    def test_single_noise_level_has_no_slope(self):
        result = scanning.kramers_scan(epsilons=[0.9], n_escapes=3)
        self.assertTrue(np.isnan(result.slope))

    def test_non_positive_noise_raises(self):
        with self.assertRaises(ParameterError):
            scanning.kramers_scan(epsilons=[0.0], n_escapes=3)


class TestAnalyseScan(unittest.TestCase):
    def setUp(self):
        logging.disable(logging.WARNING)

    def tearDown(self):
        logging.disable(logging.NOTSET)

    def make_points(self, kappas):
        points = []
        for index, kappa in enumerate(kappas):
            point = ScanPoint(control_value=float(index))
            point.kappa_min_mean = kappa
            point.kappa_min_std = 0.0
            points.append(point)
        return points

    def test_with_crossing(self):
        analysis = scanning.analyse_scan(self.make_points([-0.1, 0.1]))
        self.assertIsInstance(analysis, ScanAnalysis)
        self.assertAlmostEqual(0.5, analysis.threshold.control_critical)
        self.assertIsNone(analysis.no_crossing)

    def test_without_crossing_keeps_reason(self):
        analysis = scanning.analyse_scan(self.make_points([-0.2, -0.1]))
        self.assertIsNone(analysis.threshold)
        self.assertEqual(
            [-0.2, -0.1], list(analysis.no_crossing.kappa_range)
        )


class TestIndicatorTrends(unittest.TestCase):
    def test_monotone_indicators(self):
        points = []
        for index in range(5):
            point = ScanPoint(control_value=float(index))
            point.variance_mean = float(index**2)
            point.skewness_mean = -float(index)
            points.append(point)
        trends = scanning.indicator_trends(points)
        self.assertEqual(5, trends["n_points"])
        self.assertAlmostEqual(1.0, trends["variance"]["rho"])
        self.assertAlmostEqual(1.0, trends["abs_skewness"]["rho"])

    def test_too_few_points_yield_nan(self):
        trends = scanning.indicator_trends([ScanPoint(), ScanPoint(1.0)])
        self.assertTrue(np.isnan(trends["variance"]["rho"]))
