r"""
*Parameter scans with ensembles of realizations.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

For each value of a control parameter, an ensemble of independent
realizations is simulated. Block maxima and minima are selected from the
series of each realization and fitted with a GEV distribution. The shape
parameters of the fits are averaged over the ensemble, transitions are
summed, and bulk statistics averaged, resulting in one :class:`ScanPoint
<gevtip.ensemble.entities.scan.ScanPoint>` per control value.

The same pipeline applies to externally produced series (from direct
numerical simulations or experiments) via :func:`analyze_external`, with
several series of the same control value regarded as realizations.


Work units
==========

Each realization is an independent work unit, identified by the index of
the control value and of the realization. Its seed is derived from the
master seed and these indices (see :func:`derive_seed
<gevtip.ensemble.controllers.seeding.derive_seed>`). Work units are run
either serially or in a :class:`multiprocessing.Pool`. Results are
aggregated by their indices, hence do not depend on the order of
completion. Identical master seeds and grids yield bitwise identical scan
points.

Each realization is simulated for :math:`\lceil mn/(1-b) \rceil` steps,
with :math:`m` the bin length, :math:`n` the number of bins, and :math:`b`
the burn-in fraction. Hence, at least :math:`n` complete bins remain after
burn-in removal.


Pooled fits
===========

Instead of averaging the shape parameters of per-realization fits, the
extremes of all realizations at one control value can be pooled and fitted
at once. In this case, the standard errors of the pooled fit serve as
spread, and the point is flagged as ``pooled``. This is mainly useful for
external data with a single realization per control value.


Rescaling and escape times
==========================

For the double-well model, the zero crossing depends on bin length
:math:`m` and noise amplitude :math:`\epsilon`. Curves with equal
rescaling constant :math:`\epsilon^2 \log m` share the crossing, which is
checked with :func:`rescaled_scan`. The escape times underlying this
rescaling follow Kramers' law, checked with :func:`kramers_scan`.


Module documentation
====================

"""

import logging
import math
import multiprocessing

import numpy as np

from gevtip.ensemble.controllers.seeding import derive_seed
from gevtip.ensemble.controllers.threshold import detect_threshold
from gevtip.ensemble.entities.scan import (
    EscapeStatistics,
    KramersResult,
    RealizationResult,
    RescaledCurve,
    ScanAnalysis,
    ScanPoint,
)
from gevtip.exceptions import NoCrossingError, ParameterError
from gevtip.gev.controllers.fitting import GevFitter
from gevtip.models.controllers.doublewell import (
    DoubleWellIntegrator,
    barrier_height,
    kramers_escape_time,
)
from gevtip.models.controllers.simulation import SimulationFactory
from gevtip.models.entities.models import DoubleWellSpec
from gevtip.series.controllers.extremes import block_extremes
from gevtip.series.controllers.indicators import bulk_stats, trend_statistic
from gevtip.series.entities.series import TAILS, BlockSpec

logger = logging.getLogger(__name__)

RESCALING_TOLERANCE = 0.01
"""Relative difference of rescaling constants tolerated without warning."""


def realization_steps(block=None, n_bins=1):
    """
    Number of integration steps per realization.

    Parameters
    ----------
    block : :class:`gevtip.series.entities.series.BlockSpec`
        Bin length and burn-in fraction

    n_bins : :class:`int`
        Number of complete bins required after burn-in

    Returns
    -------
    n_steps : :class:`int`
        :math:`\\lceil mn/(1-b) \\rceil`

    """
    return int(
        math.ceil(
            int(block.bin_length) * int(n_bins) / (1 - block.burn_in_fraction)
        )
    )


def analyse_series(series=None, block=None, pooled=False, fitter=None):
    """
    Select extremes of both tails of a series, fit them, and compute bulk
    statistics.

    Failures of selecting or fitting the extremes of a tail are recorded in
    the result, not raised.

    Parameters
    ----------
    series : :class:`gevtip.series.entities.series.TimeSeries`
        Series to analyse

    block : :class:`gevtip.series.entities.series.BlockSpec`
        Bin length and burn-in fraction. The tail is ignored, as both tails
        are analysed.

    pooled : :class:`bool`
        If true, only the extremes are selected, but not fitted.

    fitter : :class:`gevtip.gev.controllers.fitting.GevFitter`
        Fitter to use, a default one if not given

    Returns
    -------
    result : :class:`gevtip.ensemble.entities.scan.RealizationResult`
        Extremes, fits, and bulk statistics, with the control value of the
        series

    """
    fitter = fitter or GevFitter()
    result = RealizationResult(control_value=series.control_value)
    result.n_bins = block.n_bins(len(series))
    for tail in TAILS:
        try:
            extremes = block_extremes(series, block.copy(tail=tail))
            setattr(result, tail, extremes)
            if not pooled:
                setattr(result, _fit_attribute(tail), fitter.fit(extremes))
        except (ValueError, ArithmeticError) as exc:
            logger.debug("Analysing %s failed: %s", tail, exc)
            result.errors[tail] = str(exc)
    try:
        result.bulk = bulk_stats(
            series, burn_in_fraction=block.burn_in_fraction
        )
    except ValueError as exc:
        logger.debug("No bulk statistics: %s", exc)
    return result


def _fit_attribute(tail):
    return "fit_max" if tail == "maxima" else "fit_min"


def _simulate_realization(task):
    grid_index, realization_index, spec, n_steps, block, pooled = task
    simulation = SimulationFactory().get_simulation(spec=spec)
    run = simulation.run(n_steps=n_steps)
    result = analyse_series(run.series, block=block, pooled=pooled)
    result.grid_index = grid_index
    result.realization_index = realization_index
    result.n_transitions = run.n_transitions
    logger.debug(
        "Realization %s at control value %s done",
        realization_index,
        spec.control_value,
    )
    return result


def _run_tasks(function, tasks, workers=1):
    if workers <= 1 or len(tasks) <= 1:
        return [function(task) for task in tasks]
    with multiprocessing.Pool(processes=workers) as pool:
        return list(pool.imap_unordered(function, tasks))


def _ensemble_spread(fits, std_from_fit):
    values = [fit.shape for fit in fits]
    if not values:
        return np.nan, np.nan, values
    if len(values) == 1:
        spread = fits[0].std_errors[2] if std_from_fit else 0.0
        return float(values[0]), float(spread), values
    return float(np.mean(values)), float(np.std(values, ddof=1)), values


def _aggregate_tail(point, results, tail, pooled, fitter, std_from_fit):
    suffix = "max" if tail == "maxima" else "min"
    if pooled:
        try:
            extremes = np.concatenate(
                [getattr(result, tail) for result in results]
            )
            fits = [fitter.fit(extremes)]
        except (ValueError, ArithmeticError) as exc:
            logger.warning(
                "Pooled fit of %s at control value %s failed: %s",
                tail,
                point.control_value,
                exc,
            )
            fits = []
        fits = [fit for fit in fits if RealizationResult.fit_succeeded(fit)]
        failed = [] if fits else [None]
        mean, std, values = _ensemble_spread(fits, std_from_fit=True)
    else:
        candidates = [
            getattr(result, _fit_attribute(tail)) for result in results
        ]
        fits = [
            fit for fit in candidates if RealizationResult.fit_succeeded(fit)
        ]
        failed = [
            result
            for result, fit in zip(results, candidates)
            if not RealizationResult.fit_succeeded(fit)
        ]
        mean, std, values = _ensemble_spread(fits, std_from_fit)
    setattr(point, f"kappa_{suffix}_mean", mean)
    setattr(point, f"kappa_{suffix}_std", std)
    setattr(point, f"kappa_{suffix}_values", values)
    setattr(point, f"fits_failed_{suffix}", len(failed))
    if failed:
        logger.warning(
            "%s fit(s) of %s failed at control value %s",
            len(failed),
            tail,
            point.control_value,
        )
    if not fits:
        point.flags.append(f"all-fits-failed-{suffix}")
    return failed


def aggregate_realizations(
    control_value=0.0,
    results=None,
    pooled=False,
    std_from_fit=False,
    fitter=None,
):
    """
    Aggregate the analyses of the realizations at one control value.

    Parameters
    ----------
    control_value : :class:`float`
        Value of the control parameter

    results : :class:`list`
        :class:`gevtip.ensemble.entities.scan.RealizationResult` objects

    pooled : :class:`bool`
        Whether to fit the pooled extremes of all realizations

    std_from_fit : :class:`bool`
        Whether to report the standard error of the fit as spread if only a
        single fit succeeded. Otherwise, the spread is zero in this case.

    fitter : :class:`gevtip.gev.controllers.fitting.GevFitter`
        Fitter used for pooled fits, a default one if not given

    Returns
    -------
    point : :class:`gevtip.ensemble.entities.scan.ScanPoint`
        Aggregated statistics

    """
    fitter = fitter or GevFitter()
    results = sorted(results, key=lambda result: result.key)
    point = ScanPoint(control_value=control_value)
    point.n_realizations = len(results)
    failed_max = _aggregate_tail(
        point, results, "maxima", pooled, fitter, std_from_fit
    )
    failed_min = _aggregate_tail(
        point, results, "minima", pooled, fitter, std_from_fit
    )
    if pooled:
        point.fits_failed = max(len(failed_max), len(failed_min))
        point.flags.append("pooled")
    else:
        point.fits_failed = len(
            {id(result) for result in failed_max + failed_min}
        )
    if point.n_realizations == 1:
        point.flags.append("single-realization")
    point.n_transitions_total = int(
        sum(result.n_transitions for result in results)
    )
    bulk = [result.bulk for result in results if result.bulk is not None]
    if bulk:
        point.variance_mean = float(np.mean([item.variance for item in bulk]))
        point.skewness_mean = float(np.mean([item.skewness for item in bulk]))
        point.lag1_autocorr_mean = float(
            np.mean([item.lag1_autocorr for item in bulk])
        )
    point.n_bins = min((result.n_bins for result in results), default=0)
    logger.info(
        "Control value %s: kappa_min = %s +- %s, %s transitions",
        control_value,
        point.kappa_min_mean,
        point.kappa_min_std,
        point.n_transitions_total,
    )
    return point


def _check_grid(control_grid):
    grid = np.asarray(control_grid, dtype=float)
    if grid.ndim != 1 or not grid.size:
        raise ParameterError("Control grid needs to be a non-empty sequence")
    steps = np.diff(grid)
    if not (np.all(steps > 0) or np.all(steps < 0)):
        raise ParameterError(
            f"Control grid needs to be strictly monotone: {grid.tolist()}"
        )
    return grid.tolist()


def _check_positive_integer(name, value):
    if int(value) != value or value < 1:
        raise ParameterError(
            f"{name} needs to be a positive integer: {value}"
        )
    return int(value)


def run_scan(
    model=None,
    control_grid=None,
    n_realizations=1,
    block=None,
    n_bins=100,
    master_seed=0,
    pooled=False,
    workers=1,
):
    """
    Scan the control parameter of a model with ensembles of realizations.

    Parameters
    ----------
    model : :class:`gevtip.models.entities.models.ModelSpec`
        Model specification. The control parameter is set to the values of
        the grid, the seed derived from the master seed.

    control_grid : :class:`list`
        Values of the control parameter, strictly monotone

    n_realizations : :class:`int`
        Number of realizations per control value

    block : :class:`gevtip.series.entities.series.BlockSpec`
        Bin length and burn-in fraction

    n_bins : :class:`int`
        Number of complete bins per realization after burn-in

    master_seed : :class:`int`
        Master seed the seeds of the realizations are derived from

    pooled : :class:`bool`
        Whether to fit the pooled extremes of all realizations per control
        value instead of averaging per-realization fits

    workers : :class:`int`
        Number of worker processes. With one worker, realizations are
        simulated serially.

    Returns
    -------
    points : :class:`list`
        :class:`gevtip.ensemble.entities.scan.ScanPoint` per control value,
        in grid order

    Raises
    ------
    ParameterError
        Raised if the grid is not strictly monotone, counts are not
        positive, or the model specification is invalid for a control
        value.

    SimulationBlowUpError
        Raised if a realization blows up.


    Examples
    --------
    A desk-scale scan of the coupled shear model:

    .. code-block::

        points = run_scan(
            model=CoupledShearSpec(nu=0.2475),
            control_grid=np.linspace(0.02, 0.12, 6),
            n_realizations=10,
            block=BlockSpec(bin_length=10000),
            n_bins=100,
            master_seed=1,
        )

    """
    grid = _check_grid(control_grid)
    n_realizations = _check_positive_integer("n_realizations", n_realizations)
    n_bins = _check_positive_integer("n_bins", n_bins)
    workers = _check_positive_integer("workers", workers)
    block.validate()
    n_steps = realization_steps(block, n_bins)
    tasks = []
    for grid_index, control_value in enumerate(grid):
        spec = model.with_control_value(control_value)
        spec.validate()
        for realization_index in range(n_realizations):
            seed = derive_seed(master_seed, grid_index, realization_index)
            tasks.append(
                (
                    grid_index,
                    realization_index,
                    spec.copy(seed=seed),
                    n_steps,
                    block,
                    pooled,
                )
            )
    logger.info(
        "Scanning %s control values with %s realizations of %s steps",
        len(grid),
        n_realizations,
        n_steps,
    )
    results = _run_tasks(_simulate_realization, tasks, workers=workers)
    collected = {}
    for result in results:
        collected.setdefault(result.grid_index, []).append(result)
    return [
        aggregate_realizations(
            control_value=control_value,
            results=collected[grid_index],
            pooled=pooled,
        )
        for grid_index, control_value in enumerate(grid)
    ]


def analyse_scan(points=None):
    """
    Detect the threshold of a scan, keeping the reason if there is none.

    Parameters
    ----------
    points : :class:`list`
        :class:`gevtip.ensemble.entities.scan.ScanPoint` objects

    Returns
    -------
    analysis : :class:`gevtip.ensemble.entities.scan.ScanAnalysis`
        Scan points with threshold estimate or :class:`NoCrossingError
        <gevtip.exceptions.NoCrossingError>`

    """
    try:
        return ScanAnalysis(points=points, threshold=detect_threshold(points))
    except NoCrossingError as exc:
        return ScanAnalysis(points=points, no_crossing=exc)


def analyze_external(series_set=None, block=None, pooled=False):
    """
    Analyse externally produced series for a range of control values.

    Series with identical control value are regarded as realizations of
    an ensemble. With a single series per control value, the spread of the
    shape parameter is the standard error of the fit.

    Parameters
    ----------
    series_set : :class:`list`
        :class:`gevtip.series.entities.series.TimeSeries` objects, each
        with its control value set

    block : :class:`gevtip.series.entities.series.BlockSpec`
        Bin length and burn-in fraction

    pooled : :class:`bool`
        Whether to fit the pooled extremes of all series per control value

    Returns
    -------
    analysis : :class:`gevtip.ensemble.entities.scan.ScanAnalysis`
        Scan points sorted by control value, and threshold estimate or the
        reason why no crossing was found

    Raises
    ------
    ValueError
        Raised if a series has no control value or no series is given.

    """
    if not series_set:
        message = "No series to analyse"
        logger.error(message)
        raise ValueError(message)
    block.validate()
    groups = {}
    for index, series in enumerate(series_set):
        if series.control_value is None:
            message = (
                f"Series {index} ({series.label!r}) has no control value"
            )
            logger.error(message)
            raise ValueError(message)
        groups.setdefault(float(series.control_value), []).append(series)
    points = []
    for grid_index, control_value in enumerate(sorted(groups)):
        results = []
        for realization_index, series in enumerate(groups[control_value]):
            result = analyse_series(series, block=block, pooled=pooled)
            result.grid_index = grid_index
            result.realization_index = realization_index
            results.append(result)
        points.append(
            aggregate_realizations(
                control_value=control_value,
                results=results,
                pooled=pooled,
                std_from_fit=True,
            )
        )
    return analyse_scan(points)


def _unpack_pair(pair, n_bins):
    if len(pair) == 2:
        return int(pair[0]), float(pair[1]), int(n_bins)
    if len(pair) == 3:
        return int(pair[0]), float(pair[1]), int(pair[2])
    raise ParameterError(
        f"Pairs need to be (m, epsilon) or (m, epsilon, n_bins): {pair!r}"
    )


def _check_rescaling_constants(curves):
    constants = [curve.rescaling_constant for curve in curves]
    if len(constants) < 2:
        return
    low, high = min(constants), max(constants)
    if high - low > RESCALING_TOLERANCE * abs(high):
        logger.warning(
            "Rescaling constants epsilon^2 log m differ: %s", constants
        )


def rescaled_scan(
    a=1.0,
    lambda_grid=None,
    pairs=None,
    n_realizations=1,
    n_bins=100,
    dt=0.01,
    burn_in_fraction=0.1,
    master_seed=0,
    workers=1,
):
    """
    Scan the tilt of the double-well model for pairs of bin length and
    noise amplitude.

    For each pair, the minima of :math:`X` are analysed for all tilts of
    the grid. Failures of one pair do not affect the others.

    Parameters
    ----------
    a : :class:`float`
        Depth parameter of the potential

    lambda_grid : :class:`list`
        Tilts, strictly monotone

    pairs : :class:`list`
        Tuples ``(m, epsilon)`` or ``(m, epsilon, n_bins)``

    n_realizations : :class:`int`
        Number of realizations per tilt

    n_bins : :class:`int`
        Number of bins per realization, if not given with a pair

    dt : :class:`float`
        Integration step

    burn_in_fraction : :class:`float`
        Fraction of each realization discarded as transient

    master_seed : :class:`int`
        Master seed. The seeds of the curves are derived from it.

    workers : :class:`int`
        Number of worker processes

    Returns
    -------
    curves : :class:`list`
        :class:`gevtip.ensemble.entities.scan.RescaledCurve` per pair

    """
    curves = []
    for pair in pairs or []:
        bin_length, epsilon, curve_bins = _unpack_pair(pair, n_bins)
        curves.append(RescaledCurve(bin_length, epsilon, curve_bins))
    _check_rescaling_constants(curves)
    for index, curve in enumerate(curves):
        model = DoubleWellSpec(a=a, epsilon=curve.epsilon, dt=dt)
        block = BlockSpec(
            bin_length=curve.bin_length,
            tail="minima",
            burn_in_fraction=burn_in_fraction,
        )
        try:
            curve.points = run_scan(
                model=model,
                control_grid=lambda_grid,
                n_realizations=n_realizations,
                block=block,
                n_bins=curve.n_bins,
                master_seed=derive_seed(master_seed, index),
                workers=workers,
            )
        except (ValueError, ArithmeticError) as exc:
            logger.warning("Scan of %r failed: %s", curve, exc)
            curve.error = str(exc)
            continue
        crossings = sum(point.n_transitions_total for point in curve.points)
        if crossings:
            logger.warning(
                "Realizations of %r crossed the saddle %s times, "
                "confinement violated",
                curve,
                crossings,
            )
        analysis = analyse_scan(curve.points)
        curve.threshold = analysis.threshold
        curve.no_crossing = analysis.no_crossing
    return curves


def _collect_escapes(task):
    index, spec, n_escapes, max_steps = task
    integrator = DoubleWellIntegrator(spec=spec)
    return index, integrator.collect_escapes(
        n_escapes=n_escapes, max_steps=max_steps
    )


def kramers_scan(
    a=1.0,
    lambda_=0.0,
    epsilons=None,
    n_escapes=50,
    dt=0.01,
    master_seed=0,
    max_steps=10**9,
    workers=1,
):
    """
    Mean escape times from the right well for a range of noise levels.

    The logarithm of the mean escape time is fitted linearly against the
    Arrhenius exponent :math:`2\\Delta V/\\epsilon^2`. Kramers' law
    predicts a slope of one.

    Parameters
    ----------
    a : :class:`float`
        Depth parameter of the potential

    lambda_ : :class:`float`
        Tilt of the potential

    epsilons : :class:`list`
        Noise amplitudes, positive

    n_escapes : :class:`int`
        Number of escapes to record per noise amplitude

    dt : :class:`float`
        Integration step

    master_seed : :class:`int`
        Master seed. The seeds per noise amplitude are derived from it.

    max_steps : :class:`int`
        Maximum number of steps per noise amplitude

    workers : :class:`int`
        Number of worker processes

    Returns
    -------
    result : :class:`gevtip.ensemble.entities.scan.KramersResult`
        Escape statistics per noise amplitude and the fit of Kramers' law

    """
    n_escapes = _check_positive_integer("n_escapes", n_escapes)
    tasks = []
    for index, epsilon in enumerate(epsilons or []):
        if not epsilon > 0:
            raise ParameterError(
                f"Noise amplitude needs to be positive: {epsilon}"
            )
        spec = DoubleWellSpec(
            a=a,
            lambda_=lambda_,
            epsilon=epsilon,
            dt=dt,
            seed=derive_seed(master_seed, index),
        )
        spec.validate()
        tasks.append((index, spec, n_escapes, max_steps))
    collected = dict(_run_tasks(_collect_escapes, tasks, workers=workers))
    barrier = barrier_height(a, lambda_, from_well="right")
    result = KramersResult()
    for index, spec, _, _ in tasks:
        times = collected[index]
        statistics = EscapeStatistics(epsilon=spec.epsilon)
        statistics.barrier = barrier
        statistics.n_escapes = int(times.size)
        statistics.kramers_time = kramers_escape_time(
            a, lambda_, spec.epsilon, from_well="right"
        )
        if times.size:
            statistics.mean_time = float(times.mean())
            statistics.std_time = float(
                times.std(ddof=1) if times.size > 1 else 0.0
            )
        result.points.append(statistics)
    usable = [point for point in result.points if point.n_escapes]
    exponents = [point.arrhenius_exponent for point in usable]
    if len(set(exponents)) >= 2:
        result.slope, result.intercept = (
            float(value)
            for value in np.polyfit(
                exponents, np.log([point.mean_time for point in usable]), 1
            )
        )
    else:
        logger.warning("Too few noise levels with escapes to fit slope")
    return result


def indicator_trends(scan=None):
    """
    Trends of the bulk indicators across a scan.

    Classical early-warning indicators (variance, skewness) trend
    monotonically towards a tipping point, but without a landmark
    identifying the critical value.

    Parameters
    ----------
    scan : :class:`list`
        :class:`gevtip.ensemble.entities.scan.ScanPoint` objects

    Returns
    -------
    trends : :class:`dict`
        Spearman's rank correlation coefficient and p-value of variance and
        absolute skewness with the control values

    """
    controls = [point.control_value for point in scan or []]
    trends = {"n_points": len(controls)}
    indicators = {
        "variance": [point.variance_mean for point in scan or []],
        "abs_skewness": [abs(point.skewness_mean) for point in scan or []],
    }
    for name, values in indicators.items():
        rho, p_value = trend_statistic(controls, values)
        trends[name] = {"rho": rho, "p_value": p_value}
    return trends
