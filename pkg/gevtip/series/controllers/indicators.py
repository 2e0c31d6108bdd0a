r"""
*Bulk statistics of time series as early-warning indicators.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

Approaching a critical transition, the variance and the skewness of an
observable typically increase, and so does its autocorrelation. These
bulk statistics are the classical early-warning indicators. They trend
smoothly with the control parameter, though, and do not mark a definite
threshold value. This is in contrast to the shape parameter of the GEV
distribution of the minima, changing its sign at the threshold.

All statistics are computed on the series after removal of the burn-in,
*i.e.* the first ``floor(burn_in_fraction * s)`` samples.


Estimators
==========

* variance: unbiased sample variance (divisor :math:`N - 1`)
* skewness: sample third standardised moment :math:`g_1` without bias
  correction
* lag-1 autocorrelation:
  :math:`\sum_i (x_i - \bar x)(x_{i+1} - \bar x) / \sum_i (x_i - \bar x)^2`

For a constant series, skewness and autocorrelation are reported as zero.


Module documentation
====================

"""

import logging

import numpy as np
import scipy.stats

from gevtip.exceptions import InsufficientDataError
from gevtip.series.entities.series import BulkStats, Histogram

logger = logging.getLogger(__name__)


def _post_burn_in(series, burn_in_fraction):
    series.validate()
    values = series.values
    start = int(np.floor(burn_in_fraction * values.size))
    return values[start:]


def bulk_stats(series=None, burn_in_fraction=0.1):
    """
    Compute bulk statistics of a series.

    Parameters
    ----------
    series : :class:`gevtip.series.entities.series.TimeSeries`
        Series to compute the statistics of

    burn_in_fraction : :class:`float`
        Fraction of the series discarded as transient

    Returns
    -------
    stats : :class:`gevtip.series.entities.series.BulkStats`
        Bulk statistics

    Raises
    ------
    InsufficientDataError
        Raised if fewer than two samples remain after burn-in removal.

    """
    values = _post_burn_in(series, burn_in_fraction)
    if values.size < 2:
        raise InsufficientDataError(
            f"Need at least two samples for bulk statistics, "
            f"got {values.size}"
        )
    stats = BulkStats()
    stats.n_samples = values.size
    stats.mean = float(values.mean())
    if np.ptp(values) == 0:
        return stats
    deviations = values - stats.mean
    sum_of_squares = np.sum(deviations**2)
    second_moment = sum_of_squares / values.size
    stats.variance = float(sum_of_squares / (values.size - 1))
    stats.skewness = float(np.mean(deviations**3) / second_moment**1.5)
    stats.lag1_autocorr = float(
        np.sum(deviations[:-1] * deviations[1:]) / sum_of_squares
    )
    return stats


def histogram(series=None, bins=100, burn_in_fraction=0.1):
    """
    Compute the histogram of the values of a series.

    Parameters
    ----------
    series : :class:`gevtip.series.entities.series.TimeSeries`
        Series to compute the histogram of

    bins : :class:`int`
        Number of (equally spaced) bins

    burn_in_fraction : :class:`float`
        Fraction of the series discarded as transient

    Returns
    -------
    histogram : :class:`gevtip.series.entities.series.Histogram`
        Histogram with counts and normalised density

    Raises
    ------
    InsufficientDataError
        Raised if no samples remain after burn-in removal.

    """
    values = _post_burn_in(series, burn_in_fraction)
    if not values.size:
        raise InsufficientDataError("No samples left for histogram")
    result = Histogram()
    result.counts, result.edges = np.histogram(values, bins=bins)
    widths = np.diff(result.edges)
    result.density = result.counts / (values.size * widths)
    return result


def trend_statistic(controls=None, values=None):
    """
    Rank correlation of an indicator with the control parameter.

    Uses Spearman's rank correlation coefficient, quantifying how
    monotonically an indicator trends with the control parameter. Non-finite
    values are ignored.

    Parameters
    ----------
    controls : :class:`list` | :class:`numpy.ndarray`
        Values of the control parameter

    values : :class:`list` | :class:`numpy.ndarray`
        Values of the indicator

    Returns
    -------
    rho : :class:`float`
        Spearman's rank correlation coefficient in [-1, 1].

        NaN for fewer than three finite points or constant input.

    p_value : :class:`float`
        Two-sided p-value for the absence of correlation

    """
    controls = np.asarray(controls, dtype=float)
    values = np.asarray(values, dtype=float)
    finite = np.isfinite(controls) & np.isfinite(values)
    controls, values = controls[finite], values[finite]
    if (
        controls.size < 3
        or np.ptp(controls) == 0
        or np.ptp(values) == 0
    ):
        return np.nan, np.nan
    result = scipy.stats.spearmanr(controls, values)
    return float(result[0]), float(result[1])
