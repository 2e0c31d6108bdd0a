r"""
*Entities representing the results of parameter scans.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

A parameter scan sweeps a control parameter (the noise amplitude :math:`u`
of the coupled shear model, the tilt :math:`\lambda` of the double-well
model, or the Reynolds number of an external flow) and fits GEV
distributions to the block maxima and minima of an ensemble of
realizations at each control value. The aggregated statistics of each
control value are stored in a :class:`ScanPoint`. The control value where
the averaged shape parameter of the minima changes sign is the estimate of
the tipping point, stored in a :class:`ThresholdEstimate`.


Key aspects
===========

* Shape parameters are averaged over the successful fits of the
  realizations, and their spread is the (sample) standard deviation over
  the ensemble. With a single realization, the spread is zero, or the
  standard error of the fit for external data.

* A fit counts as failed if fitting raised (too few extremes, degenerate
  sample), the optimizer hit its iteration cap, or the shape parameter got
  stuck at its lower bound of -1. Failed fits are excluded and counted.
  A fit with singular information matrix still contributes its point
  estimate.

* Flags document peculiarities of a scan point: ``single-realization``,
  ``all-fits-failed-max``, ``all-fits-failed-min``, and ``pooled``.


Module documentation
====================

"""

import logging

import numpy as np

logger = logging.getLogger(__name__)

SCAN_COLUMNS = (
    "control_value",
    "kappa_max_mean",
    "kappa_max_std",
    "kappa_min_mean",
    "kappa_min_std",
    "n_transitions",
    "variance_mean",
    "skewness_mean",
    "fits_failed",
    "n_realizations",
    "fits_failed_max",
    "fits_failed_min",
    "lag1_autocorr_mean",
    "n_bins",
    "flags",
)
"""Columns of scan tables, in order."""

THRESHOLD_METHOD = "linear-interp-kappa-min"


class RealizationResult:
    """
    Analysis of a single realization (or external series).

    Work units of ensemble scans return objects of this class, to be
    aggregated into a :class:`ScanPoint`.

    Attributes
    ----------
    grid_index : :class:`int`
        Index of the control value within the grid

    realization_index : :class:`int`
        Index of the realization at the control value

    control_value : :class:`float`
        Value of the control parameter

    maxima : :class:`numpy.ndarray`
        Block maxima of the series

    minima : :class:`numpy.ndarray`
        Block minima of the series, with reversed sign

    fit_max : :class:`gevtip.gev.entities.gev.GevFit`
        Fit of the maxima, ``None`` if fitting raised or was not performed

    fit_min : :class:`gevtip.gev.entities.gev.GevFit`
        Fit of the minima, ``None`` if fitting raised or was not performed

    errors : :class:`dict`
        Messages of exceptions raised, with tail as key

    n_transitions : :class:`int`
        Number of transitions in the realization

    bulk : :class:`gevtip.series.entities.series.BulkStats`
        Bulk statistics of the series

    n_bins : :class:`int`
        Number of complete bins of the series

    """

    def __init__(self, grid_index=0, realization_index=0, control_value=0.0):
        self.grid_index = grid_index
        self.realization_index = realization_index
        self.control_value = control_value
        self.maxima = np.zeros(0)
        self.minima = np.zeros(0)
        self.fit_max = None
        self.fit_min = None
        self.errors = {}
        self.n_transitions = 0
        self.bulk = None
        self.n_bins = 0

    @property
    def key(self):
        """Key for ordering realizations: (grid index, realization index)."""
        return self.grid_index, self.realization_index

    @staticmethod
    def fit_succeeded(fit=None):
        """
        Check whether a fit counts as successful.

        Parameters
        ----------
        fit : :class:`gevtip.gev.entities.gev.GevFit`
            Fit to check, may be ``None``

        Returns
        -------
        succeeded : :class:`bool`
            Whether a fit is present, the optimizer terminated on its
            tolerance criteria, and the shape parameter is off its bound

        """
        return (
            fit is not None
            and fit.optimizer_success
            and not fit.shape_at_bound
        )


class ScanPoint:
    """
    Aggregated ensemble statistics at one control value.

    Standard deviations are non-negative and computed over the successful
    fits only. If all fits of a tail failed, mean and standard deviation
    of its shape parameter are NaN and the point is flagged.

    Attributes
    ----------
    control_value : :class:`float`
        Value of the control parameter

    kappa_max_mean : :class:`float`
        Shape parameter of the maxima, averaged over the realizations

    kappa_max_std : :class:`float`
        Ensemble standard deviation of the shape parameter of the maxima

    kappa_min_mean : :class:`float`
        Shape parameter of the minima, averaged over the realizations

    kappa_min_std : :class:`float`
        Ensemble standard deviation of the shape parameter of the minima

    kappa_max_values : :class:`list`
        Shape parameters of the successful fits of the maxima

    kappa_min_values : :class:`list`
        Shape parameters of the successful fits of the minima

    n_transitions_total : :class:`int`
        Number of transitions, summed over the ensemble

    variance_mean : :class:`float`
        Variance of the series, averaged over the realizations

    skewness_mean : :class:`float`
        Skewness of the series, averaged over the realizations

    lag1_autocorr_mean : :class:`float`
        Lag-1 autocorrelation of the series, averaged over the realizations

    n_realizations : :class:`int`
        Number of realizations

    fits_failed : :class:`int`
        Number of realizations with at least one failed fit

    fits_failed_max : :class:`int`
        Number of failed fits of the maxima

    fits_failed_min : :class:`int`
        Number of failed fits of the minima

    n_bins : :class:`int`
        Number of bins per realization (minimum over the realizations)

    flags : :class:`list`
        Flags documenting peculiarities of the point

    """

    def __init__(self, control_value=0.0):
        self.control_value = control_value
        self.kappa_max_mean = np.nan
        self.kappa_max_std = np.nan
        self.kappa_min_mean = np.nan
        self.kappa_min_std = np.nan
        self.kappa_max_values = []
        self.kappa_min_values = []
        self.n_transitions_total = 0
        self.variance_mean = np.nan
        self.skewness_mean = np.nan
        self.lag1_autocorr_mean = np.nan
        self.n_realizations = 0
        self.fits_failed = 0
        self.fits_failed_max = 0
        self.fits_failed_min = 0
        self.n_bins = 0
        self.flags = []

    def __repr__(self):
        return (
            f"ScanPoint(control_value={self.control_value!r}, "
            f"kappa_max_mean={self.kappa_max_mean!r}, "
            f"kappa_min_mean={self.kappa_min_mean!r}, "
            f"n_realizations={self.n_realizations!r})"
        )

    @property
    def has_minima_fits(self):
        """Whether the shape parameter of the minima is available."""
        return bool(np.isfinite(self.kappa_min_mean))

    def to_dict(self):
        """
        Return the point as dictionary with the columns of scan tables.

        Flags are joined by semicolons.

        Returns
        -------
        row : :class:`dict`
            Values with :data:`SCAN_COLUMNS` as keys

        """
        return {
            "control_value": self.control_value,
            "kappa_max_mean": self.kappa_max_mean,
            "kappa_max_std": self.kappa_max_std,
            "kappa_min_mean": self.kappa_min_mean,
            "kappa_min_std": self.kappa_min_std,
            "n_transitions": self.n_transitions_total,
            "variance_mean": self.variance_mean,
            "skewness_mean": self.skewness_mean,
            "fits_failed": self.fits_failed,
            "n_realizations": self.n_realizations,
            "fits_failed_max": self.fits_failed_max,
            "fits_failed_min": self.fits_failed_min,
            "lag1_autocorr_mean": self.lag1_autocorr_mean,
            "n_bins": self.n_bins,
            "flags": ";".join(self.flags),
        }


class ThresholdEstimate:
    """
    Estimate of the control value where the shape parameter of the minima
    crosses zero.

    Attributes
    ----------
    control_critical : :class:`float`
        Control value of the primary crossing, *i.e.* the first one in
        scan direction

    uncertainty : :class:`float`
        Half-width of the interval swept by the crossing if the shape
        parameters at the bracketing points are shifted by plus/minus one
        ensemble standard deviation. Positive.

    bracketing_points : :class:`tuple`
        The two :class:`ScanPoint` objects bracketing the primary crossing

    all_crossings : :class:`list`
        Control values of all crossings, in scan direction

    """

    def __init__(self):
        self.control_critical = np.nan
        self.uncertainty = np.nan
        self.bracketing_points = (None, None)
        self.all_crossings = []

    def __repr__(self):
        return (
            f"ThresholdEstimate(control_critical={self.control_critical!r}, "
            f"uncertainty={self.uncertainty!r})"
        )

    def to_dict(self):
        """
        Return the estimate as (JSON-serialisable) dictionary.

        Returns
        -------
        estimate : :class:`dict`
            Critical value, uncertainty, all crossings, and method used

        """
        return {
            "control_critical": self.control_critical,
            "uncertainty": self.uncertainty,
            "crossings": list(self.all_crossings),
            "bracketing_control_values": [
                point.control_value for point in self.bracketing_points
            ],
            "method": THRESHOLD_METHOD,
        }


def no_crossing_dict(error=None):
    """
    Return the dictionary reported if no crossing was found.

    Parameters
    ----------
    error : :class:`gevtip.exceptions.NoCrossingError`
        Exception raised by threshold detection

    Returns
    -------
    result : :class:`dict`
        ``{"crossing": None, "kappa_range": [...]}``

    """
    kappa_range = getattr(error, "kappa_range", None)
    return {
        "crossing": None,
        "kappa_range": list(kappa_range) if kappa_range else None,
    }


class ScanAnalysis:
    """
    Scan points together with the threshold estimate.

    Exactly one of :attr:`threshold` and :attr:`no_crossing` is set.

    Attributes
    ----------
    points : :class:`list`
        :class:`ScanPoint` objects, sorted by control value

    threshold : :class:`ThresholdEstimate`
        Estimate of the tipping point

    no_crossing : :class:`gevtip.exceptions.NoCrossingError`
        Exception raised by threshold detection if no crossing was found

    """

    def __init__(self, points=None, threshold=None, no_crossing=None):
        self.points = points or []
        self.threshold = threshold
        self.no_crossing = no_crossing

    def threshold_dict(self):
        """
        Return the threshold estimate as dictionary.

        Returns
        -------
        threshold : :class:`dict`
            Threshold estimate, or ``{"crossing": None, "kappa_range":
            [...]}`` if no crossing was found

        """
        if self.threshold is not None:
            return self.threshold.to_dict()
        return no_crossing_dict(self.no_crossing)


class RescaledCurve(ScanAnalysis):
    """
    Scan of the double-well model for one pair of bin length and noise.

    Curves with identical rescaling constant :math:`\\epsilon^2 \\log m`
    should cross zero at the same tilt.

    Attributes
    ----------
    bin_length : :class:`int`
        Bin length :math:`m`

    epsilon : :class:`float`
        Noise amplitude

    n_bins : :class:`int`
        Number of bins per realization

    error : :class:`str`
        Message of the exception if the scan of this curve failed, empty
        otherwise

    """

    def __init__(self, bin_length=1, epsilon=0.0, n_bins=100):
        super().__init__()
        self.bin_length = bin_length
        self.epsilon = epsilon
        self.n_bins = n_bins
        self.error = ""

    def __repr__(self):
        return (
            f"RescaledCurve(bin_length={self.bin_length!r}, "
            f"epsilon={self.epsilon!r}, n_bins={self.n_bins!r})"
        )

    @property
    def rescaling_constant(self):
        """Rescaling constant :math:`\\epsilon^2 \\log m`."""
        return self.epsilon**2 * np.log(self.bin_length)

    def to_dict(self):
        """
        Return the curve parameters and threshold as dictionary.

        Returns
        -------
        curve : :class:`dict`
            Bin length, noise, number of bins, rescaling constant,
            threshold, and error
        """
        return {
            "m": self.bin_length,
            "epsilon": self.epsilon,
            "n_bins": self.n_bins,
            "rescaling_constant": self.rescaling_constant,
            "threshold": None if self.error else self.threshold_dict(),
            "error": self.error or None,
        }


class EscapeStatistics:
    """
    Statistics of escape times from the right well for one noise level.

    Attributes
    ----------
    epsilon : :class:`float`
        Noise amplitude

    barrier : :class:`float`
        Barrier height :math:`\\Delta V`

    mean_time : :class:`float`
        Mean escape time

    std_time : :class:`float`
        Standard deviation of the escape times

    n_escapes : :class:`int`
        Number of escapes recorded

    kramers_time : :class:`float`
        Mean escape time according to Kramers' law

    """

    def __init__(self, epsilon=0.0):
        self.epsilon = epsilon
        self.barrier = np.nan
        self.mean_time = np.nan
        self.std_time = np.nan
        self.n_escapes = 0
        self.kramers_time = np.nan

    @property
    def arrhenius_exponent(self):
        """Exponent :math:`2\\Delta V/\\epsilon^2` of Kramers' law."""
        return 2 * self.barrier / self.epsilon**2

    def to_dict(self):
        """
        Return the statistics as dictionary.

        Returns
        -------
        statistics : :class:`dict`
            Statistics, including the Arrhenius exponent
        """
        return {
            "epsilon": self.epsilon,
            "barrier": self.barrier,
            "arrhenius_exponent": self.arrhenius_exponent,
            "mean_time": self.mean_time,
            "std_time": self.std_time,
            "n_escapes": self.n_escapes,
            "kramers_time": self.kramers_time,
        }


class KramersResult:
    """
    Mean escape times for a range of noise levels.

    Kramers' law predicts a slope of one of the logarithm of the mean
    escape time against the Arrhenius exponent :math:`2\\Delta V/
    \\epsilon^2`.

    Attributes
    ----------
    points : :class:`list`
        :class:`EscapeStatistics` per noise level

    slope : :class:`float`
        Slope of the least-squares line of :math:`\\log\\langle\\tau
        \\rangle` against the Arrhenius exponent

    intercept : :class:`float`
        Intercept of that line

    """

    def __init__(self):
        self.points = []
        self.slope = np.nan
        self.intercept = np.nan

    def to_dict(self):
        """
        Return slope, intercept, and the statistics per noise level.

        Returns
        -------
        result : :class:`dict`
            Fit of Kramers' law and statistics

        """
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "points": [point.to_dict() for point in self.points],
        }
