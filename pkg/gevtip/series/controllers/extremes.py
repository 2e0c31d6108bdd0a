r"""
*Selecting block maxima and minima from time series.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

In the block maxima approach, a time series of length :math:`s` is divided
into :math:`n` bins of :math:`m` samples each, and the maximum of each bin
is taken. For :math:`n` and :math:`m` sufficiently large (as a rule of
thumb, both of the order of 1000), the maxima follow a GEV distribution.

Minima are treated as maxima of the variables after sign reversal. Hence,
:func:`block_extremes` returns the *negated* bin minima for
``tail="minima"``, and GEV fits downstream always operate on maxima.


Checking the bin length
=======================

The shape parameter should be independent of the bin length :math:`m`
once the asymptotic regime has been reached. Whether this is the case can
be checked with :func:`bin_length_sensitivity`, fitting the extremes for a
grid of bin lengths, and :func:`plateau`, checking whether all shape
parameters agree within their confidence intervals.


Module documentation
====================

"""

import logging

import numpy as np

from gevtip.exceptions import InsufficientDataError
from gevtip.gev.controllers.fitting import GevFitter

logger = logging.getLogger(__name__)


def block_extremes(series=None, block=None):
    """
    Select the extremes of complete bins of a series.

    Parameters
    ----------
    series : :class:`gevtip.series.entities.series.TimeSeries`
        Series to select the extremes from

    block : :class:`gevtip.series.entities.series.BlockSpec`
        Bin length, tail, and burn-in fraction

    Returns
    -------
    extremes : :class:`numpy.ndarray`
        One value per complete bin, in bin order.

        For minima, the bin minima with reversed sign.

    Raises
    ------
    InsufficientDataError
        Raised if no complete bin remains after burn-in removal.

    NonFiniteValueError
        Raised if the series contains non-finite values.


    Examples
    --------
    .. code-block::

        series = TimeSeries(values=[3, 1, 4, 1, 5, 9, 2, 6])
        block = BlockSpec(bin_length=4, tail="minima", burn_in_fraction=0)
        block_extremes(series, block)  # array([-1., -2.])

    """
    block.validate()
    series.validate()
    length = len(series)
    n_bins = block.n_bins(length)
    if n_bins < 1:
        raise InsufficientDataError(
            f"No complete bin of length {block.bin_length} in series of "
            f"length {length} after burn-in"
        )
    start = block.burn_in_samples(length)
    bin_length = int(block.bin_length)
    bins = series.values[start : start + n_bins * bin_length].reshape(
        n_bins, bin_length
    )
    if block.tail == "minima":
        return -bins.min(axis=1)
    return bins.max(axis=1)


class SensitivityRow:
    """
    One row of a bin-length sensitivity table.

    Attributes
    ----------
    bin_length : :class:`int`
        Bin length :math:`m` used

    fit : :class:`gevtip.gev.entities.gev.GevFit`
        Fit of the extremes, ``None`` if selecting or fitting failed

    error : :class:`Exception`
        Exception raised for this bin length, ``None`` on success

    """

    def __init__(self, bin_length=0, fit=None, error=None):
        self.bin_length = bin_length
        self.fit = fit
        self.error = error

    @property
    def succeeded(self):
        """Whether a fit was obtained for this bin length."""
        return self.fit is not None

    def to_dict(self):
        """
        Return the row as flat dictionary.

        Returns
        -------
        row : :class:`dict`
            Bin length, parameters with confidence intervals, and error

        """
        row = {"bin_length": self.bin_length}
        names = ("location", "scale", "shape")
        if self.fit:
            for name, value, error, (low, high) in zip(
                names,
                self.fit.params.as_tuple(),
                self.fit.std_errors,
                self.fit.ci95,
            ):
                row[name] = value
                row[f"{name}_std_error"] = error
                row[f"{name}_ci_low"] = low
                row[f"{name}_ci_high"] = high
            row["n_extremes"] = self.fit.n_extremes
            row["converged"] = self.fit.converged
        row["error"] = str(self.error) if self.error else ""
        return row


def bin_length_sensitivity(series=None, block=None, bin_lengths=None):
    """
    Fit the extremes of a series for a grid of bin lengths.

    Errors are recorded per row, *e.g.* if a bin length exceeds the series
    length or yields too few bins for fitting.

    Parameters
    ----------
    series : :class:`gevtip.series.entities.series.TimeSeries`
        Series to select the extremes from

    block : :class:`gevtip.series.entities.series.BlockSpec`
        Tail and burn-in fraction; the bin length is taken from the grid.

    bin_lengths : :class:`list`
        Bin lengths :math:`m` to fit the extremes for

    Returns
    -------
    rows : :class:`list`
        One :class:`SensitivityRow` per bin length, in grid order.

        Empty for an empty grid.

    Raises
    ------
    InsufficientDataError
        Raised if the grid is not empty but no row succeeded.

    """
    fitter = GevFitter()
    rows = []
    for bin_length in bin_lengths or []:
        row = SensitivityRow(bin_length=bin_length)
        try:
            extremes = block_extremes(
                series, block.copy(bin_length=bin_length)
            )
            row.fit = fitter.fit(extremes)
        except (ValueError, ArithmeticError) as exc:
            logger.warning("Bin length %s failed: %s", bin_length, exc)
            row.error = exc
        rows.append(row)
    if rows and not any(row.succeeded for row in rows):
        message = "No bin length yielded a fit"
        logger.error(message)
        raise InsufficientDataError(message) from rows[-1].error
    return rows


def plateau(rows=None):
    """
    Check whether the shape parameter is independent of the bin length.

    The shape parameter is considered independent of the bin length if the
    95% confidence intervals of all successful fits pairwise overlap.

    Parameters
    ----------
    rows : :class:`list`
        :class:`SensitivityRow` objects, as returned by
        :func:`bin_length_sensitivity`

    Returns
    -------
    plateau : :class:`bool`
        Whether all confidence intervals of the shape parameter overlap.

        Trivially ``True`` for fewer than two successful rows.

    """
    intervals = [row.fit.ci95[2] for row in rows if row.succeeded]
    if len(intervals) < 2:
        return True
    lows, highs = np.asarray(intervals).T
    return bool(lows.max() <= highs.min())
