r"""
*Entities representing time series and their block extremes.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

The basic object everything else in this package operates on is a time
series of an observable, such as the turbulent kinetic energy of a flow or
the coordinate of a particle in a double-well potential. Time series are
sequences of samples taken at a constant sampling step.

Extremes are selected from a time series following the block maxima
approach: the series of length :math:`s` is divided into :math:`n` bins of
:math:`m` samples each, and the maximum (or minimum) of each bin is taken.
How this is done is configured using a :class:`BlockSpec`.


Overview
========

* :class:`TimeSeries`

  Ordered sequence of samples with sampling step and metadata.

* :class:`BlockSpec`

  Configuration of the block extremes selection: bin length, tail, and
  fraction of the series discarded as burn-in.

* :class:`BulkStats`

  Bulk statistics of a time series (early-warning indicators).

* :class:`Histogram`

  Histogram of the values of a time series.

* :class:`SeriesImporter`

  Base class for importing time series from files, with optional
  preprocessing steps (:class:`SeriesPreprocessingStep`).


A note on units
===============

The bin length :math:`m` is always a number of *samples*. To convert a bin
length given in time units into samples, divide by the sampling step
:attr:`TimeSeries.dt`.


Module documentation
====================

"""

import copy
import logging

import numpy as np

from gevtip.exceptions import (
    EmptySeriesError,
    InsufficientDataError,
    NonFiniteValueError,
    ParameterError,
)

logger = logging.getLogger(__name__)

TAILS = ("maxima", "minima")


class TimeSeries:
    """
    Ordered sequence of samples of an observable.

    Attributes
    ----------
    values : :class:`numpy.ndarray`
        Samples of the observable, in units of the observable.

        Always a one-dimensional array of floats. Setting the values
        converts whatever sequence is provided.

    dt : :class:`float`
        Sampling step, in time units per sample.

        Default: 1.0

    label : :class:`str`
        Name of the observable

    control_value : :class:`float`
        Value of the control parameter the series was obtained at.

        Examples are the Reynolds number of a flow or the noise amplitude
        of a stochastic model. ``None`` if not applicable.

    metadata : :class:`dict`
        Additional metadata, *e.g.* read from metadata comments of a file.


    Parameters
    ----------
    values : :class:`list` | :class:`numpy.ndarray`
        Samples of the observable

    dt : :class:`float`
        Sampling step

    label : :class:`str`
        Name of the observable

    control_value : :class:`float`
        Value of the control parameter


    Examples
    --------
    Usually, you will either obtain a time series from a simulation or by
    importing it from a file. Creating one from scratch is simple, though:

    .. code-block::

        series = TimeSeries(values=[3, 1, 4, 1, 5], dt=0.01, label="E")
        series.validate()

    """

    def __init__(self, values=None, dt=1.0, label="", control_value=None):
        self._values = np.zeros(0)
        if values is not None:
            self.values = values
        self.dt = dt
        self.label = label
        self.control_value = control_value
        self.metadata = {}

    def __len__(self):
        return self._values.size

    def __repr__(self):
        return (
            f"TimeSeries(<{len(self)} values>, dt={self.dt!r}, "
            f"label={self.label!r}, control_value={self.control_value!r})"
        )

    @property
    def values(self):
        """
        Samples of the observable.

        Returns
        -------
        values : :class:`numpy.ndarray`
            One-dimensional array of floats

        """
        return self._values

    @values.setter
    def values(self, values=None):
        self._values = np.array(values, dtype=float).ravel()

    @property
    def times(self):
        """
        Times of the samples, starting at zero.

        Returns
        -------
        times : :class:`numpy.ndarray`
            Sample index times :attr:`dt`

        """
        return np.arange(len(self)) * self.dt

    def validate(self):
        """
        Check the series for validity.

        Raises
        ------
        EmptySeriesError
            Raised if the series contains no values.

        NonFiniteValueError
            Raised if the series contains NaN or infinite values.

        ParameterError
            Raised if the sampling step is not strictly positive.

        """
        if not len(self):
            raise EmptySeriesError("Series contains no values")
        finite = np.isfinite(self._values)
        if not np.all(finite):
            index = int(np.argmin(finite))
            raise NonFiniteValueError(
                f"Non-finite value {self._values[index]} at index {index}"
            )
        if not self.dt > 0:
            raise ParameterError(
                f"Sampling step needs to be positive: {self.dt!r}"
            )

    def copy(self):
        """
        Return a (deep) copy of the series.

        Returns
        -------
        series : :class:`TimeSeries`
            Copy of the series

        """
        return copy.deepcopy(self)

    def negated(self):
        """
        Return a copy of the series with reversed sign of all values.

        Minima of a series are maxima of the negated series.

        Returns
        -------
        series : :class:`TimeSeries`
            Negated series

        """
        negated = self.copy()
        negated.values = -self._values
        return negated


class BlockSpec:
    """
    Configuration of the block extremes selection.

    After discarding the burn-in, *i.e.* the first
    ``floor(burn_in_fraction * s)`` samples of a series of length
    :math:`s`, the series is divided into complete bins of
    :attr:`bin_length` samples. A trailing partial bin is discarded.

    Attributes
    ----------
    bin_length : :class:`int`
        Number of samples per bin, :math:`m`

        Default: 1000

    tail : :class:`str`
        Which extremes to select: "maxima" or "minima".

        Minima are returned with reversed sign.

        Default: "maxima"

    burn_in_fraction : :class:`float`
        Fraction of the series discarded as transient, in [0, 1).

        Default: 0.1


    Examples
    --------
    A block specification is typically created once and used for many
    series:

    .. code-block::

        block = BlockSpec(bin_length=1000, tail="minima")
        block.n_bins(110000)  # 99

    """

    def __init__(self, bin_length=1000, tail="maxima", burn_in_fraction=0.1):
        self.bin_length = bin_length
        self.tail = tail
        self.burn_in_fraction = burn_in_fraction

    def __repr__(self):
        return (
            f"BlockSpec(bin_length={self.bin_length!r}, tail={self.tail!r}, "
            f"burn_in_fraction={self.burn_in_fraction!r})"
        )

    def validate(self):
        """
        Check the specification for validity.

        Raises
        ------
        ParameterError
            Raised if the bin length is not a positive integer, the tail is
            unknown, or the burn-in fraction is outside [0, 1).

        """
        if (
            isinstance(self.bin_length, bool)
            or int(self.bin_length) != self.bin_length
            or self.bin_length < 1
        ):
            raise ParameterError(
                f"Bin length needs to be a positive integer: "
                f"{self.bin_length!r}"
            )
        if self.tail not in TAILS:
            raise ParameterError(
                f"Unknown tail {self.tail!r}, expected one of {TAILS}"
            )
        if not 0 <= self.burn_in_fraction < 1:
            raise ParameterError(
                f"Burn-in fraction needs to be in [0, 1): "
                f"{self.burn_in_fraction!r}"
            )

    def copy(self, **changes):
        """
        Return a copy of the specification, optionally with changes.

        Parameters
        ----------
        changes
            Attributes to change in the copy

        Returns
        -------
        block : :class:`BlockSpec`
            Copy of the specification

        """
        block = copy.copy(self)
        for attribute, value in changes.items():
            if not hasattr(block, attribute):
                raise AttributeError(f"Unknown attribute {attribute!r}")
            setattr(block, attribute, value)
        return block

    def burn_in_samples(self, series_length=0):
        """
        Number of samples discarded as burn-in.

        Parameters
        ----------
        series_length : :class:`int`
            Length :math:`s` of the series

        Returns
        -------
        samples : :class:`int`
            ``floor(burn_in_fraction * s)``

        """
        return int(np.floor(self.burn_in_fraction * series_length))

    def n_bins(self, series_length=0):
        """
        Number of complete bins of a series of given length.

        Parameters
        ----------
        series_length : :class:`int`
            Length :math:`s` of the series

        Returns
        -------
        n_bins : :class:`int`
            Number of complete bins after burn-in removal

        """
        usable = series_length - self.burn_in_samples(series_length)
        return int(usable // int(self.bin_length))


class BulkStats:
    """
    Bulk statistics of a time series.

    For a constant series, the variance is zero and skewness and lag-1
    autocorrelation are reported as zero by convention.

    Attributes
    ----------
    mean : :class:`float`
        Sample mean

    variance : :class:`float`
        Unbiased sample variance

    skewness : :class:`float`
        Sample skewness (third standardised moment, without bias
        correction)

    lag1_autocorr : :class:`float`
        Sample autocorrelation at lag one, in [-1, 1]

    n_samples : :class:`int`
        Number of samples the statistics were computed from

    """

    def __init__(self):
        self.mean = 0.0
        self.variance = 0.0
        self.skewness = 0.0
        self.lag1_autocorr = 0.0
        self.n_samples = 0

    def __repr__(self):
        return (
            f"BulkStats(mean={self.mean!r}, variance={self.variance!r}, "
            f"skewness={self.skewness!r}, "
            f"lag1_autocorr={self.lag1_autocorr!r}, "
            f"n_samples={self.n_samples!r})"
        )

    def to_dict(self):
        """
        Return the statistics as dictionary.

        Returns
        -------
        stats : :class:`dict`
            Bulk statistics

        """
        return {
            "mean": self.mean,
            "variance": self.variance,
            "skewness": self.skewness,
            "lag1_autocorr": self.lag1_autocorr,
            "n_samples": self.n_samples,
        }


class Histogram:
    """
    Histogram of the values of a time series.

    Log-linear histograms are the natural way to look at the distribution
    of an observable that intermittently visits states far away from its
    typical values, such as the kinetic energy of a flow close to
    laminarisation.

    Attributes
    ----------
    edges : :class:`numpy.ndarray`
        Bin edges, one more than bins

    counts : :class:`numpy.ndarray`
        Number of samples per bin

    density : :class:`numpy.ndarray`
        Probability density per bin, normalised to unit integral

    """

    def __init__(self):
        self.edges = np.zeros(0)
        self.counts = np.zeros(0, dtype=int)
        self.density = np.zeros(0)

    @property
    def centres(self):
        """Bin centres."""
        return (self.edges[:-1] + self.edges[1:]) / 2

    @property
    def log_density(self):
        """Natural logarithm of the density, NaN for empty bins."""
        log_density = np.full(self.density.shape, np.nan)
        filled = self.density > 0
        log_density[filled] = np.log(self.density[filled])
        return log_density


class SeriesImporter:
    """
    Base class for importing time series.

    Actual importer classes inherit from this base class and implement the
    private method :meth:`_load`. This method simply returns the loaded
    :obj:`TimeSeries`.

    Optionally, preprocessing will be applied to the series loaded, if the
    list :attr:`preprocessing` is not empty. Finally, the series is
    validated.


    Attributes
    ----------
    source : :class:`str`
        Source the series should be loaded from.

        Typically, a file name.

    preprocessing : :class:`list`
        Preprocessing steps applied after loading the series.

        Each entry in the list is an object of type
        :class:`SeriesPreprocessingStep`.

    Raises
    ------
    ValueError
        Raised upon load if no source is provided.


    Examples
    --------
    While this base class is not intended to be used directly, the general
    usage is the same for all descendants:

    .. code-block::

        importer = CsvSeriesImporter()
        series = importer.load(source="energy.csv")

    For convenience, you can set the source when instantiating the object:

    .. code-block::

        importer = CsvSeriesImporter(source="energy.csv")
        series = importer.load()

    """

    def __init__(self, source=""):
        self.source = source
        self.preprocessing = []

    def load(self, source=""):
        """
        Load series from source.

        The method first checks for the source to be present, and afterwards
        calls out to the private method :meth:`_load` that does the actual
        business. Child classes hence need to implement this private method.

        Once loaded, the series is preprocessed with each of the
        preprocessing steps defined in :attr:`preprocessing` and validated.

        Parameters
        ----------
        source : :class:`str`
            Source the series should be loaded from.

            Typically, a file name.

        Raises
        ------
        ValueError
            Raised if no source is provided.

        Returns
        -------
        series : :class:`TimeSeries`
            Series loaded from the source.

        """
        if source:
            self.source = source
        if not self.source:
            raise ValueError("No source provided to load series from.")
        series = self._load()  # noqa
        for task in self.preprocessing:
            series = task.process(series)
        series.validate()
        logger.debug("Loaded %r from %s", series, self.source)
        return series

    def _load(self):
        return TimeSeries()


class SeriesPreprocessingStep:
    """
    Preprocessing step optionally hooked into series importers.

    For the actual preprocessing steps, see the :mod:`preprocessing
    <gevtip.series.controllers.preprocessing>` module.

    Attributes
    ----------
    series : :class:`TimeSeries`
        Series to be processed


    Examples
    --------
    Processing is done by calling the :meth:`process` method, either with
    the series set beforehand or provided as parameter:

    .. code-block::

        task = Subsample(stride=10)
        series = task.process(series)

    Processing steps can be chained. They always return a new series and
    leave the original one untouched.

    """

    def __init__(self, series=None):
        self.series = series

    def process(self, series=None):
        """
        Perform the preprocessing step on the series.

        The actual task is implemented in the :meth:`_process` method.

        Parameters
        ----------
        series : :class:`TimeSeries`
            Series to be processed

        Returns
        -------
        series : :class:`TimeSeries`
            Processed series

        """
        if series is not None:
            self.series = series
        return self._process()

    def _process(self):
        return self.series.copy()
