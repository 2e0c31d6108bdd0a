"""
*Time series, block extremes, and bulk statistics.*

The :mod:`series <gevtip.series>` subpackage deals with the time series of
observables: representing them, reading them from and writing them to
files, selecting the maxima and minima in bins of fixed length (the block
maxima approach), and computing bulk statistics such as variance and
skewness that serve as classical early-warning indicators.

Minima are always returned with reversed sign, *i.e.* as maxima of the
negated series. Hence, the GEV fitting downstream operates on maxima only.

"""
