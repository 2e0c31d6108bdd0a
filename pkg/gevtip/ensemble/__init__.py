"""
*Parameter scans with ensembles of realizations and threshold detection.*

A scan runs, for each value of a control parameter, an ensemble of
independent realizations of a model, fits GEV distributions to the maxima
and minima of each realization, and aggregates the shape parameters over
the ensemble. The threshold (tipping point) is located where the shape
parameter of the minima changes sign, using linear interpolation between
the bracketing scan points.

Externally produced series (*e.g.*, from direct numerical simulations or
experiments) are analysed by the same pipeline.

"""
