r"""
*Evaluating and sampling Generalized Extreme Value distributions.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

The functions in this module are pure functions of their inputs and can
safely be called concurrently. All of them operate on
:class:`GevParams <gevtip.gev.entities.gev.GevParams>` objects and are
vectorised over the evaluation points.


The limit of vanishing shape parameter
======================================

The GEV distribution function is singular at :math:`\kappa = 0`, although
its limit, the Gumbel distribution, is perfectly well defined. Hence, for
:math:`|\kappa|` below :data:`SHAPE_TOLERANCE`, the Gumbel form is used.
Outside this band, the expressions are evaluated using
:func:`numpy.log1p` and :func:`numpy.expm1` to avoid cancellation for
small shape parameters.

For the log-likelihood, the Gumbel form is supplemented by its first-order
correction in :math:`\kappa`. This keeps the log-likelihood smooth across
the switching band, a prerequisite for the finite-difference Hessians used
to obtain standard errors of fitted parameters.


Support
=======

Outside the support :math:`1 + \kappa (x - \mu)/\sigma > 0`, the
distribution function is 0 (left of the support, :math:`\kappa > 0`) or 1
(right of the support, :math:`\kappa < 0`). The log-likelihood of samples
containing points outside the support is :math:`-\infty`, signalling
infeasible parameters to the optimizer.


Module documentation
====================

"""

import logging

import numpy as np

logger = logging.getLogger(__name__)

SHAPE_TOLERANCE = 1e-6
"""Below this absolute value of the shape parameter, the Gumbel form is
used."""


def gev_cdf(x, params):
    """
    Cumulative distribution function of the GEV distribution.

    Parameters
    ----------
    x : :class:`float` | :class:`numpy.ndarray`
        Point(s) to evaluate the distribution function at

    params : :class:`gevtip.gev.entities.gev.GevParams`
        Parameters of the distribution

    Returns
    -------
    cdf : :class:`float` | :class:`numpy.ndarray`
        Values of the distribution function, in [0, 1]

    """
    scalar = np.ndim(x) == 0
    z = np.atleast_1d(np.asarray(x, dtype=float) - params.location)
    z = z / params.scale
    kappa = params.shape
    with np.errstate(over="ignore"):
        if abs(kappa) < SHAPE_TOLERANCE:
            cdf = np.exp(-np.exp(-z))
        else:
            inside = 1.0 + kappa * z > 0
            cdf = np.full(z.shape, 0.0 if kappa > 0 else 1.0)
            cdf[inside] = np.exp(
                -np.exp(-np.log1p(kappa * z[inside]) / kappa)
            )
    if scalar:
        return float(cdf[0])
    return cdf.reshape(np.shape(x))


def gev_pdf(x, params):
    """
    Probability density function of the GEV distribution.

    Zero outside the support.

    Parameters
    ----------
    x : :class:`float` | :class:`numpy.ndarray`
        Point(s) to evaluate the density at

    params : :class:`gevtip.gev.entities.gev.GevParams`
        Parameters of the distribution

    Returns
    -------
    pdf : :class:`float` | :class:`numpy.ndarray`
        Values of the density

    """
    scalar = np.ndim(x) == 0
    z = np.atleast_1d((np.asarray(x, dtype=float) - params.location))
    z = z / params.scale
    pdf = np.zeros(z.shape)
    inside = _inside_support(z, params.shape)
    pdf[inside] = np.exp(_log_density(z[inside], params.shape))
    pdf /= params.scale
    if scalar:
        return float(pdf[0])
    return pdf.reshape(np.shape(x))


def _inside_support(z, kappa):
    if abs(kappa) < SHAPE_TOLERANCE:
        return np.isfinite(z)
    return 1.0 + kappa * z > 0


def _log_density(z, kappa):
    """Log-density of the standardised GEV, scale term excluded."""
    if abs(kappa) < SHAPE_TOLERANCE:
        # Gumbel form plus first-order series correction in kappa
        return (
            -z
            - kappa * (z - z**2 / 2)
            - np.exp(-z) * (1.0 + kappa * z**2 / 2)
        )
    log_t = np.log1p(kappa * z)
    return -(1.0 + 1.0 / kappa) * log_t - np.exp(-log_t / kappa)


def gev_log_likelihood(sample, params):
    """
    Log-likelihood of a sample under a GEV distribution.

    The log-density of each point is

    .. math::

        -\\log\\sigma - (1 + 1/\\kappa) \\log t_i - t_i^{-1/\\kappa},
        \\qquad t_i = 1 + \\kappa (x_i - \\mu)/\\sigma .

    Parameters
    ----------
    sample : :class:`numpy.ndarray` | :class:`list`
        Sample (of extremes)

    params : :class:`gevtip.gev.entities.gev.GevParams`
        Parameters of the distribution

    Returns
    -------
    log_likelihood : :class:`float`
        Sum of the log-densities of all sample points.

        ``-inf`` if any sample point violates the support constraint or the
        scale is not strictly positive.

    """
    if not params.scale > 0:
        return -np.inf
    z = (np.asarray(sample, dtype=float) - params.location) / params.scale
    if not np.all(_inside_support(z, params.shape)):
        return -np.inf
    with np.errstate(over="ignore"):
        value = float(
            np.sum(_log_density(z, params.shape))
            - z.size * np.log(params.scale)
        )
    if np.isnan(value):
        return -np.inf
    return value


def gev_quantile(q, params):
    """
    Quantile function (inverse distribution function) of the GEV.

    Parameters
    ----------
    q : :class:`float` | :class:`numpy.ndarray`
        Probabilities, in (0, 1)

    params : :class:`gevtip.gev.entities.gev.GevParams`
        Parameters of the distribution

    Returns
    -------
    quantiles : :class:`float` | :class:`numpy.ndarray`
        Quantiles corresponding to the probabilities

    """
    log_y = np.log(-np.log(np.asarray(q, dtype=float)))
    kappa = params.shape
    if abs(kappa) < SHAPE_TOLERANCE:
        standardised = -log_y
    else:
        standardised = np.expm1(-kappa * log_y) / kappa
    quantiles = params.location + params.scale * standardised
    if np.ndim(q) == 0:
        return float(quantiles)
    return quantiles


def gev_sample(params, count=0, seed=0):
    """
    Draw random numbers from a GEV distribution.

    Sampling uses the inverse transform of uniform random numbers drawn
    from the open interval (0, 1), hence all samples are finite. For the
    Weibull type, no sample exceeds the :attr:`upper endpoint
    <gevtip.gev.entities.gev.GevParams.upper_endpoint>`.

    Parameters
    ----------
    params : :class:`gevtip.gev.entities.gev.GevParams`
        Parameters of the distribution

    count : :class:`int`
        Number of samples to draw

    seed : :class:`int` | :class:`numpy.random.SeedSequence`
        Seed of the random number generator.

        Identical seeds result in identical samples.

    Returns
    -------
    sample : :class:`numpy.ndarray`
        Random numbers

    """
    rng = np.random.default_rng(seed)
    uniform = rng.uniform(low=np.finfo(float).tiny, high=1.0, size=count)
    return np.atleast_1d(gev_quantile(uniform, params))
