r"""
*Fitting GEV distributions to samples of extremes.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

Parameters of a GEV distribution are estimated by maximising the
likelihood of the sample of extremes (maximum likelihood estimation, MLE).
Standard errors and (asymptotic-normal) 95% confidence intervals are
obtained from the inverse of the observed information matrix, *i.e.* the
Hessian of the negative log-likelihood at the optimum, evaluated by finite
differences.


Overview
========

* :func:`pwm_estimate`

  Closed-form estimate of the parameters using probability weighted
  moments (PWM, equivalent to L-moments). Robust, and used as initial
  guess of the optimizer.

* :func:`observed_information`

  Observed information matrix by central finite differences.

* :class:`GevFitter`

  Maximum likelihood fitting with configurable minimum sample size,
  iteration cap, and tolerance.

* :func:`gev_fit_mle`

  Functional interface to :class:`GevFitter`.


How fitting works
=================

#. The sample is checked for sufficient size, finite values, and non-zero
   spread.

#. The sample is standardised (zero mean, unit standard deviation) to
   make optimizer tolerances independent of the units of the observable.

#. An initial guess is obtained from :func:`pwm_estimate`. If this guess
   does not contain all sample points in its support, a Gumbel moment
   estimate (always feasible) is used instead.

#. The negative log-likelihood is minimised in
   :math:`(\mu, \log\sigma, \kappa)` using the derivative-free
   Nelder--Mead simplex algorithm. The support constraint is enforced by
   the infinite negative log-likelihood of infeasible parameters. Shape
   parameters :math:`\kappa \le -1` are excluded as well, as the
   likelihood is unbounded there.

#. Parameters are transformed back to the original scale, and the observed
   information matrix is evaluated on the original sample.


Module documentation
====================

"""

import logging

import numpy as np
import scipy.optimize
import scipy.special

from gevtip.exceptions import (
    DegenerateSampleError,
    InsufficientDataError,
    NonFiniteValueError,
)
from gevtip.gev.controllers.distribution import (
    SHAPE_TOLERANCE,
    gev_log_likelihood,
)
from gevtip.gev.entities.gev import GevFit, GevParams

logger = logging.getLogger(__name__)

EULER_GAMMA = np.euler_gamma


def pwm_estimate(extremes=None):
    """
    Estimate GEV parameters using probability weighted moments.

    Uses the first three sample L-moments and the rational approximation
    of the shape parameter in terms of the L-skewness. Note that the shape
    parameter convention of this package is the opposite sign of the
    "k" often used in the L-moment literature.

    Parameters
    ----------
    extremes : :class:`numpy.ndarray` | :class:`list`
        Sample of extremes

        Needs to contain at least three points with non-zero spread.

    Returns
    -------
    params : :class:`gevtip.gev.entities.gev.GevParams`
        Estimated parameters

    Raises
    ------
    InsufficientDataError
        Raised if fewer than three points are provided.

    DegenerateSampleError
        Raised if all points are equal.

    """
    values = np.sort(np.asarray(extremes, dtype=float))
    n_values = values.size
    if n_values < 3:
        raise InsufficientDataError("Need at least three values for PWM")
    ranks = np.arange(n_values)
    b0 = values.mean()
    b1 = np.sum(ranks / (n_values - 1) * values) / n_values
    b2 = (
        np.sum(
            ranks
            * (ranks - 1)
            / ((n_values - 1) * (n_values - 2))
            * values
        )
        / n_values
    )
    l1 = b0
    l2 = 2 * b1 - b0
    l3 = 6 * b2 - 6 * b1 + b0
    if l2 <= 0:
        raise DegenerateSampleError("Sample has zero spread")
    t3 = l3 / l2
    c = 2 / (3 + t3) - np.log(2) / np.log(3)
    k = 7.8590 * c + 2.9554 * c**2
    if abs(k) < SHAPE_TOLERANCE:
        scale = l2 / np.log(2)
        return GevParams(
            location=l1 - EULER_GAMMA * scale, scale=scale, shape=0.0
        )
    gamma = scipy.special.gamma(1 + k)
    scale = l2 * k / ((1 - 2.0 ** (-k)) * gamma)
    location = l1 - scale * (1 - gamma) / k
    return GevParams(location=location, scale=scale, shape=-k)


def _gumbel_moment_estimate(values):
    scale = np.std(values) * np.sqrt(6) / np.pi
    return GevParams(
        location=np.mean(values) - EULER_GAMMA * scale, scale=scale, shape=0
    )


def observed_information(sample=None, params=None, relative_step=1e-4):
    """
    Observed information matrix of a sample at given GEV parameters.

    The observed information is the Hessian of the negative log-likelihood,
    here evaluated by central finite differences with respect to
    (location, scale, shape). Steps are ``relative_step`` times the scale
    for location and scale, and ``relative_step`` for the shape.

    Parameters
    ----------
    sample : :class:`numpy.ndarray`
        Sample of extremes

    params : :class:`gevtip.gev.entities.gev.GevParams`
        Parameters to evaluate the information matrix at

    relative_step : :class:`float`
        Relative step size of the finite differences

    Returns
    -------
    information : :class:`numpy.ndarray`
        Symmetric 3x3 matrix.

        Contains non-finite values if any of the evaluation points of the
        finite differences is infeasible.

    """
    point = np.asarray(params.as_tuple(), dtype=float)
    steps = relative_step * np.array([params.scale, params.scale, 1.0])

    def negative_log_likelihood(values):
        return -gev_log_likelihood(sample, GevParams(*values))

    information = np.zeros((3, 3))
    centre = negative_log_likelihood(point)
    for row in range(3):
        shift_row = np.zeros(3)
        shift_row[row] = steps[row]
        forward = negative_log_likelihood(point + shift_row)
        backward = negative_log_likelihood(point - shift_row)
        information[row, row] = (forward - 2 * centre + backward) / steps[
            row
        ] ** 2
        for column in range(row + 1, 3):
            shift_column = np.zeros(3)
            shift_column[column] = steps[column]
            element = (
                negative_log_likelihood(point + shift_row + shift_column)
                - negative_log_likelihood(point + shift_row - shift_column)
                - negative_log_likelihood(point - shift_row + shift_column)
                + negative_log_likelihood(point - shift_row - shift_column)
            ) / (4 * steps[row] * steps[column])
            information[row, column] = information[column, row] = element
    return information


class GevFitter:
    """
    Maximum likelihood fitting of GEV distributions.

    Attributes
    ----------
    min_sample_size : :class:`int`
        Minimum number of extremes required for fitting.

        Below this number, standard errors are meaningless.

        Default: 30

    max_iterations : :class:`int`
        Iteration cap of the optimizer.

        Default: 10000

    xtol : :class:`float`
        Convergence tolerance of the parameters (of the standardised
        problem, hence relative).

        Default: 1e-8

    ci_factor : :class:`float`
        Factor the standard errors are multiplied with to obtain the
        half-width of the confidence intervals.

        Default: 1.96

    shape_bound_tolerance : :class:`float`
        Distance to the lower bound -1 of the shape parameter below which
        a fit is marked as stuck at the bound.

        Default: 1e-3


    Examples
    --------
    Fitting a sample of extremes is a matter of a single call:

    .. code-block::

        fitter = GevFitter()
        fit = fitter.fit(extremes)
        fit.params.shape, fit.ci95[2]

    For small samples, you may reduce the minimum sample size, although
    you should be aware of the consequences:

    .. code-block::

        fitter = GevFitter(min_sample_size=20)

    """

    def __init__(self, min_sample_size=30):
        self.min_sample_size = min_sample_size
        self.max_iterations = 10000
        self.xtol = 1e-8
        self.ci_factor = 1.96
        self.shape_bound_tolerance = 1e-3

    def fit(self, extremes=None):
        """
        Fit a GEV distribution to a sample of extremes.

        Parameters
        ----------
        extremes : :class:`numpy.ndarray` | :class:`list`
            Sample of extremes (maxima)

        Returns
        -------
        fit : :class:`gevtip.gev.entities.gev.GevFit`
            Fit result

        Raises
        ------
        InsufficientDataError
            Raised if fewer than :attr:`min_sample_size` extremes are given.

        NonFiniteValueError
            Raised if the extremes contain non-finite values.

        DegenerateSampleError
            Raised if all extremes are equal.

        """
        values = self._check_sample(extremes)
        mean, std = values.mean(), values.std()
        standardised = (values - mean) / std
        result = self._minimise(standardised)
        location, log_scale, shape = result.x
        fit = GevFit()
        fit.params = GevParams(
            location=mean + std * location,
            scale=std * np.exp(log_scale),
            shape=shape,
        )
        fit.n_extremes = values.size
        fit.optimizer_success = bool(result.success)
        fit.log_likelihood = gev_log_likelihood(values, fit.params)
        self._set_errors(fit=fit, values=values)
        if shape <= -1 + self.shape_bound_tolerance:
            fit.shape_at_bound = True
            fit.message = "Shape parameter at its lower bound of -1"
        if not fit.optimizer_success:
            fit.message = f"Optimizer did not converge: {result.message}"
        fit.converged = fit.optimizer_success and not fit.message
        if not fit.converged:
            logger.warning("GEV fit not converged: %s", fit.message)
        return fit

    def _check_sample(self, extremes):
        values = np.asarray(extremes, dtype=float).ravel()
        if values.size < self.min_sample_size:
            raise InsufficientDataError(
                f"Need at least {self.min_sample_size} extremes for fitting, "
                f"got {values.size}"
            )
        if not np.all(np.isfinite(values)):
            raise NonFiniteValueError("Extremes contain non-finite values")
        if np.ptp(values) == 0:
            raise DegenerateSampleError("All extremes are equal")
        return values

    def _minimise(self, standardised):
        initial = self._initial_guess(standardised)

        def objective(theta):
            if theta[2] <= -1:
                return np.inf
            params = GevParams(theta[0], np.exp(theta[1]), theta[2])
            return -gev_log_likelihood(standardised, params)

        start = np.array(
            [initial.location, np.log(initial.scale), initial.shape]
        )
        simplex = np.vstack([start, start + 0.1 * np.eye(3)])
        result = scipy.optimize.minimize(
            objective,
            start,
            method="Nelder-Mead",
            options={
                "maxiter": self.max_iterations,
                "maxfev": 2 * self.max_iterations,
                "xatol": self.xtol,
                "fatol": self.xtol,
                "initial_simplex": simplex,
            },
        )
        logger.debug(
            "Nelder-Mead: %s iterations, %s", result.nit, result.message
        )
        return result

    @staticmethod
    def _initial_guess(standardised):
        try:
            initial = pwm_estimate(standardised)
            initial.shape = float(np.clip(initial.shape, -0.9, 0.9))
        except (ValueError, OverflowError):
            initial = None
        if (
            initial is None
            or not np.all(np.isfinite(initial.as_tuple()))
            or initial.scale <= 0
            or not np.isfinite(gev_log_likelihood(standardised, initial))
        ):
            initial = _gumbel_moment_estimate(standardised)
        return initial

    def _set_errors(self, fit=None, values=None):
        information = observed_information(values, fit.params)
        try:
            if not np.all(np.isfinite(information)):
                raise np.linalg.LinAlgError("Non-finite information matrix")
            np.linalg.cholesky(information)
            covariance = np.linalg.inv(information)
            std_errors = np.sqrt(np.diag(covariance))
        except np.linalg.LinAlgError:
            fit.message = "Information matrix not positive definite"
            std_errors = np.full(3, np.inf)
        fit.set_errors(std_errors=std_errors, ci_factor=self.ci_factor)


def gev_fit_mle(extremes=None, min_sample_size=30):
    """
    Fit a GEV distribution by maximum likelihood.

    Shorthand for :meth:`GevFitter.fit` with default settings.

    Parameters
    ----------
    extremes : :class:`numpy.ndarray` | :class:`list`
        Sample of extremes (maxima)

    min_sample_size : :class:`int`
        Minimum number of extremes required for fitting

    Returns
    -------
    fit : :class:`gevtip.gev.entities.gev.GevFit`
        Fit result

    """
    return GevFitter(min_sample_size=min_sample_size).fit(extremes)
