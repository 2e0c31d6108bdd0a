r"""
*Parameters and fit results of Generalized Extreme Value distributions.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

The Generalized Extreme Value (GEV) distribution is the limit law for
maxima of blocks of (sufficiently well-behaved) random variables. It is
characterised by three parameters, location :math:`\mu`, scale
:math:`\sigma > 0`, and shape :math:`\kappa`, with the cumulative
distribution function

.. math::

    F(x; \mu, \sigma, \kappa) = \exp\left\{-\left[1 + \kappa\,
    \frac{x - \mu}{\sigma}\right]^{-1/\kappa}\right\},
    \qquad 1 + \kappa (x - \mu)/\sigma > 0 .

The sign of the shape parameter determines the type of the extreme value
law (EVL):

* :math:`\kappa < 0`: Weibull type, with finite upper endpoint
  :math:`x_\mathrm{up} = \mu - \sigma/\kappa`,
* :math:`\kappa = 0`: Gumbel type (limit :math:`\kappa \to 0`),
* :math:`\kappa > 0`: Frechet type, power-law tail.

This module contains only the data structures. Evaluating the
distribution and fitting it to data is done in the :mod:`distribution
<gevtip.gev.controllers.distribution>` and :mod:`fitting
<gevtip.gev.controllers.fitting>` modules.


Module documentation
====================

"""

import logging

import numpy as np

from gevtip.exceptions import ParameterError

logger = logging.getLogger(__name__)


class GevParams:
    """
    Parameter triple of a GEV distribution.

    Attributes
    ----------
    location : :class:`float`
        Location parameter :math:`\\mu`, in units of the observable.

    scale : :class:`float`
        Scale parameter :math:`\\sigma`, in units of the observable.

        Needs to be strictly positive.

    shape : :class:`float`
        Shape parameter (tail index) :math:`\\kappa`, dimensionless.


    Parameters
    ----------
    location : :class:`float`
        Location parameter

    scale : :class:`float`
        Scale parameter

    shape : :class:`float`
        Shape parameter


    Examples
    --------
    Parameters are usually set upon instantiating the object:

    .. code-block::

        params = GevParams(location=0.0, scale=1.0, shape=-0.5)
        params.upper_endpoint  # 2.0

    """

    def __init__(self, location=0.0, scale=1.0, shape=0.0):
        self.location = float(location)
        self.scale = float(scale)
        self.shape = float(shape)

    def __repr__(self):
        return (
            f"GevParams(location={self.location!r}, scale={self.scale!r}, "
            f"shape={self.shape!r})"
        )

    def __eq__(self, other):
        if not isinstance(other, GevParams):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    @property
    def upper_endpoint(self):
        """
        Upper endpoint of the support.

        Finite only for the Weibull type (:math:`\\kappa < 0`), where it is
        :math:`\\mu - \\sigma/\\kappa`. Infinite otherwise.

        Returns
        -------
        endpoint : :class:`float`
            Upper endpoint of the support

        """
        if self.shape < 0:
            return self.location + self.scale * (-1.0 / self.shape)
        return np.inf

    @property
    def lower_endpoint(self):
        """
        Lower endpoint of the support.

        Finite only for the Frechet type (:math:`\\kappa > 0`).

        Returns
        -------
        endpoint : :class:`float`
            Lower endpoint of the support

        """
        if self.shape > 0:
            return self.location + self.scale * (-1.0 / self.shape)
        return -np.inf

    def as_tuple(self):
        """
        Return parameters as tuple (location, scale, shape).

        Returns
        -------
        params : :class:`tuple`
            Location, scale, and shape

        """
        return self.location, self.scale, self.shape

    def validate(self):
        """
        Check parameters for validity.

        Raises
        ------
        ParameterError
            Raised if any parameter is not finite or the scale is not
            strictly positive.

        """
        if not np.all(np.isfinite(self.as_tuple())):
            raise ParameterError(f"Non-finite GEV parameters: {self!r}")
        if self.scale <= 0:
            raise ParameterError(f"Scale needs to be positive: {self!r}")


class GevFit:
    """
    Result of fitting a GEV distribution to a sample of extremes.

    Confidence intervals are asymptotic-normal: the half-width of the 95%
    confidence interval of each parameter is 1.96 times its standard error,
    the latter obtained from the inverse of the observed information
    matrix. Hence, the intervals are symmetric and always contain the point
    estimate.

    If the information matrix is not positive definite, no standard errors
    can be obtained. In this case, standard errors are set to infinity,
    and the confidence intervals span the entire real line.

    Attributes
    ----------
    params : :class:`GevParams`
        Fitted parameters

    std_errors : :class:`tuple`
        Standard errors of location, scale, and shape

    ci95 : :class:`tuple`
        95% confidence intervals of location, scale, and shape

        Each element is a tuple (low, high).

    log_likelihood : :class:`float`
        Log-likelihood achieved at :attr:`params`

    n_extremes : :class:`int`
        Number of extremes the distribution was fitted to

    converged : :class:`bool`
        Whether the fit converged.

        ``False`` if the optimizer terminated on its iteration cap, if the
        information matrix is not positive definite, or if the shape
        parameter is at its lower bound.

    optimizer_success : :class:`bool`
        Whether the optimizer terminated on its tolerance criteria.

    shape_at_bound : :class:`bool`
        Whether the shape parameter ended at the lower bound of -1.

        The likelihood is unbounded below this value, hence the optimizer
        is confined to shapes above. A fit stuck at the bound is no
        estimate of the shape parameter.

    message : :class:`str`
        Reason for :attr:`converged` being ``False``, empty otherwise.

    """

    def __init__(self):
        self.params = GevParams()
        self.std_errors = (np.inf, np.inf, np.inf)
        self.ci95 = ((-np.inf, np.inf), (-np.inf, np.inf), (-np.inf, np.inf))
        self.log_likelihood = -np.inf
        self.n_extremes = 0
        self.converged = False
        self.optimizer_success = False
        self.shape_at_bound = False
        self.message = ""

    def __repr__(self):
        return (
            f"GevFit(params={self.params!r}, "
            f"std_errors={self.std_errors!r}, "
            f"converged={self.converged!r})"
        )

    @property
    def shape(self):
        """Fitted shape parameter, for convenience."""
        return self.params.shape

    @property
    def evl_type(self):
        """
        Type of the extreme value law according to the shape parameter.

        The type is only assigned if the 95% confidence interval of the
        shape parameter excludes zero. Otherwise, the data are compatible
        with the Gumbel type.

        Returns
        -------
        evl_type : :class:`str`
            One of "Weibull", "Gumbel", "Frechet"

        """
        low, high = self.ci95[2]
        if high < 0:
            return "Weibull"
        if low > 0:
            return "Frechet"
        return "Gumbel"

    def set_errors(self, std_errors=None, ci_factor=1.96):
        """
        Set standard errors and the corresponding confidence intervals.

        Parameters
        ----------
        std_errors : :class:`tuple`
            Standard errors of location, scale, and shape

        ci_factor : :class:`float`
            Factor the standard errors are multiplied with to obtain the
            half-width of the confidence intervals.

            Default: 1.96 (95% interval)

        """
        self.std_errors = tuple(float(error) for error in std_errors)
        self.ci95 = tuple(
            (value - ci_factor * error, value + ci_factor * error)
            for value, error in zip(self.params.as_tuple(), self.std_errors)
        )

    def to_dict(self):
        """
        Return the fit result as (JSON-serialisable) dictionary.

        Returns
        -------
        result : :class:`dict`
            Fit result

        """
        names = ("location", "scale", "shape")
        return {
            "params": dict(zip(names, self.params.as_tuple())),
            "std_errors": dict(zip(names, self.std_errors)),
            "ci95": {
                name: list(interval)
                for name, interval in zip(names, self.ci95)
            },
            "log_likelihood": self.log_likelihood,
            "n_extremes": self.n_extremes,
            "converged": self.converged,
            "optimizer_success": self.optimizer_success,
            "shape_at_bound": self.shape_at_bound,
            "message": self.message,
            "evl_type": self.evl_type,
        }
