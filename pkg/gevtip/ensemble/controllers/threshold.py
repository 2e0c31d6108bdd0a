r"""
*Locating the zero crossing of the shape parameter of the minima.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

The tipping point is estimated as the control value where the averaged
shape parameter :math:`\kappa` of the minima changes sign. Between two
consecutive scan points with opposite signs, the crossing is obtained by
linear interpolation. A scan point with :math:`\kappa` exactly zero counts
as a crossing at that point if the nearest non-zero points on either side
have opposite signs. A zero touched from one side is no crossing.

Only points with at least one successful fit of the minima take part.
All crossings are reported, the first one in scan direction being the
primary one.


Uncertainty
===========

Each bracketing :math:`\kappa` mean is shifted by plus/minus its ensemble
standard deviation, and the interpolated root recomputed for all four
combinations. Roots are clipped to the bracket. The uncertainty is the
half-width of the interval swept by the root. If the shifted values
reverse the slope of the interpolant, or a standard deviation is not
finite, the interval is the entire bracket. If both standard deviations
are zero, the uncertainty falls back to half the bracket width.


Module documentation
====================

"""

import itertools
import logging

import numpy as np

from gevtip.ensemble.entities.scan import ThresholdEstimate
from gevtip.exceptions import NoCrossingError

logger = logging.getLogger(__name__)


def _kappa_range(points):
    if not points:
        return None
    kappas = [point.kappa_min_mean for point in points]
    return float(np.min(kappas)), float(np.max(kappas))


def _interpolate(lower, upper, kappa_lower, kappa_upper):
    return lower - kappa_lower * (upper - lower) / (kappa_upper - kappa_lower)


def _root_interval(first, second):
    lower, upper = first.control_value, second.control_value
    bracket = (min(lower, upper), max(lower, upper))
    stds = (first.kappa_min_std, second.kappa_min_std)
    if not np.all(np.isfinite(stds)):
        return bracket
    rising = second.kappa_min_mean > first.kappa_min_mean
    roots = []
    for kappa_lower, kappa_upper in itertools.product(
        (first.kappa_min_mean - stds[0], first.kappa_min_mean + stds[0]),
        (second.kappa_min_mean - stds[1], second.kappa_min_mean + stds[1]),
    ):
        slope = kappa_upper - kappa_lower
        if slope == 0 or (slope > 0) != rising:
            return bracket
        root = _interpolate(lower, upper, kappa_lower, kappa_upper)
        roots.append(float(np.clip(root, *bracket)))
    return min(roots), max(roots)


def _uncertainty(first, second):
    low, high = _root_interval(first, second)
    if high > low:
        return (high - low) / 2
    return abs(second.control_value - first.control_value) / 2


def _crossings(points):
    signed = [
        index
        for index, point in enumerate(points)
        if point.kappa_min_mean != 0
    ]
    crossings = []
    for index, following_index in zip(signed, signed[1:]):
        point, following = points[index], points[following_index]
        if point.kappa_min_mean * following.kappa_min_mean > 0:
            continue
        if following_index > index + 1:
            root = points[index + 1].control_value
        else:
            root = _interpolate(
                point.control_value,
                following.control_value,
                point.kappa_min_mean,
                following.kappa_min_mean,
            )
        crossings.append((float(root), (point, following)))
    return crossings


def detect_threshold(scan=None):
    """
    Estimate the control value where the shape parameter of the minima
    crosses zero.

    Parameters
    ----------
    scan : :class:`list`
        :class:`gevtip.ensemble.entities.scan.ScanPoint` objects in scan
        direction

    Returns
    -------
    threshold : :class:`gevtip.ensemble.entities.scan.ThresholdEstimate`
        Primary crossing with uncertainty, the bracketing points, and all
        crossings

    Raises
    ------
    NoCrossingError
        Raised if fewer than two points have successful fits of the minima,
        or if the shape parameter does not change sign. Carries the range
        of the shape parameter of the minima over the scan.


    Examples
    --------
    For three points with :math:`\\kappa = -0.3, -0.1, 0.3` at control
    values 1, 2, 3, the crossing is at 2.25:

    .. code-block::

        threshold = detect_threshold(scan)
        threshold.control_critical  # 2.25

    """
    points = [point for point in (scan or []) if point.has_minima_fits]
    if len(points) < 2:
        message = (
            f"Need at least two points with fits of the minima, "
            f"got {len(points)}"
        )
        logger.warning(message)
        raise NoCrossingError(message, kappa_range=_kappa_range(points))
    crossings = _crossings(points)
    if not crossings:
        kappa_range = _kappa_range(points)
        message = (
            f"Shape parameter of minima does not change sign: {kappa_range}"
        )
        logger.info(message)
        raise NoCrossingError(message, kappa_range=kappa_range)
    control_critical, bracket = crossings[0]
    threshold = ThresholdEstimate()
    threshold.control_critical = control_critical
    threshold.uncertainty = float(_uncertainty(*bracket))
    threshold.bracketing_points = bracket
    threshold.all_crossings = [crossing[0] for crossing in crossings]
    if len(crossings) > 1:
        logger.info(
            "%s crossings found, primary at %s",
            len(crossings),
            control_critical,
        )
    return threshold
