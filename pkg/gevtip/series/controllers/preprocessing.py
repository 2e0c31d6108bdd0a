"""
*Changing (preprocessing) series during import.*

Series as read from files often need to be adjusted before analysis, as
the sampling of direct numerical simulations or experiments is typically
much finer than the correlation time of the observable. Preprocessing
steps can be hooked into any :class:`SeriesImporter
<gevtip.series.entities.series.SeriesImporter>` and inherit from
:class:`SeriesPreprocessingStep
<gevtip.series.entities.series.SeriesPreprocessingStep>`.


Overview
========

The following preprocessing steps have been implemented so far:

* :class:`Subsample`

  Keep every n-th sample of a series.


Module documentation
====================

"""

import logging

from gevtip.exceptions import ParameterError
from gevtip.series.entities.series import SeriesPreprocessingStep

logger = logging.getLogger(__name__)


class Subsample(SeriesPreprocessingStep):
    """
    Keep every n-th sample of a series.

    The sampling step of the returned series is multiplied by the stride
    accordingly. Note that the bin length of block extremes is a number of
    samples and hence refers to the subsampled series.


    Attributes
    ----------
    stride : :class:`int`
        Keep every ``stride``-th sample, starting with the first one.

        Default: 1


    Examples
    --------
    Subsampling a series is as simple as:

    .. code-block::

        task = Subsample(stride=10)
        series = task.process(series)

    """

    def __init__(self, stride=1):
        super().__init__()
        self.stride = stride

    def _process(self):
        if int(self.stride) != self.stride or self.stride < 1:
            raise ParameterError(
                f"Stride needs to be a positive integer: {self.stride!r}"
            )
        stride = int(self.stride)
        series = self.series.copy()
        series.values = self.series.values[::stride]
        series.dt = self.series.dt * stride
        logger.debug("Subsampled series with stride %s", stride)
        return series
