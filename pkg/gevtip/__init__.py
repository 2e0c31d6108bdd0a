"""gevtip

Detecting tipping points by fitting generalized extreme value distributions
to block maxima and minima of time series.

"""

# Import facade classes and functions
from gevtip.series.entities.series import BlockSpec, TimeSeries  # noqa
from gevtip.gev.entities.gev import GevParams  # noqa
from gevtip.gev.controllers.fitting import gev_fit_mle  # noqa
from gevtip.ensemble.controllers.scanning import run_scan  # noqa
from gevtip.ensemble.controllers.threshold import detect_threshold  # noqa
