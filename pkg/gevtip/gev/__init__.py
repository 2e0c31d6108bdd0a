"""
*Generalized extreme value distributions and their fitting.*

The :mod:`gev <gevtip.gev>` subpackage is the statistical core of the
package. It provides the parameter and fit result data structures, the
distribution functions, and maximum likelihood fitting including standard
errors and confidence intervals of the fitted parameters.

Everything in this subpackage is independent of where the extremes come
from. Selecting extremes from time series is the task of the :mod:`series
<gevtip.series>` subpackage.

"""
