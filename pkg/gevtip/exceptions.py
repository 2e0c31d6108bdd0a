"""
*Exceptions raised throughout the gevtip package.*

All exceptions derive from built-in exception types, hence code catching,
*e.g.*, :class:`ValueError` will continue to work. The distinct subclasses
allow callers (and the command-line interface) to tell apart the different
reasons why an operation could not be carried out.

Some exceptions carry additional information as attributes, such as the
line number of a file or the step of a simulation. The command-line
interface includes these attributes in its machine-readable error output.


Module documentation
====================

"""


class InsufficientDataError(ValueError):
    """
    Too few data points for the requested operation.

    Raised, *e.g.*, if fewer extremes than the minimum sample size are
    available for fitting, if no complete bin remains after burn-in removal,
    or if fewer than two samples are available for bulk statistics.

    """


class EmptySeriesError(InsufficientDataError):
    """Series without any values, typically after ingesting a file."""


class DegenerateSampleError(ValueError):
    """Sample with zero spread, *i.e.* all values equal."""


class NonFiniteValueError(ValueError):
    """
    NaN or infinite value encountered in a series.

    Attributes
    ----------
    line : :class:`int`
        Line number (1-based) of the offending value in the file read.

        ``None`` if the values were not read from a file.

    """

    def __init__(self, message="", line=None):
        super().__init__(message)
        self.line = line


class ParseError(ValueError):
    """
    Row of a file that could not be parsed.

    Attributes
    ----------
    line : :class:`int`
        Line number (1-based) of the offending row.

    """

    def __init__(self, message="", line=None):
        super().__init__(message)
        self.line = line


class ParameterError(ValueError):
    """Invalid (model or distribution) parameters."""


class SimulationBlowUpError(ArithmeticError):
    """
    Numerical blow-up of a simulation.

    Attributes
    ----------
    step : :class:`int`
        Index of the integration step the overflow guard was hit at.

    """

    def __init__(self, message="", step=None):
        super().__init__(message)
        self.step = step


class NoCrossingError(ValueError):
    """
    No sign change of the shape parameter of the minima.

    The absence of a crossing is a valid finding ("far from threshold").
    Hence, the range of the shape parameters found is reported.

    Attributes
    ----------
    kappa_range : :class:`tuple`
        Minimum and maximum of the mean shape parameters of the minima.

        ``None`` if no valid shape parameter was available at all.

    """

    def __init__(self, message="", kappa_range=None):
        super().__init__(message)
        self.kappa_range = kappa_range


class ConfigError(ValueError):
    """Invalid run configuration, *e.g.* unknown keys."""
