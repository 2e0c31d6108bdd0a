r"""
*Double-well Langevin model.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

The model describes overdamped motion in the tilted double-well potential

.. math::

    V(X) = \frac{1}{4}X^4 - aX^2 + \lambda X

subject to additive noise of amplitude :math:`\epsilon`,
:math:`\mathrm{d}X = -V'(X)\,\mathrm{d}t + \epsilon\,\mathrm{d}W`.


Critical points
===============

The critical points of the potential are the roots of
:math:`V'(X) = X^3 - 2aX + \lambda`. Three real roots exist if and only if
the discriminant :math:`32a^3 - 27\lambda^2` is positive: two minima
:math:`\bar X_1 < 0 < \bar X_2` (for small tilt) and the saddle
:math:`\tilde X` in between. The roots are computed using the trigonometric
solution of the cubic and polished by Newton iterations.

The barrier height of a well is :math:`\Delta V = V(\tilde X) - V(\bar X)`.
For small noise, the mean time to escape from a well follows Kramers' law,

.. math::

    \tau \approx \frac{2\pi}{\sqrt{V''(\bar X)\,|V''(\tilde X)|}}
    \exp\left(\frac{2\Delta V}{\epsilon^2}\right).


Escapes
=======

Starting from :math:`\bar X_2`, an escape is the first crossing of the
saddle from above. If escapes are recorded, the time since the last reset
is logged and the state is reset to :math:`\bar X_2`. Without recording,
the dynamics is not altered, but crossings are still counted. For runs
meant to stay confined to the right well, a nonzero count signals that the
confinement condition is violated.

Note that the mean time to the first crossing of the saddle is about half
of the Kramers time, as a particle at the saddle falls back into the
original well with probability one half.


Module documentation
====================

"""

import logging

import numpy as np

from gevtip.exceptions import ParameterError, SimulationBlowUpError
from gevtip.models.controllers import kernels
from gevtip.models.entities.models import RunResult
from gevtip.series.entities.series import TimeSeries

logger = logging.getLogger(__name__)

WELLS = ("left", "right")


def potential(x=0.0, a=1.0, lambda_=0.0):
    """
    Double-well potential.

    Parameters
    ----------
    x : :class:`float` | :class:`numpy.ndarray`
        Position(s)

    a : :class:`float`
        Depth parameter

    lambda_ : :class:`float`
        Tilt

    Returns
    -------
    potential : :class:`float` | :class:`numpy.ndarray`
        :math:`x^4/4 - ax^2 + \\lambda x`

    """
    return x**4 / 4 - a * x**2 + lambda_ * x


def potential_curvature(x=0.0, a=1.0):
    """
    Second derivative of the double-well potential.

    Parameters
    ----------
    x : :class:`float` | :class:`numpy.ndarray`
        Position(s)

    a : :class:`float`
        Depth parameter

    Returns
    -------
    curvature : :class:`float` | :class:`numpy.ndarray`
        :math:`3x^2 - 2a`

    """
    return 3 * x**2 - 2 * a


def doublewell_critical_points(a=1.0, lambda_=0.0):
    """
    Critical points of the double-well potential.

    Parameters
    ----------
    a : :class:`float`
        Depth parameter

    lambda_ : :class:`float`
        Tilt

    Returns
    -------
    critical_points : :class:`dict`
        Positions of the left minimum ("x1"), the saddle ("x_saddle"), and
        the right minimum ("x2"), in ascending order.

    Raises
    ------
    ParameterError
        Raised if the potential has fewer than three critical points.


    Examples
    --------
    .. code-block::

        doublewell_critical_points(a=1, lambda_=0)
        # {'x1': -1.414..., 'x_saddle': 0.0, 'x2': 1.414...}

    """
    if not (a > 0 and 32 * a**3 - 27 * lambda_**2 > 0):
        raise ParameterError(
            f"Potential with a={a}, lambda={lambda_} has fewer than three "
            f"critical points"
        )
    # x^3 + p x + q with p = -2a, q = lambda
    p, q = -2.0 * a, float(lambda_)
    amplitude = 2 * np.sqrt(-p / 3)
    argument = np.clip(3 * q / (2 * p) * np.sqrt(-3 / p), -1.0, 1.0)
    angle = np.arccos(argument) / 3
    roots = amplitude * np.cos(angle - 2 * np.pi * np.arange(3) / 3)
    for _ in range(3):
        roots = roots - (roots**3 + p * roots + q) / (3 * roots**2 + p)
    x1, x_saddle, x2 = np.sort(roots)
    return {"x1": float(x1), "x_saddle": float(x_saddle), "x2": float(x2)}


def _well_position(points, from_well):
    if from_well not in WELLS:
        raise ParameterError(
            f"Unknown well {from_well!r}, expected one of {WELLS}"
        )
    return points["x1"] if from_well == "left" else points["x2"]


def barrier_height(a=1.0, lambda_=0.0, from_well="right"):
    """
    Height of the potential barrier seen from one of the wells.

    Parameters
    ----------
    a : :class:`float`
        Depth parameter

    lambda_ : :class:`float`
        Tilt

    from_well : :class:`str`
        Well to escape from: "left" or "right"

    Returns
    -------
    barrier : :class:`float`
        :math:`V(\\tilde X) - V(\\bar X)`, strictly positive

    Raises
    ------
    ParameterError
        Raised if the potential has fewer than three critical points or the
        well is unknown.

    """
    points = doublewell_critical_points(a, lambda_)
    well = _well_position(points, from_well)
    saddle = potential(points["x_saddle"], a, lambda_)
    return float(saddle - potential(well, a, lambda_))


def kramers_escape_time(a=1.0, lambda_=0.0, epsilon=0.1, from_well="right"):
    """
    Mean escape time from a well according to Kramers' law.

    Parameters
    ----------
    a : :class:`float`
        Depth parameter

    lambda_ : :class:`float`
        Tilt

    epsilon : :class:`float`
        Noise amplitude, positive

    from_well : :class:`str`
        Well to escape from: "left" or "right"

    Returns
    -------
    time : :class:`float`
        :math:`2\\pi / \\sqrt{V''(\\bar X) |V''(\\tilde X)|}
        \\exp(2\\Delta V/\\epsilon^2)`

    """
    if not epsilon > 0:
        raise ParameterError("Noise amplitude needs to be positive")
    points = doublewell_critical_points(a, lambda_)
    well = _well_position(points, from_well)
    prefactor = (
        2
        * np.pi
        / np.sqrt(
            potential_curvature(well, a)
            * abs(potential_curvature(points["x_saddle"], a))
        )
    )
    barrier = barrier_height(a, lambda_, from_well)
    return float(prefactor * np.exp(2 * barrier / epsilon**2))


class DoubleWellIntegrator:
    """
    Stateful Euler--Maruyama integrator of the double-well model.

    The integrator keeps the state (position, steps since the last reset,
    random number generator) between calls. Hence, long runs can be
    performed piecewise, *e.g.* to accumulate escape statistics without
    storing the series.

    Attributes
    ----------
    spec : :class:`gevtip.models.entities.models.DoubleWellSpec`
        Model parameters, integration step, and seed

    x : :class:`float`
        Current position, initially the right minimum :math:`\\bar X_2`

    steps : :class:`int`
        Number of steps integrated so far

    chunk_size : :class:`int`
        Number of random numbers drawn at once.

        Affects memory consumption only, not the results.


    Examples
    --------
    Collecting escape times is done like this:

    .. code-block::

        integrator = DoubleWellIntegrator(DoubleWellSpec(epsilon=0.5))
        escape_times = integrator.collect_escapes(n_escapes=50)

    """

    def __init__(self, spec=None, chunk_size=kernels.CHUNK_SIZE):
        spec.validate()
        self.spec = spec
        self.chunk_size = chunk_size
        points = doublewell_critical_points(spec.a, spec.lambda_)
        self._x_saddle = points["x_saddle"]
        self._x_reset = points["x2"]
        self.x = points["x2"]
        self.steps = 0
        self._steps_since_reset = 0
        self._generator = kernels.make_generator(spec.seed)

    def advance(self, n_steps=0, record_escapes=False, store_values=True):
        """
        Integrate a number of steps.

        Parameters
        ----------
        n_steps : :class:`int`
            Number of integration steps

        record_escapes : :class:`bool`
            Whether to record escapes and reset to the right minimum

        store_values : :class:`bool`
            Whether to return the positions of all steps

        Returns
        -------
        values : :class:`numpy.ndarray`
            Positions, ``None`` if not stored

        n_crossings : :class:`int`
            Number of crossings of the saddle from above

        escape_times : :class:`numpy.ndarray`
            Times between resets and escapes, empty if not recorded

        Raises
        ------
        SimulationBlowUpError
            Raised if the position exceeds the overflow guard.

        """
        n_steps = int(n_steps)
        if store_values:
            values, scratch = np.empty(n_steps), None
        else:
            values, scratch = None, np.empty(min(n_steps, self.chunk_size))
        escape_steps = []
        n_crossings = 0
        for offset, normals in kernels.standard_normal_chunks(
            self._generator, n_steps, self.chunk_size
        ):
            if store_values:
                target = values[offset : offset + normals.size]
            else:
                target = scratch[: normals.size]
            buffer = np.empty(
                normals.size if record_escapes else 0, dtype=np.int64
            )
            self.x, self._steps_since_reset, crossings, blow_up = (
                kernels.doublewell_steps(
                    float(self.x),
                    int(self._steps_since_reset),
                    float(self.spec.a),
                    float(self.spec.lambda_),
                    float(self.spec.epsilon),
                    float(self.spec.dt),
                    float(self._x_saddle),
                    float(self._x_reset),
                    bool(record_escapes),
                    normals,
                    target,
                    buffer,
                )
            )
            if blow_up >= 0:
                step = self.steps + offset + blow_up
                message = f"Simulation blew up at step {step}"
                logger.error(message)
                raise SimulationBlowUpError(message, step=step)
            n_crossings += crossings
            if record_escapes:
                escape_steps.append(buffer[:crossings].copy())
        self.steps += n_steps
        escape_times = (
            np.concatenate(escape_steps) * self.spec.dt
            if escape_steps
            else np.zeros(0)
        )
        return values, n_crossings, escape_times

    def collect_escapes(self, n_escapes=1, max_steps=10**9):
        """
        Integrate until a number of escapes has been recorded.

        Parameters
        ----------
        n_escapes : :class:`int`
            Number of escapes to record

        max_steps : :class:`int`
            Maximum number of steps to integrate

        Returns
        -------
        escape_times : :class:`numpy.ndarray`
            The first ``n_escapes`` escape times.

            Fewer if the step limit was reached before.

        """
        collected = []
        n_collected = 0
        while n_collected < n_escapes and self.steps < max_steps:
            n_steps = min(self.chunk_size, max_steps - self.steps)
            _, _, escape_times = self.advance(
                n_steps, record_escapes=True, store_values=False
            )
            collected.append(escape_times)
            n_collected += escape_times.size
        if n_collected < n_escapes:
            logger.warning(
                "Only %s of %s escapes within %s steps",
                n_collected,
                n_escapes,
                max_steps,
            )
        if not collected:
            return np.zeros(0)
        return np.concatenate(collected)[:n_escapes]


def simulate_doublewell(
    spec=None,
    n_steps=0,
    record_escapes=False,
    chunk_size=kernels.CHUNK_SIZE,
):
    """
    Simulate one realization of the double-well model.

    The realization starts at the right minimum :math:`\\bar X_2`.

    Parameters
    ----------
    spec : :class:`gevtip.models.entities.models.DoubleWellSpec`
        Model parameters, integration step, and seed

    n_steps : :class:`int`
        Number of integration steps

    record_escapes : :class:`bool`
        Whether to record escapes and reset to the right minimum

    chunk_size : :class:`int`
        Number of random numbers drawn at once.

        Affects memory consumption only, not the results.

    Returns
    -------
    result : :class:`gevtip.models.entities.models.RunResult`
        Series of :math:`X`, number of crossings of the saddle from above,
        and escape times (if recorded)

    Raises
    ------
    ParameterError
        Raised if the specification is invalid.

    SimulationBlowUpError
        Raised if the position exceeds the overflow guard.

    """
    integrator = DoubleWellIntegrator(spec=spec, chunk_size=chunk_size)
    values, n_crossings, escape_times = integrator.advance(
        n_steps, record_escapes=record_escapes
    )
    logger.debug(
        "Double well lambda=%s, seed=%s: %s crossings",
        spec.lambda_,
        spec.seed,
        n_crossings,
    )
    series = TimeSeries(
        values=values, dt=spec.dt, label="X", control_value=spec.lambda_
    )
    return RunResult(
        series=series, n_transitions=n_crossings, escape_times=escape_times
    )
