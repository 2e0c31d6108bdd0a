r"""
*Coupled shear model with multiplicative noise.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

The model consists of two variables, :math:`X` and :math:`Y`, coupled by
energy-conserving nonlinearities:

.. math::

    \mathrm{d}X/\mathrm{d}t &= -(\mu + u\xi(t)) X + Y^2 \\
    \mathrm{d}Y/\mathrm{d}t &= -\nu Y + X - XY

The nonlinear terms :math:`(Y^2, -XY)` do not change the energy
:math:`E = (X^2 + Y^2)/2`, as :math:`X Y^2 + Y (-XY) = 0`. The noise is
multiplicative and hence leaves the trivial (laminar) state invariant.


Fixed points
============

Besides the trivial fixed point :math:`X = Y = 0`, two nontrivial fixed
points exist for :math:`\mu\nu < 1/4`, with :math:`Y` the roots of
:math:`Y^2 - Y + \mu\nu = 0` and :math:`X = Y^2/\mu`. The one with larger
:math:`Y` is stable, the other one is a saddle. At :math:`\mu\nu = 1/4`,
both merge in a saddle-node bifurcation.


Integration
===========

The model is integrated with the Euler--Maruyama scheme in the Ito
interpretation, starting from the stable nontrivial fixed point:

.. math::

    X &\leftarrow X + \Delta t (-\mu X + Y^2) - u X \Delta W \\
    Y &\leftarrow Y + \Delta t (-\nu Y + X - XY)

with :math:`\Delta W \sim \mathcal{N}(0, \Delta t)`. Whenever the energy
drops below the laminar threshold, a transition is counted and the state is
reset to the stable fixed point. The energy recorded for this step is the
one before the reset.

.. note::
    Interpreting the noise in the Stratonovich sense instead would add
    :math:`+u^2 X/2` to the Ito drift of :math:`X`. This is not
    implemented.


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


def shear_fixed_points(mu=1.0, nu=0.2475):
    """
    Fixed points of the coupled shear model without noise.

    Parameters
    ----------
    mu : :class:`float`
        Damping of :math:`X`

    nu : :class:`float`
        Damping of :math:`Y`

    Returns
    -------
    fixed_points : :class:`dict`
        Fixed points (X, Y) with keys "stable", "unstable", and "trivial".

    Raises
    ------
    ParameterError
        Raised if no nontrivial fixed points exist (:math:`\\mu\\nu \\ge
        1/4`) or the damping parameters are not positive.


    Examples
    --------
    .. code-block::

        shear_fixed_points(mu=1, nu=0.2475)["stable"]  # (0.3025, 0.55)

    """
    if not (mu > 0 and nu > 0):
        raise ParameterError("Damping parameters need to be positive")
    product = mu * nu
    if product >= 0.25:
        raise ParameterError(
            f"No nontrivial fixed points for mu*nu = {product} >= 1/4"
        )
    y_stable = (1 + np.sqrt(1 - 4 * product)) / 2
    # Vieta: product of the roots is mu*nu
    y_unstable = product / y_stable
    return {
        "stable": (y_stable**2 / mu, y_stable),
        "unstable": (y_unstable**2 / mu, y_unstable),
        "trivial": (0.0, 0.0),
    }


def shear_drift(x=0.0, y=0.0, mu=1.0, nu=0.2475):
    """
    Deterministic drift of the coupled shear model, decomposed.

    Parameters
    ----------
    x : :class:`float` | :class:`numpy.ndarray`
        State variable :math:`X`

    y : :class:`float` | :class:`numpy.ndarray`
        State variable :math:`Y`

    mu : :class:`float`
        Damping of :math:`X`

    nu : :class:`float`
        Damping of :math:`Y`

    Returns
    -------
    linear : :class:`tuple`
        Linear part of the drift of :math:`X` and :math:`Y`

    nonlinear : :class:`tuple`
        Nonlinear (energy-conserving) part of the drift of :math:`X` and
        :math:`Y`

    """
    linear = (-mu * x, -nu * y + x)
    nonlinear = (y * y, -x * y)
    return linear, nonlinear


def simulate_shear(spec=None, n_steps=0, chunk_size=kernels.CHUNK_SIZE):
    """
    Simulate one realization of the coupled shear model.

    Parameters
    ----------
    spec : :class:`gevtip.models.entities.models.CoupledShearSpec`
        Model parameters, integration step, and seed

    n_steps : :class:`int`
        Number of integration steps

    chunk_size : :class:`int`
        Number of random numbers drawn at once.

        Affects memory consumption only, not the results.

    Returns
    -------
    result : :class:`gevtip.models.entities.models.RunResult`
        Energy series and number of transitions to the laminar state

    Raises
    ------
    ParameterError
        Raised if the specification is invalid.

    SimulationBlowUpError
        Raised if a state variable exceeds the overflow guard.

    """
    spec.validate()
    x_stable, y_stable = shear_fixed_points(spec.mu, spec.nu)["stable"]
    x, y = float(x_stable), float(y_stable)
    energies = np.empty(int(n_steps))
    n_transitions = 0
    generator = kernels.make_generator(spec.seed)
    for offset, normals in kernels.standard_normal_chunks(
        generator, int(n_steps), chunk_size
    ):
        x, y, n_resets, blow_up = kernels.shear_steps(
            x,
            y,
            float(spec.mu),
            float(spec.nu),
            float(spec.noise_u),
            float(spec.dt),
            float(spec.laminar_threshold),
            float(x_stable),
            float(y_stable),
            normals,
            energies[offset : offset + normals.size],
        )
        n_transitions += n_resets
        if blow_up >= 0:
            message = f"Simulation blew up at step {offset + blow_up}"
            logger.error(message)
            raise SimulationBlowUpError(message, step=offset + blow_up)
    logger.debug(
        "Shear model u=%s, seed=%s: %s transitions",
        spec.noise_u,
        spec.seed,
        n_transitions,
    )
    series = TimeSeries(
        values=energies, dt=spec.dt, label="E", control_value=spec.noise_u
    )
    return RunResult(series=series, n_transitions=n_transitions)
