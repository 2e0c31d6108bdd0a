"""
*Uniform interface for simulating the toy models.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

Ensemble runs need to simulate realizations without caring about the
model. Hence, each model has a :class:`Simulation` subclass, and the
:class:`SimulationFactory` returns the correct one for a given model
specification.


Module documentation
====================

"""

import logging

from gevtip.models.controllers import kernels
from gevtip.models.controllers.doublewell import simulate_doublewell
from gevtip.models.controllers.shear import simulate_shear
from gevtip.models.entities.models import RunResult

logger = logging.getLogger(__name__)


class Simulation:
    """
    Base class for simulations of a model.

    Attributes
    ----------
    spec : :class:`gevtip.models.entities.models.ModelSpec`
        Model parameters, integration step, and seed

    chunk_size : :class:`int`
        Number of random numbers drawn at once

    Examples
    --------
    Usually, you will not instantiate a simulation directly, but use the
    :class:`SimulationFactory`:

    .. code-block::

        simulation = SimulationFactory().get_simulation(spec=spec)
        result = simulation.run(n_steps=10**6)

    """

    def __init__(self, spec=None, chunk_size=kernels.CHUNK_SIZE):
        self.spec = spec
        self.chunk_size = chunk_size

    def run(self, n_steps=0):
        """
        Simulate one realization.

        Parameters
        ----------
        n_steps : :class:`int`
            Number of integration steps

        Returns
        -------
        result : :class:`gevtip.models.entities.models.RunResult`
            Series of the observable and number of transitions

        Raises
        ------
        ValueError
            Raised if no specification is present.

        """
        if self.spec is None:
            raise ValueError("No model specification to simulate.")
        return self._run(n_steps=int(n_steps))

    def _run(self, n_steps=0):  # noqa
        return RunResult()


class CoupledShearSimulation(Simulation):
    """
    Simulation of the coupled shear model.

    The observable is the energy :math:`E`.
    """

    def _run(self, n_steps=0):
        return simulate_shear(
            spec=self.spec, n_steps=n_steps, chunk_size=self.chunk_size
        )


class DoubleWellSimulation(Simulation):
    """
    Simulation of the double-well model.

    The observable is the position :math:`X`.

    Attributes
    ----------
    record_escapes : :class:`bool`
        Whether to record escapes and reset to the right minimum.

        Default: False

    """

    def __init__(
        self, spec=None, chunk_size=kernels.CHUNK_SIZE, record_escapes=False
    ):
        super().__init__(spec=spec, chunk_size=chunk_size)
        self.record_escapes = record_escapes

    def _run(self, n_steps=0):
        return simulate_doublewell(
            spec=self.spec,
            n_steps=n_steps,
            record_escapes=self.record_escapes,
            chunk_size=self.chunk_size,
        )


class SimulationFactory:
    """
    Factory for getting the simulation matching a model specification.

    Attributes
    ----------
    chunk_size : :class:`int`
        Number of random numbers drawn at once, set in the simulations
        returned


    Examples
    --------
    .. code-block::

        factory = SimulationFactory()
        simulation = factory.get_simulation(spec=DoubleWellSpec())

    This will provide you with a :obj:`DoubleWellSimulation` instance.

    """

    simulations = {
        "shear": "CoupledShearSimulation",
        "doublewell": "DoubleWellSimulation",
    }

    def __init__(self, chunk_size=kernels.CHUNK_SIZE):
        self.chunk_size = chunk_size

    def get_simulation(self, spec=None):
        """
        Obtain a :class:`Simulation` instance for a model specification.

        Parameters
        ----------
        spec : :class:`gevtip.models.entities.models.ModelSpec`
            Model specification

        Returns
        -------
        simulation : :class:`Simulation`
            Simulation instance with the specification set

        Raises
        ------
        ValueError
            Raised if no simulation exists for the model.

        """
        try:
            mode = self.simulations[spec.name]
        except (KeyError, AttributeError) as exc:
            raise ValueError(f"No simulation for model {spec!r}") from exc
        return globals()[mode](spec=spec, chunk_size=self.chunk_size)
