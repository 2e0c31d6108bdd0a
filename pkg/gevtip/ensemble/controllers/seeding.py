"""
*Deriving independent seeds from a master seed.*

Each realization of an ensemble scan needs its own random number stream,
and the streams need to be reproducible from a single master seed
regardless of the order the realizations are simulated in. Hence, seeds
are derived by hashing the master seed together with the indices of the
work unit, using the spawn key mechanism of
:class:`numpy.random.SeedSequence`.

The derived seed is a function of the master seed and the keys only:

.. code-block::

    seed = SeedSequence(master_seed, spawn_key=keys).generate_state(1)[0]

Streams obtained for different keys are statistically independent.


Module documentation
====================

"""

import logging

import numpy as np

logger = logging.getLogger(__name__)


def derive_seed(master_seed=0, *keys):
    """
    Derive a seed for a work unit from a master seed.

    Parameters
    ----------
    master_seed : :class:`int`
        Master seed of the scan, non-negative

    keys : :class:`int`
        Indices identifying the work unit, *e.g.* the index of the control
        value and of the realization

    Returns
    -------
    seed : :class:`int`
        Seed for the work unit, a 32-bit unsigned integer


    Examples
    --------
    .. code-block::

        derive_seed(42, 3, 0)  # seed for control value 3, realization 0

    """
    sequence = np.random.SeedSequence(
        int(master_seed), spawn_key=tuple(int(key) for key in keys)
    )
    return int(sequence.generate_state(1)[0])
