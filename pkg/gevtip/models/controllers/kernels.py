"""
*Compiled Euler--Maruyama inner loops.*

Realizations of the toy models consist of :math:`10^6` to :math:`10^9`
integration steps, far too many for loops in pure Python. Hence, the inner
loops are compiled using :func:`numba.njit`.

The kernels operate on chunks of standard normal random numbers and carry
the state of the integration from one chunk to the next. Hence, the
results do not depend on the chunk size used. Each kernel returns the index
of the step the overflow guard was hit at, or -1.


Module documentation
====================

"""

import logging
import math

import numba
import numpy as np

logger = logging.getLogger(__name__)

OVERFLOW_GUARD = 1e6
"""Absolute value of a state variable regarded as numerical blow-up."""

CHUNK_SIZE = 2**20
"""Number of random numbers drawn and processed at once."""


@numba.njit(cache=True)
def shear_steps(
    x, y, mu, nu, noise_u, dt, threshold, x_reset, y_reset, normals, energies
):  # pragma: no cover
    """
    Integrate the coupled shear model over one chunk of steps.

    Records the energy of every step (before a possible reset) into
    ``energies``. Returns the state, the number of resets, and the index of
    the step the overflow guard was hit at (-1 if not hit).

    """
    sqrt_dt = math.sqrt(dt)
    n_resets = 0
    for step in range(normals.size):
        increment = sqrt_dt * normals[step]
        x_new = x + dt * (-mu * x + y * y) - noise_u * x * increment
        y_new = y + dt * (-nu * y + x - x * y)
        x = x_new
        y = y_new
        if not (abs(x) <= OVERFLOW_GUARD and abs(y) <= OVERFLOW_GUARD):
            return x, y, n_resets, step
        energy = 0.5 * (x * x + y * y)
        energies[step] = energy
        if energy < threshold:
            n_resets += 1
            x = x_reset
            y = y_reset
    return x, y, n_resets, -1


@numba.njit(cache=True)
def doublewell_steps(
    x,
    steps_since_reset,
    a,
    lambda_,
    epsilon,
    dt,
    x_saddle,
    x_reset,
    reset,
    normals,
    values,
    escape_steps,
):  # pragma: no cover
    """
    Integrate the double-well model over one chunk of steps.

    Records :math:`X` of every step (before a possible reset) into
    ``values``. Crossings of the saddle from above are counted. If
    ``reset`` is true, the number of steps since the last reset is written
    to ``escape_steps`` for each crossing, and the state is reset.

    Returns the state, the steps since the last reset, the number of
    crossings, and the index of the step the overflow guard was hit at (-1
    if not hit).

    """
    sqrt_dt = math.sqrt(dt)
    n_crossings = 0
    for step in range(normals.size):
        drift = -x * x * x + 2.0 * a * x - lambda_
        x_new = x + dt * drift + epsilon * sqrt_dt * normals[step]
        steps_since_reset += 1
        if not abs(x_new) <= OVERFLOW_GUARD:
            return x_new, steps_since_reset, n_crossings, step
        values[step] = x_new
        if x >= x_saddle and x_new < x_saddle:
            if reset:
                escape_steps[n_crossings] = steps_since_reset
                x_new = x_reset
                steps_since_reset = 0
            n_crossings += 1
        x = x_new
    return x, steps_since_reset, n_crossings, -1


def standard_normal_chunks(generator=None, n_steps=0, chunk_size=CHUNK_SIZE):
    """
    Draw standard normal random numbers in chunks.

    Drawing in chunks of any size yields the same sequence of numbers.

    Parameters
    ----------
    generator : :class:`numpy.random.Generator`
        Random number generator

    n_steps : :class:`int`
        Total number of random numbers

    chunk_size : :class:`int`
        Maximum number of random numbers per chunk

    Yields
    ------
    offset : :class:`int`
        Index of the first number of the chunk

    normals : :class:`numpy.ndarray`
        Chunk of random numbers

    """
    offset = 0
    while offset < n_steps:
        size = min(chunk_size, n_steps - offset)
        yield offset, generator.standard_normal(size)
        offset += size


def make_generator(seed=0):
    """
    Create the random number generator for a given seed.

    Parameters
    ----------
    seed : :class:`int`
        Seed

    Returns
    -------
    generator : :class:`numpy.random.Generator`
        PCG64 generator seeded via :class:`numpy.random.SeedSequence`

    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
