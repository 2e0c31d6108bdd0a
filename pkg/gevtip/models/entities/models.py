r"""
*Specifications of the toy models and results of their simulation.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

Each model is fully described by a specification object holding its
parameters, the integration step, and the seed of the random number
generator. Hence, a specification determines a realization bitwise.

Two models are available:

* :class:`CoupledShearSpec`: a two-variable model of a shear flow with
  multiplicative noise of amplitude :math:`u` on the damping of :math:`X`,

  .. math::

      \mathrm{d}X/\mathrm{d}t &= -(\mu + u\xi(t)) X + Y^2 \\
      \mathrm{d}Y/\mathrm{d}t &= -\nu Y + X - XY

  The trivial (laminar) state :math:`X = Y = 0` competes with two
  nontrivial fixed points existing for :math:`\mu\nu < 1/4`. The observable
  is the energy :math:`E = (X^2 + Y^2)/2`. The control parameter is the noise
  amplitude :math:`u`.

* :class:`DoubleWellSpec`: overdamped Langevin dynamics in the tilted
  double-well potential :math:`V(X) = X^4/4 - aX^2 + \lambda X`,

  .. math::

      \mathrm{d}X = -V'(X)\,\mathrm{d}t + \epsilon\,\mathrm{d}W

  The observable is :math:`X` itself. The control parameter is the tilt
  :math:`\lambda`, called ``lambda_`` in Python (``lambda`` being a keyword)
  and ``lambda`` in dictionaries and configuration files.


Module documentation
====================

"""

import copy
import logging

import numpy as np

from gevtip.exceptions import ConfigError, ParameterError

logger = logging.getLogger(__name__)


class ModelSpec:
    """
    Base class for model specifications.

    The class is not meant to be used directly, use one of its subclasses
    instead.

    Attributes
    ----------
    dt : :class:`float`
        Integration step

        Default: 0.01

    seed : :class:`int`
        Seed of the random number generator

        Default: 0

    name : :class:`str`
        Name of the model, used as ``model`` key in dictionaries.

        Class attribute.

    control_parameter : :class:`str`
        Name of the attribute acting as control parameter of scans.

        Class attribute.

    """

    name = ""
    control_parameter = ""
    _key_mapping = {}

    def __init__(self, dt=0.01, seed=0):
        self.dt = dt
        self.seed = seed

    def __repr__(self):
        arguments = ", ".join(
            f"{key}={value!r}" for key, value in self._parameters().items()
        )
        return f"{self.__class__.__name__}({arguments})"

    def __eq__(self, other):
        if not isinstance(other, self.__class__):
            return NotImplemented
        return self._parameters() == other._parameters()

    def __hash__(self):
        return hash(tuple(self._parameters().items()))

    def _parameters(self):
        return {
            key: value
            for key, value in self.__dict__.items()
            if not key.startswith("_")
        }

    @property
    def control_value(self):
        """Current value of the control parameter."""
        return getattr(self, self.control_parameter)

    def copy(self, **changes):
        """
        Return a copy of the specification, optionally with changes.

        Parameters
        ----------
        changes
            Attributes to change in the copy

        Returns
        -------
        spec : :class:`ModelSpec`
            Copy of the specification

        Raises
        ------
        AttributeError
            Raised if a change refers to an unknown attribute.

        """
        spec = copy.copy(self)
        for attribute, value in changes.items():
            if attribute not in self._parameters():
                raise AttributeError(f"Unknown attribute {attribute!r}")
            setattr(spec, attribute, value)
        return spec

    def with_control_value(self, value=None):
        """
        Return a copy with the control parameter set to the given value.

        Parameters
        ----------
        value : :class:`float`
            Value of the control parameter

        Returns
        -------
        spec : :class:`ModelSpec`
            Copy of the specification

        """
        return self.copy(**{self.control_parameter: value})

    def validate(self):
        """
        Check the specification for validity.

        Raises
        ------
        ParameterError
            Raised if parameters are invalid.

        """
        if not self.dt > 0:
            raise ParameterError(
                f"Integration step needs to be positive: {self.dt!r}"
            )
        if int(self.seed) != self.seed or self.seed < 0:
            raise ParameterError(
                f"Seed needs to be a non-negative integer: {self.seed!r}"
            )
        self._validate()

    def _validate(self):
        pass

    def as_dict(self):
        """
        Return the specification as dictionary, including the model name.

        Returns
        -------
        spec : :class:`dict`
            Model name and parameters, with keys as used in configuration
            files.

        """
        result = {"model": self.name}
        for key, value in self._parameters().items():
            result[self._key_mapping.get(key, key)] = value
        return result

    @classmethod
    def from_dict(cls, dictionary=None):
        """
        Create a specification from a dictionary.

        Parameters
        ----------
        dictionary : :class:`dict`
            Parameters, with keys as used in configuration files.

            The key ``model``, if present, needs to match :attr:`name`.

        Returns
        -------
        spec : :class:`ModelSpec`
            Specification

        Raises
        ------
        ConfigError
            Raised for unknown keys or a mismatching model name.

        """
        spec = cls()
        reverse_mapping = {
            value: key for key, value in cls._key_mapping.items()
        }
        for key, value in (dictionary or {}).items():
            if key == "model":
                if value != cls.name:
                    raise ConfigError(
                        f"Model {value!r} does not match {cls.name!r}"
                    )
                continue
            attribute = reverse_mapping.get(key, key)
            if attribute not in spec._parameters():
                raise ConfigError(f"Unknown key {key!r} for model {cls.name}")
            setattr(spec, attribute, value)
        return spec


class CoupledShearSpec(ModelSpec):
    """
    Specification of the coupled shear model with multiplicative noise.

    Attributes
    ----------
    mu : :class:`float`
        Damping of :math:`X`, positive

        Default: 1.0

    nu : :class:`float`
        Damping of :math:`Y`, positive

        Default: 0.2475

    noise_u : :class:`float`
        Amplitude :math:`u` of the multiplicative noise, non-negative.

        The control parameter of the model.

        Default: 0.0

    laminar_threshold : :class:`float`
        Energy below which the laminar state is considered reached.

        Default: 1e-4

    dt : :class:`float`
        Integration step.

        Needs to satisfy ``dt * max(mu, nu) < 0.1``.

        Default: 0.01

    seed : :class:`int`
        Seed of the random number generator

        Default: 0


    Examples
    --------
    .. code-block::

        spec = CoupledShearSpec(nu=0.2487, noise_u=0.3, seed=42)
        spec.validate()

    """

    name = "shear"
    control_parameter = "noise_u"

    def __init__(
        self,
        mu=1.0,
        nu=0.2475,
        noise_u=0.0,
        dt=0.01,
        seed=0,
        laminar_threshold=1e-4,
    ):
        super().__init__(dt=dt, seed=seed)
        self.mu = mu
        self.nu = nu
        self.noise_u = noise_u
        self.laminar_threshold = laminar_threshold

    def _validate(self):
        if not (self.mu > 0 and self.nu > 0):
            raise ParameterError("Damping parameters need to be positive")
        if self.mu * self.nu >= 0.25:
            raise ParameterError(
                f"No nontrivial fixed points for mu*nu = "
                f"{self.mu * self.nu} >= 1/4"
            )
        if not self.noise_u >= 0:
            raise ParameterError("Noise amplitude needs to be non-negative")
        if not self.laminar_threshold > 0:
            raise ParameterError("Laminar threshold needs to be positive")
        if self.dt * max(self.mu, self.nu) >= 0.1:
            raise ParameterError(
                f"Integration step {self.dt} too large for stable integration"
            )


class DoubleWellSpec(ModelSpec):
    """
    Specification of the double-well Langevin model.

    Attributes
    ----------
    a : :class:`float`
        Depth parameter of the wells, positive

        Default: 1.0

    lambda_ : :class:`float`
        Tilt :math:`\\lambda` of the potential.

        The control parameter of the model.

        Default: 0.0

    epsilon : :class:`float`
        Noise amplitude, non-negative.

        A vanishing amplitude results in deterministic dynamics.

        Default: 0.1

    dt : :class:`float`
        Integration step

        Default: 0.01

    seed : :class:`int`
        Seed of the random number generator

        Default: 0


    Examples
    --------
    .. code-block::

        spec = DoubleWellSpec(a=1.0, lambda_=0.1, epsilon=0.4)
        spec.as_dict()["lambda"]  # 0.1

    """

    name = "doublewell"
    control_parameter = "lambda_"
    _key_mapping = {"lambda_": "lambda"}

    def __init__(self, a=1.0, lambda_=0.0, epsilon=0.1, dt=0.01, seed=0):
        super().__init__(dt=dt, seed=seed)
        self.a = a
        self.lambda_ = lambda_
        self.epsilon = epsilon

    def _validate(self):
        if not self.a > 0:
            raise ParameterError("Parameter a needs to be positive")
        if not self.epsilon >= 0:
            raise ParameterError("Noise amplitude needs to be non-negative")
        if not 32 * self.a**3 - 27 * self.lambda_**2 > 0:
            raise ParameterError(
                f"Potential with a={self.a}, lambda={self.lambda_} has only "
                f"one well"
            )


MODEL_SPECS = {spec.name: spec for spec in (CoupledShearSpec, DoubleWellSpec)}


def model_spec_from_dict(dictionary=None):
    """
    Create a model specification from a dictionary.

    The model is selected by the ``model`` key of the dictionary.

    Parameters
    ----------
    dictionary : :class:`dict`
        Model name and parameters

    Returns
    -------
    spec : :class:`ModelSpec`
        Specification of the respective model

    Raises
    ------
    ConfigError
        Raised for unknown models or keys.

    """
    name = (dictionary or {}).get("model", "")
    if name not in MODEL_SPECS:
        raise ConfigError(
            f"Unknown model {name!r}, expected one of {sorted(MODEL_SPECS)}"
        )
    return MODEL_SPECS[name].from_dict(dictionary)


class RunResult:
    """
    Result of simulating one realization of a model.

    Attributes
    ----------
    series : :class:`gevtip.series.entities.series.TimeSeries`
        Series of the observable, one sample per integration step.

        Energy :math:`E` for the coupled shear model, :math:`X` for the
        double-well model.

    n_transitions : :class:`int`
        Number of transitions.

        For the coupled shear model, the number of resets after reaching
        the laminar state. For the double-well model, the number of
        crossings of the saddle from above (escapes from the right well).

    escape_times : :class:`numpy.ndarray`
        Times between resets and escapes (double-well model with recorded
        escapes only, empty otherwise)

    """

    def __init__(self, series=None, n_transitions=0, escape_times=None):
        self.series = series
        self.n_transitions = n_transitions
        if escape_times is None:
            escape_times = np.zeros(0)
        self.escape_times = np.asarray(escape_times, dtype=float)

    def __repr__(self):
        return (
            f"RunResult(series={self.series!r}, "
            f"n_transitions={self.n_transitions!r}, "
            f"<{self.escape_times.size} escape times>)"
        )

    def to_dict(self):
        """
        Return the summary of the run (without the series) as dictionary.

        Returns
        -------
        summary : :class:`dict`
            Number of transitions and escape times

        """
        return {
            "n_steps": len(self.series) if self.series is not None else 0,
            "n_transitions": self.n_transitions,
            "escape_times": self.escape_times.tolist(),
        }
