"""
*Configuration of runs of the command-line interface.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

Each subcommand has its own section of parameters, with typed defaults.
Parameters are resolved from several sources, in increasing precedence:

#. built-in defaults (see :data:`SCHEMA`),
#. a JSON configuration file,
#. the environment variable ``GEVTIP_WORKERS`` (number of worker
   processes only),
#. command-line flags.

Unknown keys are rejected in every source, hence typos cannot silently
fall back to defaults.


Configuration files
===================

A configuration file is a JSON object with an optional ``schema_version``
and one section per subcommand:

.. code-block:: json

    {
        "schema_version": "1",
        "scan-model": {
            "model": {"model": "shear", "nu": 0.2475},
            "control_grid": [0.1, 0.2, 0.3],
            "n_realizations": 5
        },
        "fit": {"bin_length": 500}
    }

Every run writes the fully resolved section of its subcommand as
``config.json`` to its output directory, containing ``schema_version``,
``command``, and all parameters with defaults materialised. Such a file is
a valid configuration file as well: running the subcommand with it
reproduces the outputs.


Module documentation
====================

"""

import copy
import json
import logging

from gevtip.exceptions import ConfigError

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"

WORKERS_VARIABLE = "GEVTIP_WORKERS"

SCHEMA = {
    "fit": {
        "input": "",
        "hdf5_item": "",
        "column": -1,
        "dt": None,
        "control_value": None,
        "stride": 1,
        "tail": "both",
        "bin_length": 1000,
        "burn_in_fraction": 0.1,
        "pre_blocked": False,
        "min_sample_size": 30,
        "histogram_bins": 100,
        "output": ".",
    },
    "scan-model": {
        "model": {"model": "shear"},
        "control_grid": [0.02, 0.04, 0.06, 0.08, 0.1, 0.12],
        "n_realizations": 10,
        "bin_length": 10000,
        "burn_in_fraction": 0.1,
        "n_bins": 100,
        "master_seed": 0,
        "pooled": False,
        "workers": 1,
        "output": ".",
    },
    "scan-data": {
        "inputs": [],
        "hdf5_items": [],
        "control_values": [],
        "column": -1,
        "dt": None,
        "stride": 1,
        "bin_length": 1000,
        "burn_in_fraction": 0.1,
        "pooled": False,
        "output": ".",
    },
    "rescale": {
        "a": 1.0,
        "lambda_grid": [0.0, 0.1, 0.2, 0.3, 0.4],
        "pairs": [[100, 0.4], [1000, 0.3266]],
        "n_realizations": 5,
        "n_bins": 100,
        "dt": 0.01,
        "burn_in_fraction": 0.1,
        "master_seed": 0,
        "workers": 1,
        "output": ".",
    },
    "simulate": {
        "model": {"model": "shear"},
        "n_steps": 100000,
        "record_escapes": False,
        "output": ".",
    },
    "sensitivity": {
        "input": "",
        "hdf5_item": "",
        "column": -1,
        "dt": None,
        "stride": 1,
        "tail": "minima",
        "burn_in_fraction": 0.1,
        "bin_lengths": [100, 200, 500, 1000, 2000, 5000],
        "output": ".",
    },
    "kramers": {
        "a": 1.0,
        "lambda": 0.0,
        "epsilons": [0.45, 0.5, 0.55, 0.6],
        "n_escapes": 50,
        "dt": 0.01,
        "master_seed": 0,
        "max_steps": 10**9,
        "workers": 1,
        "output": ".",
    },
}
"""
Parameters of the subcommands with their defaults.

The type of a default defines the type accepted for a parameter. Integers
are accepted for floats, and parameters with default ``None`` accept
numbers.
"""


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _check_type(key, value, default):
    if isinstance(default, bool):
        valid = isinstance(value, bool)
    elif isinstance(default, int):
        valid = isinstance(value, int) and not isinstance(value, bool)
    elif isinstance(default, float) or default is None:
        valid = _is_number(value) or (default is None and value is None)
    else:
        valid = isinstance(value, type(default))
    if not valid:
        message = f"Wrong type of {key!r}: {value!r}"
        logger.error(message)
        raise ConfigError(message)


class RunConfig:
    """
    Resolved parameters of one subcommand.

    Attributes
    ----------
    command : :class:`str`
        Name of the subcommand

    parameters : :class:`dict`
        Parameters of the subcommand, initialised with the defaults

    Raises
    ------
    ConfigError
        Raised if the command is unknown.


    Examples
    --------
    Resolving the parameters of a scan from the different sources:

    .. code-block::

        config = RunConfig(command="scan-model")
        config.load("config.json")
        config.apply_environment(os.environ)
        config.update({"n_realizations": 20})

    """

    def __init__(self, command=""):
        if command not in SCHEMA:
            message = (
                f"Unknown command {command!r}, expected one of "
                f"{sorted(SCHEMA)}"
            )
            logger.error(message)
            raise ConfigError(message)
        self.command = command
        self.parameters = copy.deepcopy(SCHEMA[command])

    def __getitem__(self, key):
        return self.parameters[key]

    def __setitem__(self, key, value):
        self.update({key: value})

    def update(self, parameters=None):
        """
        Update parameters, checking keys and types.

        Parameters
        ----------
        parameters : :class:`dict`
            Parameters to set

        Raises
        ------
        ConfigError
            Raised for unknown keys or values of wrong type.

        """
        for key, value in (parameters or {}).items():
            if key not in self.parameters:
                message = f"Unknown key {key!r} for command {self.command}"
                logger.error(message)
                raise ConfigError(message)
            _check_type(key, value, SCHEMA[self.command][key])
            self.parameters[key] = value

    def from_dict(self, dictionary=None):
        """
        Update parameters from the contents of a configuration file.

        Two layouts are understood: one section per subcommand, and the
        resolved configuration of a single subcommand as written by
        :meth:`to_dict`.

        Parameters
        ----------
        dictionary : :class:`dict`
            Contents of a configuration file

        Raises
        ------
        ConfigError
            Raised for unknown keys, sections, or schema versions, and
            for resolved configurations of other commands.

        """
        if not isinstance(dictionary, dict):
            raise ConfigError("Configuration needs to be a JSON object")
        dictionary = dict(dictionary)
        version = str(dictionary.pop("schema_version", SCHEMA_VERSION))
        if version != SCHEMA_VERSION:
            message = f"Unsupported schema version {version!r}"
            logger.error(message)
            raise ConfigError(message)
        if "command" in dictionary:
            command = dictionary.pop("command")
            if command != self.command:
                message = (
                    f"Configuration for command {command!r} cannot be "
                    f"used for {self.command!r}"
                )
                logger.error(message)
                raise ConfigError(message)
            self.update(dictionary)
            return
        unknown = sorted(set(dictionary) - set(SCHEMA))
        if unknown:
            message = f"Unknown sections in configuration: {unknown}"
            logger.error(message)
            raise ConfigError(message)
        self.update(dictionary.get(self.command, {}))

    def load(self, filename=""):
        """
        Update parameters from a JSON configuration file.

        Parameters
        ----------
        filename : :class:`str`
            Name of the configuration file

        Raises
        ------
        FileNotFoundError
            Raised if the file does not exist.

        ConfigError
            Raised if the file is no valid JSON or has invalid contents.

        """
        with open(filename, encoding="utf8") as file:
            try:
                contents = json.load(file)
            except json.JSONDecodeError as exc:
                message = f"Invalid JSON in {filename!r}: {exc}"
                logger.error(message)
                raise ConfigError(message) from exc
        self.from_dict(contents)
        logger.info("Read configuration from %s", filename)

    def apply_environment(self, environment=None):
        """
        Set the number of workers from the environment.

        Only commands with a ``workers`` parameter are affected.

        Parameters
        ----------
        environment : :class:`dict`
            Environment variables, typically :data:`os.environ`

        Raises
        ------
        ConfigError
            Raised if the variable is no positive integer.

        """
        value = (environment or {}).get(WORKERS_VARIABLE, "")
        if not value or "workers" not in self.parameters:
            return
        try:
            workers = int(value)
        except ValueError as exc:
            message = f"{WORKERS_VARIABLE} needs to be an integer: {value!r}"
            logger.error(message)
            raise ConfigError(message) from exc
        if workers < 1:
            message = f"{WORKERS_VARIABLE} needs to be positive: {value!r}"
            logger.error(message)
            raise ConfigError(message)
        self.parameters["workers"] = workers

    def to_dict(self):
        """
        Return the resolved configuration.

        Returns
        -------
        config : :class:`dict`
            Schema version, command, and all parameters

        """
        result = {"schema_version": SCHEMA_VERSION, "command": self.command}
        result.update(copy.deepcopy(self.parameters))
        return result
