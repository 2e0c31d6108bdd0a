"""
*The* ``gevtip`` *command-line interface.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

The command-line interface provides the subcommands ``fit``,
``scan-model``, ``scan-data``, ``rescale``, ``simulate``, ``sensitivity``,
and ``kramers``. It is available as console script ``gevtip`` and as
``python -m gevtip``. See :mod:`gevtip.cli.controllers.commands` for the
outputs of the subcommands.

Parameters are taken from defaults, a configuration file (``--config``),
the environment variable ``GEVTIP_WORKERS``, and flags, with later sources
taking precedence (see :mod:`gevtip.cli.entities.config`). For example:

.. code-block:: bash

    gevtip scan-model --model shear --param nu=0.2475 \\
        --grid 0.1 0.2 0.3 0.4 -m 10000 --bins 100 --realizations 10 \\
        --workers 4 -o fig3
    gevtip fit energy.csv --tail minima -m 1000 -o fit
    gevtip scan-model --config fig3/config.json -o fig3-rerun


Exit codes and output
=====================

On success, the exit code is 0 and a JSON summary (command, files written,
main results) is printed to stdout. On failure, a JSON object with the
name of the error, its message, and additional information (such as the
line of a file) is printed to stdout, with exit code 2 for invalid
arguments or configurations and 1 for all other errors. The absence of a
threshold in a scan is no failure.

Log messages are written to stderr. By default, only warnings are shown,
``-v`` adds informational messages and ``-vv`` debug messages.


Module documentation
====================

"""

import argparse
import logging
import os
import sys

from gevtip.cli.boundaries.output import format_json
from gevtip.cli.controllers.commands import CommandFactory
from gevtip.cli.entities.config import RunConfig
from gevtip.exceptions import ConfigError
from gevtip.models.entities.models import MODEL_SPECS
from gevtip.series.entities.series import TAILS

logger = logging.getLogger(__name__)

ERROR_ATTRIBUTES = ("line", "step", "kappa_range", "filename")


class ArgumentParser(argparse.ArgumentParser):
    """
    Argument parser raising :class:`ConfigError
    <gevtip.exceptions.ConfigError>` instead of exiting on errors.
    """

    def error(self, message):
        raise ConfigError(message)


def _model_parameter(text):
    key, separator, value = text.partition("=")
    if not separator or not key:
        raise argparse.ArgumentTypeError(f"Expected KEY=VALUE: {text!r}")
    for converter in (int, float):
        try:
            return key, converter(value)
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(f"Expected a number: {text!r}")


def _add_option(parser, *names, **kwargs):
    parser.add_argument(*names, default=argparse.SUPPRESS, **kwargs)


def _add_series_arguments(parser):
    _add_option(parser, "--item", dest="hdf5_item", help="HDF5 dataset")
    _add_option(parser, "--column", type=int, help="index of value column")
    _add_option(parser, "--dt", type=float, help="sampling step")
    _add_option(parser, "--stride", type=int, help="keep every n-th sample")


def _add_block_arguments(parser, bin_length=True):
    if bin_length:
        _add_option(
            parser, "-m", "--bin-length", type=int, help="bin length m"
        )
    _add_option(
        parser,
        "--burn-in",
        dest="burn_in_fraction",
        type=float,
        help="fraction of series discarded as transient",
    )


def _add_model_arguments(parser):
    _add_option(
        parser, "--model", dest="model_name", choices=sorted(MODEL_SPECS)
    )
    _add_option(
        parser,
        "--param",
        dest="model_parameters",
        action="append",
        type=_model_parameter,
        metavar="KEY=VALUE",
        help="model parameter, may be repeated",
    )


def _add_ensemble_arguments(parser, workers=True):
    _add_option(parser, "--realizations", dest="n_realizations", type=int)
    _add_option(parser, "--bins", dest="n_bins", type=int, help="bins n")
    _add_option(parser, "--seed", dest="master_seed", type=int)
    if workers:
        _add_option(parser, "--workers", type=int)


def _parser():
    common = ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="more output"
    )
    _add_option(common, "-o", "--output", help="output directory")

    parser = ArgumentParser(
        prog="gevtip",
        description="Detect tipping points with extreme value statistics.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    fit = subparsers.add_parser(
        "fit", parents=[common], help="fit extremes of one series"
    )
    _add_option(fit, "input", nargs="?", help="CSV or HDF5 file")
    _add_series_arguments(fit)
    _add_option(fit, "--control-value", type=float)
    _add_option(fit, "--tail", choices=list(TAILS) + ["both"])
    _add_block_arguments(fit)
    _add_option(fit, "--pre-blocked", action="store_true")
    _add_option(fit, "--min-sample-size", type=int)
    _add_option(fit, "--histogram-bins", type=int)

    scan_model = subparsers.add_parser(
        "scan-model", parents=[common], help="scan a model"
    )
    _add_model_arguments(scan_model)
    _add_option(
        scan_model, "--grid", dest="control_grid", nargs="+", type=float
    )
    _add_block_arguments(scan_model)
    _add_ensemble_arguments(scan_model)
    _add_option(scan_model, "--pooled", action="store_true")

    scan_data = subparsers.add_parser(
        "scan-data", parents=[common], help="scan a set of series"
    )
    _add_option(scan_data, "inputs", nargs="*", help="CSV or HDF5 files")
    _add_option(scan_data, "--items", dest="hdf5_items", nargs="+")
    _add_option(scan_data, "--control-values", nargs="+", type=float)
    _add_option(scan_data, "--column", type=int)
    _add_option(scan_data, "--dt", type=float)
    _add_option(scan_data, "--stride", type=int)
    _add_block_arguments(scan_data)
    _add_option(scan_data, "--pooled", action="store_true")

    rescale = subparsers.add_parser(
        "rescale", parents=[common], help="rescaled double-well scans"
    )
    _add_option(rescale, "-a", type=float, help="depth of the wells")
    _add_option(rescale, "--lambda-grid", nargs="+", type=float)
    _add_option(
        rescale,
        "--pair",
        dest="pairs",
        nargs=2,
        action="append",
        type=float,
        metavar=("M", "EPSILON"),
        help="bin length and noise, may be repeated",
    )
    _add_option(rescale, "--dt", type=float)
    _add_block_arguments(rescale, bin_length=False)
    _add_ensemble_arguments(rescale)

    simulate = subparsers.add_parser(
        "simulate", parents=[common], help="simulate one realization"
    )
    _add_model_arguments(simulate)
    _add_option(simulate, "--steps", dest="n_steps", type=int)
    _add_option(simulate, "--record-escapes", action="store_true")

    sensitivity = subparsers.add_parser(
        "sensitivity", parents=[common], help="bin-length sensitivity"
    )
    _add_option(sensitivity, "input", nargs="?", help="CSV or HDF5 file")
    _add_series_arguments(sensitivity)
    _add_option(sensitivity, "--tail", choices=list(TAILS))
    _add_block_arguments(sensitivity, bin_length=False)
    _add_option(sensitivity, "--bin-lengths", nargs="+", type=int)

    kramers = subparsers.add_parser(
        "kramers", parents=[common], help="escape times of the double well"
    )
    _add_option(kramers, "-a", type=float, help="depth of the wells")
    _add_option(kramers, "--lambda", type=float, help="tilt")
    _add_option(kramers, "--epsilons", nargs="+", type=float)
    _add_option(kramers, "--escapes", dest="n_escapes", type=int)
    _add_option(kramers, "--dt", type=float)
    _add_option(kramers, "--seed", dest="master_seed", type=int)
    _add_option(kramers, "--max-steps", type=int)
    _add_option(kramers, "--workers", type=int)
    return parser


def _flags(arguments, config):
    flags = dict(vars(arguments))
    for key in ("command", "config", "verbose"):
        flags.pop(key, None)
    name = flags.pop("model_name", None)
    parameters = flags.pop("model_parameters", [])
    if name or parameters:
        model = dict(config["model"])
        if name and name != model.get("model"):
            model = {"model": name}
        model.update(parameters)
        flags["model"] = model
    if "pairs" in flags:
        flags["pairs"] = [[int(m), epsilon] for m, epsilon in flags["pairs"]]
    return flags


def resolve_config(arguments=None, environment=None):
    """
    Resolve the configuration of a subcommand from all sources.

    Parameters
    ----------
    arguments : :class:`argparse.Namespace`
        Parsed command-line arguments

    environment : :class:`dict`
        Environment variables

    Returns
    -------
    config : :class:`gevtip.cli.entities.config.RunConfig`
        Resolved configuration

    """
    config = RunConfig(command=arguments.command)
    if arguments.config:
        config.load(arguments.config)
    config.apply_environment(environment)
    config.update(_flags(arguments, config))
    return config


def _configure_logging(verbosity=0):
    levels = {0: logging.WARNING, 1: logging.INFO}
    logging.basicConfig(
        level=levels.get(verbosity, logging.DEBUG),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _report_error(exception=None, exit_code=1):
    report = {
        "error": exception.__class__.__name__,
        "message": str(exception),
    }
    for attribute in ERROR_ATTRIBUTES:
        value = getattr(exception, attribute, None)
        if value is not None:
            report[attribute] = value
    print(format_json(report))
    return exit_code


def main(argv=None):
    """
    Run the command-line interface.

    Parameters
    ----------
    argv : :class:`list`
        Command-line arguments without the program name.

        Default: ``sys.argv[1:]``

    Returns
    -------
    exit_code : :class:`int`
        0 on success, 2 for invalid arguments or configurations, 1 for
        other errors

    """
    try:
        arguments = _parser().parse_args(argv)
    except ConfigError as exc:
        return _report_error(exc, exit_code=2)
    except SystemExit as exc:
        return exc.code
    _configure_logging(arguments.verbose)
    try:
        config = resolve_config(arguments, environment=os.environ)
    except (ConfigError, FileNotFoundError) as exc:
        return _report_error(exc, exit_code=2)
    try:
        summary = CommandFactory().get_command(config=config).execute()
    except ConfigError as exc:
        return _report_error(exc, exit_code=2)
    except Exception as exc:  # noqa pylint: disable=broad-except
        logger.debug("Command failed", exc_info=True)
        return _report_error(exc, exit_code=1)
    print(format_json(summary))
    return 0
