"""
*Subcommands of the command-line interface.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

Each subcommand of the ``gevtip`` command-line interface is implemented as
a :class:`Command` subclass operating on a resolved :class:`RunConfig
<gevtip.cli.entities.config.RunConfig>`. The :class:`CommandFactory`
returns the command for a given configuration.


Subcommands and outputs
=======================

All outputs are written to the output directory of the configuration,
together with the resolved configuration as ``config.json``.

``fit``
    Fit of the extremes of one series (``fit.json``, one entry per tail),
    the extremes (``extremes.csv``), and the histogram of the series
    (``histogram.csv``).

``scan-model``
    Scan of a model over a control grid (``scan.csv``), the threshold
    estimate (``threshold.json``), and trends of the bulk indicators
    (``trends.json``).

``scan-data``
    The same outputs for a set of ingested series.

``rescale``
    Scans of the double-well model for pairs of bin length and noise
    amplitude (``rescale.csv`` in long format, ``thresholds.json``).

``simulate``
    One realization of a model (``series.csv``) with a summary of the run
    (``run.json``).

``sensitivity``
    Fits of the extremes of one series for a grid of bin lengths
    (``sensitivity.csv``).

``kramers``
    Mean escape times of the double-well model for a range of noise
    amplitudes (``kramers.csv``) and the fit of Kramers' law
    (``kramers.json``).

A scan without zero crossing of the shape parameter of the minima is a
valid finding: the threshold file contains ``{"crossing": null,
"kappa_range": [...]}`` and the command succeeds.


Module documentation
====================

"""

import logging
import os

from gevtip.cli.boundaries import output
from gevtip.ensemble.controllers.scanning import (
    analyse_scan,
    analyze_external,
    indicator_trends,
    kramers_scan,
    rescaled_scan,
    run_scan,
)
from gevtip.exceptions import ConfigError
from gevtip.gev.controllers.fitting import GevFitter
from gevtip.models.controllers.simulation import SimulationFactory
from gevtip.models.entities.models import model_spec_from_dict
from gevtip.series.boundaries.series import (
    ingest_csv,
    ingest_hdf5,
    write_series_csv,
)
from gevtip.series.controllers.extremes import (
    bin_length_sensitivity,
    block_extremes,
    plateau,
)
from gevtip.series.controllers.indicators import histogram
from gevtip.series.entities.series import TAILS, BlockSpec

logger = logging.getLogger(__name__)


def _load_series(parameters, path="", item="", control_value=None):
    if not path:
        message = "No input file given"
        logger.error(message)
        raise ConfigError(message)
    arguments = {
        "column": parameters["column"],
        "dt": parameters["dt"],
        "control_value": control_value,
        "stride": parameters["stride"],
    }
    if item:
        return ingest_hdf5(path, item=item, **arguments)
    return ingest_csv(path, **arguments)


def _tails(tail):
    if tail == "both":
        return list(TAILS)
    if tail not in TAILS:
        message = f"Unknown tail {tail!r}, expected one of {TAILS} or 'both'"
        logger.error(message)
        raise ConfigError(message)
    return [tail]


def _threshold_summary(analysis):
    if analysis.threshold is None:
        return None
    return analysis.threshold.control_critical


class Command:
    """
    Base class for subcommands.

    Attributes
    ----------
    config : :class:`gevtip.cli.entities.config.RunConfig`
        Resolved configuration of the command

    summary : :class:`dict`
        Summary of the execution, containing the command, the files
        written, and command-specific results


    Examples
    --------
    Usually, you will not instantiate a command directly, but use the
    :class:`CommandFactory`:

    .. code-block::

        command = CommandFactory().get_command(config=config)
        summary = command.execute()

    """

    def __init__(self, config=None):
        self.config = config
        self.summary = {}

    def execute(self):
        """
        Execute the command and write the resolved configuration.

        Returns
        -------
        summary : :class:`dict`
            Summary of the execution

        Raises
        ------
        ValueError
            Raised if no configuration is present.

        """
        if self.config is None:
            raise ValueError("No configuration to execute command with.")
        self.summary = {"command": self.config.command, "outputs": []}
        os.makedirs(self.config["output"], exist_ok=True)
        self._execute()
        output.write_json(self.config.to_dict(), self._path("config.json"))
        return self.summary

    def _execute(self):
        pass

    def _path(self, filename=""):
        path = os.path.join(self.config["output"], filename)
        self.summary["outputs"].append(path)
        return path

    def _model_spec(self):
        spec = model_spec_from_dict(self.config["model"])
        spec.validate()
        self.config["model"] = spec.as_dict()
        return spec

    def _block(self, tail="maxima", bin_length=None):
        block = BlockSpec(
            bin_length=bin_length or self.config["bin_length"],
            tail=tail,
            burn_in_fraction=self.config["burn_in_fraction"],
        )
        block.validate()
        return block

    def _write_scan(self, analysis):
        output.write_scan_csv(analysis.points, self._path("scan.csv"))
        output.write_threshold_json(analysis, self._path("threshold.json"))
        output.write_json(
            indicator_trends(analysis.points), self._path("trends.json")
        )
        self.summary["control_critical"] = _threshold_summary(analysis)


class FitCommand(Command):
    """
    Fit the extremes of one series.

    With ``pre_blocked`` set, the values of the series are taken as the
    extremes themselves, *i.e.* as maxima, or as minima if the tail is set
    to ``minima``.
    """

    def _execute(self):
        parameters = self.config.parameters
        series = _load_series(
            parameters,
            path=parameters["input"],
            item=parameters["hdf5_item"],
            control_value=parameters["control_value"],
        )
        tails = _tails(parameters["tail"])
        if parameters["pre_blocked"]:
            if tails == ["minima"]:
                extremes = {"minima": -series.values}
            else:
                extremes = {"maxima": series.values}
            burn_in_fraction = 0.0
            bin_length = None
        else:
            extremes = {
                tail: block_extremes(series, self._block(tail=tail))
                for tail in tails
            }
            burn_in_fraction = parameters["burn_in_fraction"]
            bin_length = parameters["bin_length"]
        fitter = GevFitter(min_sample_size=parameters["min_sample_size"])
        fits = {tail: fitter.fit(values) for tail, values in extremes.items()}
        output.write_fit_json(
            fits,
            self._path("fit.json"),
            label=series.label,
            control_value=series.control_value,
            n_samples=len(series),
            bin_length=bin_length,
        )
        output.write_extremes_csv(extremes, self._path("extremes.csv"))
        result = histogram(
            series,
            bins=parameters["histogram_bins"],
            burn_in_fraction=burn_in_fraction,
        )
        output.write_table_csv(
            [
                {
                    "centre": centre,
                    "count": count,
                    "density": density,
                    "log_density": log_density,
                }
                for centre, count, density, log_density in zip(
                    result.centres,
                    result.counts,
                    result.density,
                    result.log_density,
                )
            ],
            self._path("histogram.csv"),
        )
        self.summary["shape"] = {
            tail: fit.params.shape for tail, fit in fits.items()
        }


class ScanModelCommand(Command):
    """Scan a model over a grid of control values."""

    def _execute(self):
        parameters = self.config.parameters
        points = run_scan(
            model=self._model_spec(),
            control_grid=parameters["control_grid"],
            n_realizations=parameters["n_realizations"],
            block=self._block(),
            n_bins=parameters["n_bins"],
            master_seed=parameters["master_seed"],
            pooled=parameters["pooled"],
            workers=parameters["workers"],
        )
        self._write_scan(analyse_scan(points))


class ScanDataCommand(Command):
    """
    Scan a set of ingested series.

    The control values are taken from the metadata of the files unless
    given explicitly, one per input.
    """

    def _execute(self):
        parameters = self.config.parameters
        inputs = parameters["inputs"]
        if not inputs:
            message = "No input files given"
            logger.error(message)
            raise ConfigError(message)
        items = self._per_input("hdf5_items", default="")
        control_values = self._per_input("control_values", default=None)
        series_set = [
            _load_series(
                parameters, path=path, item=item, control_value=control_value
            )
            for path, item, control_value in zip(
                inputs, items, control_values
            )
        ]
        analysis = analyze_external(
            series_set, block=self._block(), pooled=parameters["pooled"]
        )
        self._write_scan(analysis)

    def _per_input(self, key, default=None):
        values = self.config[key]
        if not values:
            return [default] * len(self.config["inputs"])
        if len(values) != len(self.config["inputs"]):
            message = f"Need one entry of {key!r} per input file"
            logger.error(message)
            raise ConfigError(message)
        return values


class RescaleCommand(Command):
    """Scan the double-well model for pairs of bin length and noise."""

    def _execute(self):
        parameters = self.config.parameters
        curves = rescaled_scan(
            a=parameters["a"],
            lambda_grid=parameters["lambda_grid"],
            pairs=parameters["pairs"],
            n_realizations=parameters["n_realizations"],
            n_bins=parameters["n_bins"],
            dt=parameters["dt"],
            burn_in_fraction=parameters["burn_in_fraction"],
            master_seed=parameters["master_seed"],
            workers=parameters["workers"],
        )
        output.write_rescale_csv(curves, self._path("rescale.csv"))
        output.write_json(
            {"curves": [curve.to_dict() for curve in curves]},
            self._path("thresholds.json"),
        )
        self.summary["control_critical"] = [
            None if curve.error else _threshold_summary(curve)
            for curve in curves
        ]


class SimulateCommand(Command):
    """
    Simulate one realization of a model.

    Escapes can only be recorded for the double-well model.
    """

    def _execute(self):
        parameters = self.config.parameters
        spec = self._model_spec()
        simulation = SimulationFactory().get_simulation(spec=spec)
        if parameters["record_escapes"]:
            if not hasattr(simulation, "record_escapes"):
                message = f"Cannot record escapes for model {spec.name!r}"
                logger.error(message)
                raise ConfigError(message)
            simulation.record_escapes = True
        result = simulation.run(n_steps=parameters["n_steps"])
        write_series_csv(result.series, self._path("series.csv"))
        summary = {"model": spec.as_dict()}
        summary.update(result.to_dict())
        output.write_json(summary, self._path("run.json"))
        self.summary["n_transitions"] = result.n_transitions


class SensitivityCommand(Command):
    """Fit the extremes of one series for a grid of bin lengths."""

    def _execute(self):
        parameters = self.config.parameters
        series = _load_series(
            parameters, path=parameters["input"], item=parameters["hdf5_item"]
        )
        tail = _tails(parameters["tail"])
        if len(tail) > 1:
            raise ConfigError("Sensitivity needs a single tail")
        rows = bin_length_sensitivity(
            series,
            block=self._block(tail=tail[0], bin_length=1),
            bin_lengths=parameters["bin_lengths"],
        )
        output.write_table_csv(
            [row.to_dict() for row in rows], self._path("sensitivity.csv")
        )
        self.summary["plateau"] = plateau(rows)


class KramersCommand(Command):
    """Mean escape times of the double-well model for noise amplitudes."""

    def _execute(self):
        parameters = self.config.parameters
        result = kramers_scan(
            a=parameters["a"],
            lambda_=parameters["lambda"],
            epsilons=parameters["epsilons"],
            n_escapes=parameters["n_escapes"],
            dt=parameters["dt"],
            master_seed=parameters["master_seed"],
            max_steps=parameters["max_steps"],
            workers=parameters["workers"],
        )
        output.write_table_csv(
            [point.to_dict() for point in result.points],
            self._path("kramers.csv"),
        )
        output.write_json(result.to_dict(), self._path("kramers.json"))
        self.summary["slope"] = result.slope


class CommandFactory:
    """
    Factory for getting the command matching a configuration.

    Examples
    --------
    .. code-block::

        config = RunConfig(command="fit")
        command = CommandFactory().get_command(config=config)

    This will provide you with a :obj:`FitCommand` instance.

    """

    commands = {
        "fit": "FitCommand",
        "scan-model": "ScanModelCommand",
        "scan-data": "ScanDataCommand",
        "rescale": "RescaleCommand",
        "simulate": "SimulateCommand",
        "sensitivity": "SensitivityCommand",
        "kramers": "KramersCommand",
    }

    def get_command(self, config=None):
        """
        Obtain a :class:`Command` instance for a configuration.

        Parameters
        ----------
        config : :class:`gevtip.cli.entities.config.RunConfig`
            Resolved configuration

        Returns
        -------
        command : :class:`Command`
            Command instance with the configuration set

        Raises
        ------
        ConfigError
            Raised if no command exists for the configuration.

        """
        try:
            name = self.commands[config.command]
        except (KeyError, AttributeError) as exc:
            raise ConfigError(f"No command for {config!r}") from exc
        return globals()[name](config=config)
