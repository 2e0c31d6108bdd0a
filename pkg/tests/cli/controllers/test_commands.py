import json
import logging
import os
import shutil
import unittest

import numpy as np
import pandas as pd

from gevtip.cli.controllers import commands
from gevtip.cli.entities.config import RunConfig
from gevtip.exceptions import ConfigError
from gevtip.gev.controllers.distribution import gev_sample
from gevtip.gev.entities.gev import GevParams
from gevtip.series.boundaries.series import write_series_csv
from gevtip.series.entities.series import TimeSeries

OUTPUT = "test-output"


def read_csv(filename):
    table = pd.read_csv(
        filename, header=None, dtype=str, na_filter=False, comment="#"
    )
    return table.to_numpy().tolist()


def read_json(filename):
    with open(filename, encoding="utf8") as file:
        return json.load(file)


def read_text(filename):
    with open(filename, encoding="utf8") as file:
        return file.read()


def output_file(filename):
    return os.path.join(OUTPUT, filename)


def write_minima_series(filename, shape=0.0, count=11200, control_value=None):
    # Minima of -Z with Z ~ GEV have the shape of the maxima of Z
    values = -gev_sample(GevParams(shape=shape), count=count, seed=5)
    series = TimeSeries(values=values, control_value=control_value)
    write_series_csv(series, filename)


def execute(command, **parameters):
    config = RunConfig(command=command)
    config.update({"output": OUTPUT})
    config.update(parameters)
    return commands.CommandFactory().get_command(config=config).execute()


class CommandTestCase(unittest.TestCase):
    filenames = []

    def setUp(self):
        logging.disable(logging.WARNING)

    def tearDown(self):
        logging.disable(logging.NOTSET)
        if os.path.exists(OUTPUT):
            shutil.rmtree(OUTPUT)
        for filename in self.filenames:
            if os.path.exists(filename):
                os.remove(filename)


class TestCommand(CommandTestCase):
    def setUp(self):
        super().setUp()
        self.command = commands.Command()

    def test_instantiate_class(self):
        pass

    def test_has_attributes(self):
        for attribute in ["config", "summary"]:
            with self.subTest(attribute=attribute):
                self.assertTrue(hasattr(self.command, attribute))

    def test_execute_without_config_raises(self):
        with self.assertRaises(ValueError):
            self.command.execute()

    def test_execute_writes_config(self):
        self.command.config = RunConfig(command="fit")
        self.command.config["output"] = OUTPUT
        summary = self.command.execute()
        self.assertEqual("fit", summary["command"])
        self.assertEqual([output_file("config.json")], summary["outputs"])
        config = read_json(output_file("config.json"))
        self.assertEqual("fit", config["command"])
        self.assertEqual("1", config["schema_version"])


class TestFitCommand(CommandTestCase):
    filenames = ["test-input.csv"]

    def setUp(self):
        super().setUp()
        self.sample = gev_sample(GevParams(shape=-0.3), count=5000, seed=2)
        write_series_csv(TimeSeries(values=self.sample), "test-input.csv")

    def test_pre_blocked_recovers_shape(self):
        summary = execute("fit", input="test-input.csv", pre_blocked=True)
        shape = summary["shape"]["maxima"]
        self.assertGreater(shape, -0.35)
        self.assertLess(shape, -0.25)
        fit = read_json(output_file("fit.json"))
        self.assertIn("maxima", fit)
        self.assertNotIn("minima", fit)
        self.assertIsNone(fit["bin_length"])

    def test_writes_outputs(self):
        execute("fit", input="test-input.csv", bin_length=50)
        for filename in (
            "fit.json",
            "extremes.csv",
            "histogram.csv",
            "config.json",
        ):
            with self.subTest(filename=filename):
                self.assertTrue(os.path.exists(output_file(filename)))

    def test_fits_both_tails(self):
        execute("fit", input="test-input.csv", bin_length=50)
        fit = read_json(output_file("fit.json"))
        self.assertIn("maxima", fit)
        self.assertIn("minima", fit)
        self.assertEqual(5000, fit["n_samples"])
        rows = read_csv(output_file("extremes.csv"))
        self.assertEqual(1 + 2 * 90, len(rows))

    def test_histogram_has_requested_bins(self):
        execute(
            "fit",
            input="test-input.csv",
            bin_length=50,
            histogram_bins=20,
        )
        rows = read_csv(output_file("histogram.csv"))
        self.assertEqual(
            ["centre", "count", "density", "log_density"], rows[0]
        )
        self.assertEqual(21, len(rows))

    def test_pre_blocked_minima_are_negated(self):
        write_series_csv(TimeSeries(values=-self.sample), "test-input.csv")
        summary = execute(
            "fit", input="test-input.csv", pre_blocked=True, tail="minima"
        )
        self.assertLess(summary["shape"]["minima"], -0.25)

    def test_without_input_raises(self):
        with self.assertRaises(ConfigError):
            execute("fit")

    def test_unknown_tail_raises(self):
        with self.assertRaises(ConfigError):
            execute("fit", input="test-input.csv", tail="maximum")

    def test_missing_input_file_raises(self):
        with self.assertRaises(FileNotFoundError):
            execute("fit", input="nonexisting.csv")


class TestScanModelCommand(CommandTestCase):
    def setUp(self):
        super().setUp()
        self.parameters = {
            "model": {"model": "shear", "nu": 0.2475},
            "control_grid": [0.1, 0.3],
            "n_realizations": 1,
            "bin_length": 100,
            "n_bins": 40,
        }

    def test_writes_scan_outputs(self):
        execute("scan-model", **self.parameters)
        rows = read_csv(output_file("scan.csv"))
        self.assertEqual(3, len(rows))
        self.assertEqual("control_value", rows[0][0])
        threshold = read_json(output_file("threshold.json"))
        self.assertTrue(
            "control_critical" in threshold or "crossing" in threshold
        )
        trends = read_json(output_file("trends.json"))
        self.assertEqual(2, trends["n_points"])

    def test_config_materialises_model_defaults(self):
        execute("scan-model", **self.parameters)
        config = read_json(output_file("config.json"))
        self.assertEqual(1.0, config["model"]["mu"])
        self.assertEqual(1e-4, config["model"]["laminar_threshold"])

    def test_rerun_from_config_reproduces_outputs(self):
        execute("scan-model", **self.parameters)
        first = read_text(output_file("scan.csv"))
        config = RunConfig(command="scan-model")
        config.load(output_file("config.json"))
        commands.CommandFactory().get_command(config=config).execute()
        self.assertEqual(first, read_text(output_file("scan.csv")))

    def test_unknown_model_key_raises(self):
        self.parameters["model"] = {"model": "shear", "eta": 1.0}
        with self.assertRaises(ConfigError):
            execute("scan-model", **self.parameters)


class TestScanDataCommand(CommandTestCase):
    filenames = ["test-bounded.csv", "test-heavy.csv"]

    def setUp(self):
        super().setUp()
        write_minima_series("test-bounded.csv", shape=-0.3, control_value=300)
        write_minima_series("test-heavy.csv", shape=0.3, control_value=277)

    def test_detects_crossing_between_series(self):
        summary = execute(
            "scan-data",
            inputs=["test-bounded.csv", "test-heavy.csv"],
            bin_length=20,
        )
        self.assertGreater(summary["control_critical"], 277)
        self.assertLess(summary["control_critical"], 300)
        rows = read_csv(output_file("scan.csv"))
        self.assertEqual(["277", "300"], [row[0] for row in rows[1:]])

    def test_explicit_control_values(self):
        execute(
            "scan-data",
            inputs=["test-bounded.csv", "test-heavy.csv"],
            control_values=[2.0, 1.0],
            bin_length=20,
        )
        rows = read_csv(output_file("scan.csv"))
        self.assertEqual(["1", "2"], [row[0] for row in rows[1:]])

    def test_single_control_value_has_no_crossing(self):
        summary = execute(
            "scan-data", inputs=["test-bounded.csv"], bin_length=20
        )
        self.assertIsNone(summary["control_critical"])
        threshold = read_json(output_file("threshold.json"))
        self.assertIsNone(threshold["crossing"])

    def test_without_inputs_raises(self):
        with self.assertRaises(ConfigError):
            execute("scan-data")

    def test_mismatching_control_values_raise(self):
        with self.assertRaises(ConfigError):
            execute(
                "scan-data",
                inputs=["test-bounded.csv", "test-heavy.csv"],
                control_values=[1.0],
            )


class TestRescaleCommand(CommandTestCase):
    def test_writes_rescale_outputs(self):
        summary = execute(
            "rescale",
            lambda_grid=[0.0, 0.2],
            pairs=[[50, 0.3]],
            n_realizations=1,
            n_bins=40,
        )
        rows = read_csv(output_file("rescale.csv"))
        self.assertEqual(3, len(rows))
        self.assertEqual(["50", "0.29999999999999999"], rows[1][:2])
        thresholds = read_json(output_file("thresholds.json"))
        self.assertEqual(1, len(thresholds["curves"]))
        self.assertEqual(1, len(summary["control_critical"]))


class TestSimulateCommand(CommandTestCase):
    def test_deterministic_double_well_is_constant(self):
        execute(
            "simulate",
            model={"model": "doublewell", "epsilon": 0.0},
            n_steps=100,
        )
        rows = read_csv(output_file("series.csv"))
        rows = [row for row in rows if not row[0].startswith("#")]
        self.assertEqual(["t", "X"], rows[0])
        values = [float(row[1]) for row in rows[1:]]
        np.testing.assert_allclose(values, np.sqrt(2))
        run = read_json(output_file("run.json"))
        self.assertEqual(0, run["n_transitions"])
        self.assertEqual(100, run["n_steps"])
        self.assertEqual("doublewell", run["model"]["model"])

    def test_records_escapes_of_double_well(self):
        summary = execute(
            "simulate",
            model={"model": "doublewell", "epsilon": 0.8},
            n_steps=20000,
            record_escapes=True,
        )
        run = read_json(output_file("run.json"))
        self.assertEqual(summary["n_transitions"], len(run["escape_times"]))

    def test_recording_escapes_of_shear_model_raises(self):
        with self.assertRaises(ConfigError):
            execute("simulate", n_steps=100, record_escapes=True)


class TestSensitivityCommand(CommandTestCase):
    filenames = ["test-input.csv"]

    def test_writes_row_per_bin_length(self):
        write_minima_series("test-input.csv", shape=-0.2, count=4000)
        summary = execute(
            "sensitivity", input="test-input.csv", bin_lengths=[10, 20]
        )
        rows = read_csv(output_file("sensitivity.csv"))
        self.assertEqual(3, len(rows))
        self.assertEqual("bin_length", rows[0][0])
        self.assertIn(summary["plateau"], (True, False))

    def test_both_tails_raise(self):
        write_minima_series("test-input.csv", count=4000)
        with self.assertRaises(ConfigError):
            execute("sensitivity", input="test-input.csv", tail="both")


class TestKramersCommand(CommandTestCase):
    def test_writes_escape_statistics(self):
        summary = execute("kramers", epsilons=[0.8, 1.0], n_escapes=5)
        rows = read_csv(output_file("kramers.csv"))
        self.assertEqual(3, len(rows))
        result = read_json(output_file("kramers.json"))
        self.assertEqual(2, len(result["points"]))
        self.assertTrue(np.isfinite(summary["slope"]))


class TestCommandFactory(unittest.TestCase):
    def setUp(self):
        self.factory = commands.CommandFactory()

    def test_instantiate_class(self):
        pass

    def test_returns_command_per_subcommand(self):
        for name, class_name in self.factory.commands.items():
            with self.subTest(name=name):
                command = self.factory.get_command(config=RunConfig(name))
                self.assertEqual(class_name, command.__class__.__name__)
                self.assertEqual(name, command.config.command)

    def test_without_config_raises(self):
        with self.assertRaises(ConfigError):
            self.factory.get_command()
