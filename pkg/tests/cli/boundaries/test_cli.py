import contextlib
import io
import json
import logging
import os
import shutil
import unittest
from unittest import mock

import numpy as np

from gevtip.cli.boundaries import cli
from gevtip.series.boundaries.series import write_series_csv
from gevtip.series.entities.series import TimeSeries

OUTPUT = "test-output"


def write_file(filename, content):
    with open(filename, "w", encoding="utf8") as file:
        file.write(content)


class TestMain(unittest.TestCase):
    def setUp(self):
        self.filenames = ["test-input.csv", "test-config.json"]
        logging.disable(logging.WARNING)

    def tearDown(self):
        logging.disable(logging.NOTSET)
        if os.path.exists(OUTPUT):
            shutil.rmtree(OUTPUT)
        for filename in self.filenames:
            if os.path.exists(filename):
                os.remove(filename)

    def run_main(self, argv):
        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            exit_code = cli.main(argv)
        return exit_code, stdout.getvalue()

    def test_success_prints_summary(self):
        exit_code, text = self.run_main(
            [
                "simulate",
                "--model",
                "doublewell",
                "--param",
                "epsilon=0",
                "--steps",
                "50",
                "-o",
                OUTPUT,
            ]
        )
        self.assertEqual(0, exit_code)
        summary = json.loads(text)
        self.assertEqual("simulate", summary["command"])
        self.assertIn(os.path.join(OUTPUT, "series.csv"), summary["outputs"])

    def test_echoed_config_contains_flags(self):
        self.run_main(
            ["simulate", "--steps", "20", "--param", "mu=0.5", "-o", OUTPUT]
        )
        with open(os.path.join(OUTPUT, "config.json"), encoding="utf8") as f:
            config = json.load(f)
        self.assertEqual(20, config["n_steps"])
        self.assertEqual(0.5, config["model"]["mu"])
        self.assertEqual(OUTPUT, config["output"])

    def test_parse_error_reports_line(self):
        write_file("test-input.csv", "t,E\n0,1\n1,abc\n")
        exit_code, text = self.run_main(
            ["fit", "test-input.csv", "-o", OUTPUT]
        )
        self.assertEqual(1, exit_code)
        error = json.loads(text)
        self.assertEqual("ParseError", error["error"])
        self.assertEqual(3, error["line"])

    def test_missing_input_file_is_error(self):
        exit_code, text = self.run_main(["fit", "nonexisting.csv"])
        self.assertEqual(1, exit_code)
        self.assertEqual("FileNotFoundError", json.loads(text)["error"])

    def test_invalid_model_parameters_are_error(self):
        exit_code, text = self.run_main(
            ["simulate", "--param", "nu=0.3", "--steps", "10", "-o", OUTPUT]
        )
        self.assertEqual(1, exit_code)
        self.assertEqual("ParameterError", json.loads(text)["error"])

    def test_unknown_argument_is_config_error(self):
        exit_code, text = self.run_main(["fit", "--bogus", "3"])
        self.assertEqual(2, exit_code)
        self.assertEqual("ConfigError", json.loads(text)["error"])

    def test_invalid_argument_value_is_config_error(self):
        exit_code, _ = self.run_main(["simulate", "--steps", "many"])
        self.assertEqual(2, exit_code)

    def test_malformed_model_parameter_is_config_error(self):
        exit_code, _ = self.run_main(["simulate", "--param", "nu"])
        self.assertEqual(2, exit_code)

    def test_missing_command_is_config_error(self):
        exit_code, _ = self.run_main([])
        self.assertEqual(2, exit_code)

    def test_unknown_key_in_config_file_is_config_error(self):
        write_file("test-config.json", '{"simulate": {"steps": 10}}')
        exit_code, text = self.run_main(
            ["simulate", "--config", "test-config.json"]
        )
        self.assertEqual(2, exit_code)
        self.assertIn("steps", json.loads(text)["message"])

    def test_missing_config_file_is_config_error(self):
        exit_code, _ = self.run_main(
            ["simulate", "--config", "nonexisting.json"]
        )
        self.assertEqual(2, exit_code)

    def test_unknown_model_key_is_config_error(self):
        exit_code, _ = self.run_main(
            ["simulate", "--param", "eta=1", "-o", OUTPUT]
        )
        self.assertEqual(2, exit_code)

    def test_no_crossing_is_success(self):
        values = np.random.default_rng(3).normal(size=2000)
        write_series_csv(
            TimeSeries(values=values, control_value=1.0), "test-input.csv"
        )
        exit_code, text = self.run_main(
            ["scan-data", "test-input.csv", "-m", "20", "-o", OUTPUT]
        )
        self.assertEqual(0, exit_code)
        self.assertIsNone(json.loads(text)["control_critical"])
        threshold = os.path.join(OUTPUT, "threshold.json")
        with open(threshold, encoding="utf8") as file:
            self.assertIsNone(json.load(file)["crossing"])

    def test_help_exits_successfully(self):
        exit_code, text = self.run_main(["--help"])
        self.assertEqual(0, exit_code)
        self.assertIn("scan-model", text)


class TestResolveConfig(unittest.TestCase):
    def setUp(self):
        self.filename = "test-config.json"
        logging.disable(logging.WARNING)

    def tearDown(self):
        logging.disable(logging.NOTSET)
        if os.path.exists(self.filename):
            os.remove(self.filename)

    def resolve(self, argv, environment=None):
        arguments = cli._parser().parse_args(argv)
        return cli.resolve_config(arguments, environment=environment or {})

    def test_defaults_without_flags(self):
        config = self.resolve(["scan-model"])
        self.assertEqual(10, config["n_realizations"])
        self.assertEqual({"model": "shear"}, config["model"])

    def test_flags_override_config_file(self):
        write_file(
            self.filename,
            '{"scan-model": {"n_realizations": 3, "n_bins": 20}}',
        )
        config = self.resolve(
            ["scan-model", "--config", self.filename, "--realizations", "5"]
        )
        self.assertEqual(5, config["n_realizations"])
        self.assertEqual(20, config["n_bins"])

    def test_environment_sets_workers(self):
        config = self.resolve(["kramers"], {"GEVTIP_WORKERS": "3"})
        self.assertEqual(3, config["workers"])

    def test_flag_overrides_environment(self):
        config = self.resolve(
            ["kramers", "--workers", "2"], {"GEVTIP_WORKERS": "3"}
        )
        self.assertEqual(2, config["workers"])

    def test_environment_is_read_by_main(self):
        with mock.patch.dict(os.environ, {"GEVTIP_WORKERS": "0"}):
            with contextlib.redirect_stdout(io.StringIO()):
                exit_code = cli.main(["kramers"])
        self.assertEqual(2, exit_code)

    def test_model_parameters_merge_with_config_file(self):
        write_file(
            self.filename,
            '{"scan-model": {"model": {"model": "shear", "nu": 0.24}}}',
        )
        config = self.resolve(
            ["scan-model", "--config", self.filename, "--param", "mu=0.5"]
        )
        self.assertEqual(
            {"model": "shear", "nu": 0.24, "mu": 0.5}, config["model"]
        )

    def test_other_model_replaces_parameters(self):
        config = self.resolve(
            [
                "scan-model",
                "--param",
                "nu=0.24",
                "--model",
                "doublewell",
                "--param",
                "epsilon=0.3",
            ]
        )
        self.assertEqual(
            {"model": "doublewell", "epsilon": 0.3}, config["model"]
        )

    def test_integer_model_parameters(self):
        config = self.resolve(["simulate", "--param", "seed=4"])
        self.assertIsInstance(config["model"]["seed"], int)

    def test_pairs_have_integer_bin_lengths(self):
        config = self.resolve(
            ["rescale", "--pair", "100", "0.4", "--pair", "1000", "0.33"]
        )
        self.assertEqual([[100, 0.4], [1000, 0.33]], config["pairs"])
        self.assertIsInstance(config["pairs"][0][0], int)

    def test_option_names_map_to_config_keys(self):
        config = self.resolve(
            [
                "fit",
                "input.csv",
                "--item",
                "/energy",
                "--control-value",
                "300",
                "--burn-in",
                "0.2",
                "--pre-blocked",
                "-m",
                "50",
            ]
        )
        self.assertEqual("input.csv", config["input"])
        self.assertEqual("/energy", config["hdf5_item"])
        self.assertEqual(300, config["control_value"])
        self.assertEqual(0.2, config["burn_in_fraction"])
        self.assertTrue(config["pre_blocked"])
        self.assertEqual(50, config["bin_length"])

    def test_lambda_of_kramers(self):
        config = self.resolve(["kramers", "--lambda", "0.1"])
        self.assertEqual(0.1, config["lambda"])

    def test_verbosity_is_counted(self):
        arguments = cli._parser().parse_args(["fit", "-vv"])
        self.assertEqual(2, arguments.verbose)
