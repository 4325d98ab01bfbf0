r"""
Test file for the `cli` module of the "holcert" library.

Notes
-----
#.  Written by David C. Stauffer in March 2020.
#.  Adapted to the holcert library with the verify command.
"""

# %% Imports
import json
import unittest
from unittest.mock import patch

import holcert as hc


# %% main
class Test_main(unittest.TestCase):
    r"""
    Tests the main function with the following cases:
        no command gives help
        version
        checks
        unknown command
        verify exit code
    """

    def _main(self, *args: str) -> tuple[int, str]:
        with patch("sys.argv", ["holcert", *args]):
            with hc.capture_output("all") as ctx:
                with self.assertRaises(SystemExit) as context:
                    hc.main()
            output = ctx.get_output()
            ctx.close()
        return (context.exception.code, output)  # type: ignore[return-value]

    def test_help(self) -> None:
        (code, output) = self._main()
        self.assertEqual(code, hc.ReturnCodes.clean)
        self.assertTrue(output.startswith("#######\nholcert\n#######\n"))

    def test_version(self) -> None:
        (code, output) = self._main("--version")
        self.assertEqual(code, hc.ReturnCodes.clean)
        self.assertEqual(output.strip(), ".".join(str(x) for x in hc.version_info))

    def test_checks(self) -> None:
        (code, output) = self._main("checks")
        self.assertEqual(code, hc.ReturnCodes.clean)
        self.assertEqual(output.splitlines(), hc.check_names())

    def test_unknown(self) -> None:
        (code, output) = self._main("certify")
        self.assertEqual(code, hc.ReturnCodes.bad_command)
        self.assertIn('Unknown command: "certify"', output)

    def test_verify(self) -> None:
        (code, output) = self._main("verify", "--fixture", "F0", "--checks", "metric.symmetric")
        self.assertEqual(code, hc.ReturnCodes.clean)
        self.assertEqual(json.loads(output)["summary"]["passed"], 1)


# %% print_help
class Test_print_help(unittest.TestCase):
    r"""
    Tests the print_help function with the following cases:
        Nominal
        Specified file
        Missing file
    """

    def test_nominal(self) -> None:
        with hc.capture_output() as ctx:
            rc = hc.print_help()
        output = ctx.get_output()
        ctx.close()
        self.assertEqual(rc, hc.ReturnCodes.clean)
        self.assertTrue(output.startswith("#######\nholcert\n#######\n"))

    def test_specify_file(self) -> None:
        help_file = hc.get_tests_dir() / "test_cli.py"
        with hc.capture_output() as ctx:
            hc.print_help(help_file)
        output = ctx.get_output()
        ctx.close()
        self.assertTrue(output.startswith('r"""\nTest file for the `cli` module'))

    def test_missing(self) -> None:
        with hc.capture_output() as ctx:
            rc = hc.print_help(hc.get_tests_dir() / "no_such_help.rst")
        output = ctx.get_output()
        ctx.close()
        self.assertEqual(rc, hc.ReturnCodes.bad_help_file)
        self.assertIn("was not found", output)


# %% print_version
class Test_print_version(unittest.TestCase):
    r"""
    Tests the print_version function with the following cases:
        Nominal
    """

    def test_nominal(self) -> None:
        with hc.capture_output() as ctx:
            rc = hc.print_version()
        output = ctx.get_output()
        ctx.close()
        self.assertEqual(rc, hc.ReturnCodes.clean)
        self.assertIn(".", output)


# %% print_checks
class Test_print_checks(unittest.TestCase):
    r"""
    Tests the print_checks function with the following cases:
        Nominal
    """

    def test_nominal(self) -> None:
        with hc.capture_output() as ctx:
            rc = hc.print_checks()
        output = ctx.get_output()
        ctx.close()
        self.assertEqual(rc, hc.ReturnCodes.clean)
        self.assertIn("christoffel.e21\n", output)
        self.assertIn("oracle.transport\n", output)


# %% parse_verify_args
class Test_parse_verify_args(unittest.TestCase):
    r"""
    Tests the parse_verify_args function with the following cases:
        defaults
        every option
    """

    def test_defaults(self) -> None:
        opts = hc.parse_verify_args([])
        self.assertIsNone(opts.config)
        self.assertIsNone(opts.corrupt_metric)
        self.assertEqual(opts.format, "json")
        self.assertFalse(opts.verbose)

    def test_options(self) -> None:
        opts = hc.parse_verify_args(
            ["--fixture", "F4", "--max-order", "2", "--mode", "exhaustive", "--seed", "3"]
            + ["--permutation", "reverse", "--corrupt-metric"]
        )
        self.assertEqual((opts.fixture, opts.max_order, opts.mode, opts.seed), ("F4", 2, "exhaustive", 3))
        self.assertEqual(opts.permutation, "reverse")
        self.assertTrue(opts.corrupt_metric)


# %% execute_verify
class Test_execute_verify(unittest.TestCase):
    r"""
    Tests the execute_verify function with the following cases:
        text report to the screen
        failing check
        no input
        bad option
        bad override
        report file
        configuration file with output paths
        unwritable report
        verbose logging to a file
    """

    def setUp(self) -> None:
        folder = hc.get_tests_dir()
        self.report_file = folder / "temp_cli_report.txt"
        self.config_file = folder / "temp_cli_config.json"
        self.json_file = folder / "temp_cli_report.json"
        self.log_file = folder / "temp_cli_log.txt"

    def _verify(self, *args: str) -> tuple[int, str, str]:
        with hc.capture_output("all") as ctx:
            rc = hc.execute_verify(list(args))
        output = ctx.get_output()
        error = ctx.get_error()
        ctx.close()
        return (rc, output, error)

    def test_text(self) -> None:
        (rc, output, _) = self._verify("--fixture", "F0", "--checks", "metric.symmetric", "--format", "text")
        self.assertEqual(rc, hc.ReturnCodes.clean)
        self.assertIn("metric.symmetric", output)
        self.assertIn("exit code 0", output)

    def test_failure(self) -> None:
        (rc, output, _) = self._verify("--fixture", "F1", "--corrupt-metric", "--checks", "christoffel.e21", "--max-order", "0")
        self.assertEqual(rc, hc.ReturnCodes.check_failures)
        self.assertEqual(json.loads(output)["checks"][0]["status"], "fail")

    def test_no_input(self) -> None:
        (rc, _, error) = self._verify("--checks", "metric")
        self.assertEqual(rc, hc.ReturnCodes.bad_config)
        self.assertIn("Configuration error", error)

    def test_bad_option(self) -> None:
        (rc, _, _) = self._verify("--fixture", "F0", "--nope")
        self.assertEqual(rc, hc.ReturnCodes.bad_command)

    def test_bad_override(self) -> None:
        (rc, _, error) = self._verify("--fixture", "F0", "--checks", "metric.nothing")
        self.assertEqual(rc, hc.ReturnCodes.bad_config)
        self.assertIn("metric.nothing", error)

    def test_output(self) -> None:
        (rc, output, _) = self._verify(
            "--fixture", "F0", "--checks", "metric.symmetric", "--format", "text", "--output", str(self.report_file)
        )
        self.assertEqual(rc, hc.ReturnCodes.clean)
        self.assertEqual(output, "")
        self.assertTrue(self.report_file.read_text(encoding="utf-8").startswith("holcert "))

    def test_config(self) -> None:
        data = {"fixture": "F0", "checks": ["metric.symmetric"], "output": {"json": self.json_file.name}}
        self.config_file.write_text(json.dumps(data), encoding="utf-8")
        (rc, _, _) = self._verify("--config", str(self.config_file), "--fixture", "F1")
        self.assertEqual(rc, hc.ReturnCodes.clean)
        report = hc.load_report(self.json_file)
        self.assertEqual(report["input"]["fixture"], "F1")

    def test_unwritable(self) -> None:
        path = hc.get_tests_dir() / "test_cli.py" / "report.json"
        (rc, _, error) = self._verify("--fixture", "F0", "--checks", "metric.symmetric", "--output", str(path))
        self.assertEqual(rc, hc.ReturnCodes.bad_folder)
        self.assertIn("Could not write the report", error)

    def test_logging(self) -> None:
        (rc, _, _) = self._verify(
            "--fixture", "F0", "--checks", "metric.symmetric", "--verbose", "--log-file", str(self.log_file)
        )
        self.assertEqual(rc, hc.ReturnCodes.clean)
        self.assertIn("metric.symmetric: pass", self.log_file.read_text(encoding="utf-8"))

    def tearDown(self) -> None:
        for file in (self.report_file, self.config_file, self.json_file, self.log_file):
            file.unlink(missing_ok=True)


# %% Unit test execution
if __name__ == "__main__":
    unittest.main(exit=False)
