r"""
Functions related to the command-line interface (CLI) for the holcert library.

Notes
-----
#.  Written by David C. Stauffer in March 2020.
#.  Adapted for the holcert library with the verify command that runs the check catalogue.
"""

# %% Imports
from __future__ import annotations

import argparse
import doctest
import logging
from pathlib import Path
import sys
from typing import Sequence
import unittest

from holcert.checks import check_names, run_checks
from holcert.config import apply_overrides, parse_config, RunConfig
from holcert.enums import LogLevel, ReturnCodes
from holcert.fixtures import get_fixture, list_fixtures
from holcert.logs import activate_logging, deactivate_logging, flush_logging
from holcert.oracle import OracleError
from holcert.paths import get_root_dir, get_tests_dir
from holcert.report import emit_report
from holcert.utils import ConsistencyError, InputError
from holcert.version import version_info

# %% Globals
logger = logging.getLogger(__name__)


# %% Functions - main
def main() -> int:
    r"""Main function called when executed using the command line api."""
    # check for no command option
    if len(sys.argv) >= 2:
        command = sys.argv[1].lower()
    else:
        command = "help"
    # check for alternative forms of help with the base command
    if command in {"help", "--help", "-h"}:
        try:
            return_code = print_help()
        except:
            return_code = ReturnCodes.bad_help_file
    elif command in {"version", "--version", "-v"}:
        try:
            return_code = print_version()
        except:
            return_code = ReturnCodes.clean
    elif command == "verify":
        return_code = execute_verify(sys.argv[2:])
    elif command == "checks":
        return_code = print_checks()
    elif command == "tests":
        # run tests using pytest
        import pytest  # pylint: disable=import-outside-toplevel

        exit_code = pytest.main([str(get_tests_dir()), "-rfEsP"] + sys.argv[2:])
        return_code = ReturnCodes.clean if exit_code == 0 else ReturnCodes.test_failures
    else:
        print(f'Unknown command: "{command}"')
        return_code = ReturnCodes.bad_command
    return sys.exit(return_code)


# %% Functions - parse_verify_args
def parse_verify_args(args: Sequence[str]) -> argparse.Namespace:
    r"""
    Parse the options of the verify command.

    Examples
    --------
    >>> from holcert import parse_verify_args
    >>> opts = parse_verify_args(["--fixture", "F1", "--checks", "metric,christoffel.e21"])
    >>> print(opts.fixture, opts.checks)
    F1 metric,christoffel.e21

    """
    parser = argparse.ArgumentParser(
        prog="holcert verify", description="Build the metric for a subalgebra h of so(n) and certify its holonomy."
    )
    parser.add_argument("-c", "--config", type=Path, help="JSON run configuration")
    parser.add_argument("--fixture", choices=list_fixtures(), help="built-in generator set, overrides the configuration")
    parser.add_argument("--max-order", type=int, help="maximum derivative order of the curvature tower")
    parser.add_argument("--mode", choices=["pruned", "exhaustive"], help="how the holonomy operators are enumerated")
    parser.add_argument("--format", choices=["json", "text"], default="json", help="report format")
    parser.add_argument("-o", "--output", type=Path, help="file for the report, otherwise standard output")
    parser.add_argument("--seed", type=int, help="seed for the oracle sample points and random inputs")
    parser.add_argument("--checks", help="comma separated check names or dotted prefixes")
    parser.add_argument("--permutation", help='reordering of the generators, "reverse" or e.g. "2,1,3"')
    parser.add_argument("--corrupt-metric", action="store_true", default=None, help="perturb the metric on purpose")
    parser.add_argument("-V", "--verbose", action="store_true", help="log every stage with its timing")
    parser.add_argument("--log-file", type=Path, help="also log to this file")
    return parser.parse_args(list(args))


# %% Functions - execute_verify
def execute_verify(args: Sequence[str]) -> int:
    r"""
    Run the verify command and return its exit code.

    Parameters
    ----------
    args : list of str
        Command line options after the command name

    Returns
    -------
    return_code : int
        clean, check_failures, bad_config, bad_folder, bad_command or pipeline_error

    Examples
    --------
    >>> from holcert import execute_verify
    >>> rc = execute_verify(["--fixture", "F0", "--checks", "metric.symmetric", "--format", "text"])  # doctest: +SKIP

    """
    try:
        opts = parse_verify_args(args)
    except SystemExit as exc:
        return ReturnCodes.clean if exc.code == 0 else ReturnCodes.bad_command
    logging_on = opts.verbose or opts.log_file is not None
    if logging_on:
        activate_logging(LogLevel.L8 if opts.verbose else LogLevel.L3, opts.log_file)
    try:
        return _verify(opts)
    finally:
        if logging_on:
            flush_logging()
            deactivate_logging()


def _verify(opts: argparse.Namespace) -> int:
    try:
        cfg = _build_config(opts)
    except InputError as exc:
        print(f"Configuration error: {exc}", file=sys.stderr)
        return ReturnCodes.bad_config
    try:
        report = run_checks(cfg)
    except InputError as exc:
        print(f"Configuration error: {exc}", file=sys.stderr)
        return ReturnCodes.bad_config
    except (ConsistencyError, OracleError) as exc:
        logger.log(LogLevel.L0, "Pipeline aborted: %s", exc)
        print(f"Pipeline error: {exc}", file=sys.stderr)
        return ReturnCodes.pipeline_error
    destinations = [(fmt, path) for (fmt, path) in (("json", cfg.output_json), ("text", cfg.output_text)) if path]
    if opts.output is not None:
        destinations.append((opts.format, opts.output))
    try:
        if not destinations:
            print(emit_report(report, opts.format), end="")
        for (fmt, path) in destinations:
            emit_report(report, fmt, path)  # type: ignore[arg-type]
    except OSError as exc:
        print(f"Could not write the report: {exc}", file=sys.stderr)
        return ReturnCodes.bad_folder
    return report.exit_code


def _build_config(opts: argparse.Namespace) -> RunConfig:
    if opts.config is not None:
        cfg = parse_config(opts.config)
    elif opts.fixture is not None:
        fix = get_fixture(opts.fixture)
        cfg = RunConfig(spec=fix.spec, fixture=fix.name)
    else:
        raise InputError("Give a configuration file with --config or a built-in input with --fixture.")
    checks = None if opts.checks is None else [x for x in opts.checks.split(",") if x.strip()]
    return apply_overrides(
        cfg,
        fixture=opts.fixture if opts.config is not None else None,
        max_order=opts.max_order,
        mode=opts.mode,
        checks=checks,
        seed=opts.seed,
        permutation=opts.permutation,
        corrupt_metric=opts.corrupt_metric,
    )


# %% Functions - print_help
def print_help(help_file: Path | None = None) -> int:
    r"""
    Prints the contents of the README.rst file.

    Returns
    -------
    return_code : int
        Return code for whether the help file was successfully loaded

    Examples
    --------
    >>> from holcert import print_help
    >>> print_help() # doctest: +SKIP

    """
    if help_file is None:
        help_file = get_root_dir().parent / "README.rst"
    if not help_file.is_file():
        print(f'Warning: help file at "{help_file}" was not found.')
        return ReturnCodes.bad_help_file
    with open(help_file, encoding="utf-8") as file:
        text = file.read()
    print(text)
    return ReturnCodes.clean


# %% Functions - print_version
def print_version() -> int:
    r"""Prints the version of the library.

    Returns
    -------
    return_code : int
        Return code for whether the version was successfully read

    Examples
    --------
    >>> from holcert import print_version
    >>> print_version()  # doctest: +SKIP

    """
    try:
        version = ".".join(str(x) for x in version_info)
        return_code = ReturnCodes.clean
    except:
        version = "unknown"
        return_code = ReturnCodes.bad_version
    print(version)
    return return_code


# %% Functions - print_checks
def print_checks() -> int:
    r"""
    Prints the name of every registered check, one per line.

    Examples
    --------
    >>> from holcert import print_checks
    >>> rc = print_checks()  # doctest: +ELLIPSIS
    input.subalgebra
    metric.origin_eta
    ...

    """
    for name in check_names():
        print(name)
    return ReturnCodes.clean


# %% Unit test
if __name__ == "__main__":
    unittest.main(module="holcert.tests.test_cli", exit=False)
    doctest.testmod(verbose=False)
