r"""
Serialization of check reports as deterministic JSON or as human readable text.

Notes
-----
#.  Written for the holcert library.
"""

# %% Imports
from __future__ import annotations

import doctest
import json
import logging
from pathlib import Path
from typing import Any, Literal
import unittest

from holcert.checks import CheckReport
from holcert.enums import CheckStatus, LogLevel
from holcert.utils import InputError

# %% Globals
logger = logging.getLogger(__name__)

ReportFormat = Literal["json", "text"]


# %% Functions - report_to_dict
def report_to_dict(report: CheckReport) -> dict[str, Any]:
    r"""
    Plain data form of a report, without timings so that identical runs give identical output.

    Examples
    --------
    >>> from holcert import RunConfig, get_fixture, report_to_dict, run_checks
    >>> report = run_checks(RunConfig(spec=get_fixture("F0").spec, fixture="F0", checks=("metric.symmetric",)))
    >>> data = report_to_dict(report)
    >>> print(data["checks"][0]["status"], data["summary"]["exit_code"])
    pass 0

    """
    return {
        "tool": dict(report.tool),
        "input": dict(report.input_summary),
        "notes": list(report.notes),
        "dimensions": dict(report.dimensions),
        "checks": [
            {
                "name": check.name,
                "status": check.status.value,
                "location": check.location,
                "count": check.count,
                "detail": check.detail,
                "witnesses": [{"index": w.index, "value": w.value} for w in check.witnesses],
            }
            for check in report.checks
        ],
        "summary": {
            "passed": report.tally(CheckStatus.passed),
            "failed": report.tally(CheckStatus.failed),
            "heuristic": report.tally(CheckStatus.heuristic_pass),
            "skipped": report.tally(CheckStatus.skipped),
            "exit_code": report.exit_code,
        },
    }


# %% Functions - report_to_json
def report_to_json(report: CheckReport) -> str:
    r"""JSON text with sorted keys, two-space indent and a trailing newline."""
    return json.dumps(report_to_dict(report), sort_keys=True, indent=2) + "\n"


# %% Functions - report_to_text
def report_to_text(report: CheckReport) -> str:
    r"""
    Text report: notes, one line per check with its certified statement, witnesses, dimensions and timings.

    Examples
    --------
    >>> from holcert import RunConfig, get_fixture, report_to_text, run_checks
    >>> report = run_checks(RunConfig(spec=get_fixture("F0").spec, fixture="F0", checks=("metric.symmetric",)))
    >>> print(report_to_text(report).splitlines()[0])  # doctest: +ELLIPSIS
    holcert ... verification report

    """
    inputs = report.input_summary
    lines = [f"{report.tool['name']} {report.tool['version']} verification report", "", "Notes:"]
    lines.extend(f"  - {note}" for note in report.notes)
    lines.append("")
    source = inputs["fixture"] or ("random" if inputs.get("random_seed") is not None else "generators")
    lines.append(
        f"Input: {source}, n = {inputs['n']}, N = {inputs['N']}, max order {inputs['max_order']}, {inputs['mode']} mode"
    )
    lines.append("")
    lines.append("Checks:")
    width = max((len(check.name) for check in report.checks), default=0)
    for check in report.checks:
        lines.append(f"  {check.status.value:<14} {check.name:<{width}}  [{check.count}] {check.location}: {check.statement}")
        if check.detail:
            lines.append(f"  {'':<14} {'':<{width}}  {check.detail}")
        for witness in check.witnesses:
            lines.append(f"      witness {witness.index}: {witness.value}")
    lines.append("")
    dims = report.dimensions
    lines.append(
        "Dimensions: "
        + ", ".join(f"{label} {'-' if dims.get(key) is None else dims[key]}" for (key, label) in _DIMENSION_LABELS)
    )
    lines.append(
        f"Summary: {report.tally(CheckStatus.passed)} passed, {report.tally(CheckStatus.failed)} failed, "
        f"{report.tally(CheckStatus.heuristic_pass)} heuristic, {report.tally(CheckStatus.skipped)} skipped, "
        f"exit code {report.exit_code}"
    )
    if report.timings:
        lines.append("")
        lines.append("Timings:")
        label_width = max(len(label) for label in report.timings)
        lines.extend(f"  {label:<{label_width}}  {seconds:9.3f} s" for (label, seconds) in report.timings.items())
    return "\n".join(lines) + "\n"


_DIMENSION_LABELS = (("ambient", "ambient"), ("holonomy", "holonomy"), ("gh", "g^h"), ("expected", "expected"))


# %% Functions - emit_report
def emit_report(report: CheckReport, fmt: ReportFormat = "json", path: Path | None = None) -> str:
    r"""
    Render a report and optionally write it to a file.

    Parameters
    ----------
    report : CheckReport
        Results to render
    fmt : {"json", "text"}
        Output format
    path : pathlib.Path, optional
        Destination file, parent folders are created

    Returns
    -------
    str
        The rendered report

    Raises
    ------
    InputError
        For an unknown format
    OSError
        When the path cannot be written
    """
    if fmt == "json":
        text = report_to_json(report)
    elif fmt == "text":
        text = report_to_text(report)
    else:
        raise InputError(f'Unknown report format "{fmt}", expected "json" or "text".')
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.log(LogLevel.L5, 'Wrote the %s report to "%s"', fmt, path)
    return text


# %% Functions - load_report
def load_report(path: Path | str) -> dict[str, Any]:
    r"""Read a JSON report back into plain data."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f'Report "{path}" does not exist.') from None
    except json.JSONDecodeError as exc:
        raise InputError(f'Report "{path}" is not valid JSON: {exc}') from None
    if not isinstance(data, dict) or "checks" not in data:
        raise InputError(f'Report "{path}" is missing its checks.')
    return data


# %% Unit test
if __name__ == "__main__":
    unittest.main(module="holcert.tests.test_report", exit=False)
    doctest.testmod(verbose=False)
