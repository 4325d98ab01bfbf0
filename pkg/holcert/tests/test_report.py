r"""
Test file for the `report` module of the "holcert" library.

Notes
-----
#.  Written for the holcert library.
"""

# %% Imports
import json
from typing import Any
import unittest

import holcert as hc


# %% Support
def _run(**kwargs: Any) -> hc.CheckReport:
    kwargs.setdefault("checks", ("metric.symmetric", "christoffel.e21", "holonomy.pruning"))
    return hc.run_checks(hc.RunConfig(spec=hc.get_fixture("F1").spec, fixture="F1", max_order=0, **kwargs))


# %% report_to_dict
class Test_report_to_dict(unittest.TestCase):
    r"""
    Tests the report_to_dict function with the following cases:
        top level keys
        check entries
        summary
        failing witnesses
    """

    @classmethod
    def setUpClass(cls) -> None:
        cls.data = hc.report_to_dict(_run())

    def test_keys(self) -> None:
        self.assertEqual(set(self.data), {"tool", "input", "notes", "dimensions", "checks", "summary"})
        self.assertEqual(self.data["tool"]["name"], "holcert")
        self.assertEqual(self.data["input"]["n"], 2)

    def test_checks(self) -> None:
        names = [check["name"] for check in self.data["checks"]]
        self.assertEqual(names, ["metric.symmetric", "christoffel.e21", "holonomy.pruning"])
        self.assertEqual(self.data["checks"][0]["status"], "pass")
        self.assertEqual(self.data["checks"][2]["status"], "skipped")
        self.assertEqual(self.data["checks"][1]["witnesses"], [])
        self.assertEqual(self.data["checks"][1]["location"], "e21")
        self.assertNotIn("statement", self.data["checks"][1])

    def test_summary(self) -> None:
        summary = self.data["summary"]
        self.assertEqual((summary["passed"], summary["failed"], summary["heuristic"], summary["skipped"]), (2, 0, 0, 1))
        self.assertEqual(summary["exit_code"], 0)

    def test_witnesses(self) -> None:
        data = hc.report_to_dict(_run(corrupt_metric=True, checks=("christoffel.e21",)))
        witnesses = data["checks"][0]["witnesses"]
        self.assertGreater(len(witnesses), 0)
        self.assertEqual(set(witnesses[0]), {"index", "value"})
        self.assertEqual(data["summary"]["exit_code"], hc.ReturnCodes.check_failures)


# %% report_to_json
class Test_report_to_json(unittest.TestCase):
    r"""
    Tests the report_to_json function with the following cases:
        identical runs give identical text
        sorted keys and trailing newline
    """

    def test_deterministic(self) -> None:
        self.assertEqual(hc.report_to_json(_run()), hc.report_to_json(_run()))

    def test_format(self) -> None:
        text = hc.report_to_json(_run())
        self.assertTrue(text.endswith("}\n"))
        self.assertEqual(text, json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n")
        self.assertNotIn("timings", json.loads(text))


# %% report_to_text
class Test_report_to_text(unittest.TestCase):
    r"""
    Tests the report_to_text function with the following cases:
        header and sections
        witnesses listed
    """

    def test_sections(self) -> None:
        text = hc.report_to_text(_run())
        lines = text.splitlines()
        self.assertTrue(lines[0].startswith("holcert "))
        self.assertTrue(lines[0].endswith(" verification report"))
        self.assertIn("Input: F1, n = 2, N = 1, max order 0, pruned mode", lines)
        self.assertIn("Summary: 2 passed, 0 failed, 0 heuristic, 1 skipped, exit code 0", lines)
        self.assertIn("Timings:", lines)
        self.assertIn("Dimensions: ambient 6, holonomy -, g^h -, expected 6", lines)
        (line,) = [line for line in lines if "christoffel.e21" in line]
        self.assertTrue(line.endswith("] e21: Christoffel list: Gamma^i_{j,n+4} = A^i_{j alpha} (x^{n+3})^alpha"))

    def test_witnesses(self) -> None:
        text = hc.report_to_text(_run(corrupt_metric=True, checks=("christoffel.e21",)))
        self.assertIn("      witness ", text)
        self.assertIn("exit code 8", text)


# %% emit_report and load_report
class Test_emit_report(unittest.TestCase):
    r"""
    Tests the emit_report and load_report functions with the following cases:
        returns the text without a path
        writes a new folder
        unknown format
        reads a written report
        missing, invalid and incomplete files
    """

    @classmethod
    def setUpClass(cls) -> None:
        cls.report = _run()

    def setUp(self) -> None:
        self.folder = hc.get_tests_dir() / "temp_reports"
        self.filename = self.folder / "report.json"

    def test_no_path(self) -> None:
        self.assertEqual(hc.emit_report(self.report), hc.report_to_json(self.report))
        self.assertEqual(hc.emit_report(self.report, "text"), hc.report_to_text(self.report))

    def test_write(self) -> None:
        text = hc.emit_report(self.report, "json", self.filename)
        self.assertEqual(self.filename.read_text(encoding="utf-8"), text)

    def test_bad_format(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.emit_report(self.report, "xml")  # type: ignore[arg-type]

    def test_load(self) -> None:
        hc.emit_report(self.report, "json", self.filename)
        data = hc.load_report(self.filename)
        self.assertEqual(data, hc.report_to_dict(self.report))

    def test_load_bad(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.load_report(self.folder / "missing.json")
        self.folder.mkdir(exist_ok=True)
        self.filename.write_text("[1, 2", encoding="utf-8")
        with self.assertRaises(hc.InputError):
            hc.load_report(self.filename)
        self.filename.write_text('{"tool": {}}', encoding="utf-8")
        with self.assertRaises(hc.InputError):
            hc.load_report(str(self.filename))

    def tearDown(self) -> None:
        self.filename.unlink(missing_ok=True)
        if self.folder.is_dir():
            self.folder.rmdir()


# %% Unit test execution
if __name__ == "__main__":
    unittest.main(exit=False)
