r"""
Test file for the `checks` module of the "holcert" library.

Notes
-----
#.  Written for the holcert library.
"""

# %% Imports
from typing import Any
import unittest

import holcert as hc


# %% Support
def _config(name: str, **kwargs: Any) -> hc.RunConfig:
    kwargs.setdefault("oracle", hc.OracleSettings(points=1))
    return hc.RunConfig(spec=hc.get_fixture(name).spec, fixture=name, **kwargs)


# %% check_names
class Test_check_names(unittest.TestCase):
    r"""
    Tests the check_names function with the following cases:
        catalogue order
        dotted unique names
    """

    def test_order(self) -> None:
        names = hc.check_names()
        self.assertEqual(names[0], "input.subalgebra")
        self.assertLess(names.index("metric.inverse"), names.index("christoffel.e21"))
        self.assertLess(names.index("christoffel.e21"), names.index("holonomy.equality"))
        self.assertEqual(names, list(hc.CATALOGUE))

    def test_names(self) -> None:
        names = hc.check_names()
        self.assertEqual(len(names), len(set(names)))
        for name in names:
            self.assertIn(".", name)
            self.assertTrue(hc.CATALOGUE[name].location)
            self.assertTrue(hc.CATALOGUE[name].statement)
        self.assertEqual(set(hc.SOURCES), set(names))
        self.assertEqual(hc.CATALOGUE["lemma3.e107"].location, "e107")
        self.assertEqual(hc.CATALOGUE["e140.bracket"].location, "e140")


# %% select_checks
class Test_select_checks(unittest.TestCase):
    r"""
    Tests the select_checks function with the following cases:
        everything
        prefix
        exact name
        catalogue order regardless of pattern order
        unknown pattern
    """

    def test_all(self) -> None:
        self.assertEqual(hc.select_checks([]), hc.check_names())

    def test_prefix(self) -> None:
        names = hc.select_checks(["christoffel"])
        self.assertEqual(len(names), 8)
        self.assertTrue(all(name.startswith("christoffel.") for name in names))

    def test_exact(self) -> None:
        self.assertEqual(hc.select_checks([" metric.inverse "]), ["metric.inverse"])

    def test_order(self) -> None:
        self.assertEqual(hc.select_checks(["e140.tail", "input"]), ["input.subalgebra", "e140.tail"])

    def test_unknown(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.select_checks(["metric.nothing"])
        with self.assertRaises(hc.InputError):
            hc.select_checks(["christ"])


# %% run_checks
class Test_run_checks(unittest.TestCase):
    r"""
    Tests the run_checks function with the following cases:
        full catalogue for h = so(2)
        skipped checks
        heuristic probe
        dimensions
        report bookkeeping
        unknown result
    """

    @classmethod
    def setUpClass(cls) -> None:
        cls.report = hc.run_checks(_config("F1", max_order=1))

    def test_clean(self) -> None:
        self.assertEqual(self.report.failed, [])
        self.assertEqual(self.report.exit_code, hc.ReturnCodes.clean)
        self.assertEqual([check.name for check in self.report.checks], hc.check_names())

    def test_skipped(self) -> None:
        for name in ("holonomy.pruning", "holonomy.permutation", "e140.bracket"):
            self.assertEqual(self.report.result(name).status, hc.CheckStatus.skipped, name)
            self.assertEqual(self.report.result(name).count, 0)

    def test_heuristic(self) -> None:
        self.assertEqual(self.report.result("irreducibility.probe").status, hc.CheckStatus.heuristic_pass)

    def test_passed(self) -> None:
        for name in ("christoffel.e21", "curvature.e70", "e130.factorial", "holonomy.equality", "oracle.transport"):
            result = self.report.result(name)
            self.assertEqual(result.status, hc.CheckStatus.passed, name)
            self.assertGreater(result.count, 0)
            self.assertEqual(result.witnesses, ())

    def test_dimensions(self) -> None:
        self.assertEqual(dict(self.report.dimensions), {"ambient": 6, "expected": 6, "holonomy": 6, "gh": 6})

    def test_bookkeeping(self) -> None:
        total = sum(self.report.tally(status) for status in hc.CheckStatus)
        self.assertEqual(total, len(self.report.checks))
        self.assertEqual(self.report.tool["name"], "holcert")
        self.assertEqual(self.report.input_summary["fixture"], "F1")
        self.assertEqual(self.report.input_summary["generators"], [[["0/1", "-1/1"], ["1/1", "0/1"]]])
        self.assertIn("curvature order 0", self.report.timings)

    def test_unknown_result(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.run_checks(_config("F0", checks=("metric.symmetric",))).result("metric.inverse")


# %% run_checks with a corrupted metric
class Test_run_checks_corrupt(unittest.TestCase):
    r"""
    Tests the run_checks function with a deliberately corrupted metric with the following cases:
        the Christoffel list fails with witnesses
        symmetry still holds
        note on the corruption
    """

    @classmethod
    def setUpClass(cls) -> None:
        cfg = _config("F1", max_order=0, corrupt_metric=True, checks=("christoffel.e21", "metric.symmetric"))
        cls.report = hc.run_checks(cfg)

    def test_fails(self) -> None:
        result = self.report.result("christoffel.e21")
        self.assertEqual(result.status, hc.CheckStatus.failed)
        self.assertGreater(len(result.witnesses), 0)
        self.assertLessEqual(len(result.witnesses), hc.MAX_WITNESSES)
        self.assertIn("failed", result.detail)
        self.assertEqual(self.report.exit_code, hc.ReturnCodes.check_failures)

    def test_symmetric(self) -> None:
        self.assertEqual(self.report.result("metric.symmetric").status, hc.CheckStatus.passed)

    def test_note(self) -> None:
        self.assertTrue(any("negative control" in note for note in self.report.notes))
        self.assertEqual(self.report.notes[:3], (hc.TYPO_NOTE, hc.SIGN_NOTE, hc.DOMAIN_NOTE))
        self.assertTrue(self.report.input_summary["corrupt_metric"])


# %% run_checks for other inputs
class Test_run_checks_inputs(unittest.TestCase):
    r"""
    Tests the run_checks function with the following cases:
        h = 0 skips the bracket formula
        so(3) bracket formula
        exhaustive enumeration against pruning
        reordered basis
    """

    def test_zero(self) -> None:
        report = hc.run_checks(_config("F0", checks=("e140",)))
        self.assertEqual(report.result("e140.bracket").status, hc.CheckStatus.skipped)
        self.assertEqual(report.result("e140.tail").status, hc.CheckStatus.passed)
        self.assertIsNone(report.dimensions["holonomy"])

    def test_so3(self) -> None:
        report = hc.run_checks(_config("F4", max_order=2, checks=("e130", "e140.bracket")))
        self.assertEqual(report.failed, [])
        self.assertEqual(report.result("e140.bracket").status, hc.CheckStatus.passed)
        self.assertTrue(any("below N" in note for note in report.notes))

    def test_exhaustive(self) -> None:
        cfg = _config("F1", max_order=1, mode=hc.EnumerationMode.exhaustive, checks=("holonomy.pruning",))
        result = hc.run_checks(cfg).result("holonomy.pruning")
        self.assertEqual(result.status, hc.CheckStatus.passed)
        self.assertIn("direction tuples enumerated", result.detail)

    def test_permutation(self) -> None:
        cfg = _config("F3", max_order=1, permutation=(2, 1), checks=("holonomy.permutation",))
        result = hc.run_checks(cfg).result("holonomy.permutation")
        self.assertEqual(result.status, hc.CheckStatus.passed)
        self.assertIn("the permuted metric differs", result.detail)


# %% run_checks over the built-in inputs at the default order
class Test_run_checks_fixtures(unittest.TestCase):
    r"""
    Tests the run_checks function on every built-in input at order N + 1 in pruned mode with the
    following cases:
        F0 through F4 pass every exact check
        the holonomy span has the g^h dimension
    """

    def _sweep(self, name: str) -> None:
        report = hc.run_checks(_config(name))
        self.assertEqual([check.name for check in report.failed], [], name)
        self.assertEqual(report.exit_code, hc.ReturnCodes.clean, name)
        expected = hc.get_fixture(name).expected_dimension
        self.assertEqual(dict(report.dimensions)["holonomy"], expected, name)
        self.assertEqual(dict(report.dimensions)["gh"], expected, name)
        self.assertEqual(report.result("lemma3.iii").status, hc.CheckStatus.passed, name)

    def test_f0(self) -> None:
        self._sweep("F0")

    def test_f1(self) -> None:
        self._sweep("F1")

    def test_f2(self) -> None:
        self._sweep("F2")

    def test_f3(self) -> None:
        self._sweep("F3")

    def test_f4(self) -> None:
        self._sweep("F4")


# %% run_checks over seeded random inputs
class Test_run_checks_random(unittest.TestCase):
    r"""
    Tests the run_checks function on seeded random one-dimensional h with the following cases:
        Christoffel, curvature and holonomy families pass for n from 3 to 6
    """

    def test_random(self) -> None:
        for n, seed in ((3, 1), (4, 2), (5, 3), (6, 4), (6, 5)):
            spec = hc.random_h(n, seed=seed).spec
            cfg = hc.RunConfig(spec=spec, random_seed=seed, checks=("christoffel", "curvature", "holonomy"))
            report = hc.run_checks(cfg)
            self.assertEqual([check.name for check in report.failed], [], (n, seed))
            self.assertEqual(report.exit_code, hc.ReturnCodes.clean, (n, seed))
            self.assertEqual(report.result("holonomy.equality").status, hc.CheckStatus.passed, (n, seed))


# %% run_checks beyond the first derivative
class Test_run_checks_order_two(unittest.TestCase):
    r"""
    Tests the run_checks function at order 2 with the following cases:
        exhaustive enumeration adds nothing to the pruned set for a 1-dimensional h in so(4)
        exhaustive enumeration adds nothing for so(3)
        reversed so(3) basis gives the same holonomy in both modes
    """

    def test_pruning_so4(self) -> None:
        cfg = _config("F2", max_order=2, mode=hc.EnumerationMode.exhaustive, checks=("holonomy",))
        report = hc.run_checks(cfg)
        self.assertEqual(report.result("holonomy.pruning").status, hc.CheckStatus.passed)
        self.assertEqual(report.result("holonomy.equality").status, hc.CheckStatus.passed)
        self.assertEqual(report.exit_code, hc.ReturnCodes.clean)

    def test_pruning_so3(self) -> None:
        cfg = _config("F4", max_order=2, mode=hc.EnumerationMode.exhaustive, checks=("holonomy.pruning",))
        self.assertEqual(hc.run_checks(cfg).result("holonomy.pruning").status, hc.CheckStatus.passed)

    def test_permutation(self) -> None:
        for mode in hc.EnumerationMode:
            cfg = _config("F4", max_order=2, mode=mode, permutation=(3, 2, 1), checks=("holonomy.permutation",))
            result = hc.run_checks(cfg).result("holonomy.permutation")
            self.assertEqual(result.status, hc.CheckStatus.passed, mode)
            self.assertIn("the permuted metric differs", result.detail)


# %% Unit test execution
if __name__ == "__main__":
    unittest.main(exit=False)
