r"""
Test file for the `paths` module of the "holcert" library.

Notes
-----
#.  Written by David C. Stauffer in February 2019.
#.  Extended for holcert with resolve_path.
"""

# %% Imports
import inspect
import os
import pathlib
import unittest

import holcert as hc


# %% get_root_dir
class Test_get_root_dir(unittest.TestCase):
    r"""
    Tests the get_root_dir function with the following cases:
        call the function
    """

    def test_function(self) -> None:
        filepath = inspect.getfile(hc.get_root_dir.__wrapped__)
        expected_root = pathlib.Path(os.path.split(filepath)[0])
        folder = hc.get_root_dir()
        self.assertEqual(folder, expected_root)
        self.assertTrue(folder.is_dir())


# %% get_tests_dir
class Test_get_tests_dir(unittest.TestCase):
    r"""
    Tests the get_tests_dir function with the following cases:
        call the function
    """

    def test_function(self) -> None:
        folder = hc.get_tests_dir()
        self.assertEqual(str(folder), os.path.join(str(hc.get_root_dir()), "tests"))


# %% resolve_path
class Test_resolve_path(unittest.TestCase):
    r"""
    Tests the resolve_path function with the following cases:
        None
        Relative path with and without a base folder
        Absolute path
    """

    def test_none(self) -> None:
        self.assertIsNone(hc.resolve_path(None, pathlib.Path("/runs")))

    def test_relative(self) -> None:
        base = pathlib.Path("/runs")
        self.assertEqual(hc.resolve_path("out/report.json", base), base / "out" / "report.json")
        self.assertEqual(hc.resolve_path("report.json"), pathlib.Path("report.json"))

    def test_absolute(self) -> None:
        target = hc.get_tests_dir() / "report.json"
        self.assertEqual(hc.resolve_path(str(target), pathlib.Path("/runs")), target)


# %% Unit test execution
if __name__ == "__main__":
    unittest.main(exit=False)
