r"""
Test file for the `enums` module of the "holcert" library.

Notes
-----
#.  Written by David C. Stauffer in July 2015.
#.  Extended for the holcert return codes, check statuses and enumeration modes.
"""

# %% Imports
from enum import unique
import logging
from typing import ClassVar
import unittest

import holcert as hc


# %% Support
class _Example_Enum(hc.IntEnumPlus):
    field_one: ClassVar[int] = 1
    field_two: ClassVar[int] = 2
    field_ten: ClassVar[int] = 10


# %% IntEnumPlus
class Test_IntEnumPlus(unittest.TestCase):
    r"""
    Tests the IntEnumPlus class with the following cases:
        printing of instances and of the class
        listing of the return codes
        bad attribute
        bad uniqueness
    """

    def test_printing_instance_str(self) -> None:
        with hc.capture_output() as ctx:
            print(_Example_Enum.field_one)
            print(_Example_Enum.field_two)
        output = ctx.get_output()
        ctx.close()
        self.assertEqual(output, "_Example_Enum.field_one: 1\n_Example_Enum.field_two: 2")

    def test_printing_class_str(self) -> None:
        with hc.capture_output() as ctx:
            print(_Example_Enum)
        output = ctx.get_output()
        ctx.close()
        self.assertEqual(output, "_Example_Enum.field_one: 1\n_Example_Enum.field_two: 2\n_Example_Enum.field_ten: 10")

    def test_return_code_listing(self) -> None:
        lines = repr(hc.ReturnCodes).split("\n")
        self.assertEqual(len(lines), len(hc.ReturnCodes))
        self.assertEqual(str(hc.ReturnCodes).split("\n")[-1], "ReturnCodes.pipeline_error: 9")

    def test_bad_attribute(self) -> None:
        with self.assertRaises(AttributeError):
            _Example_Enum.non_existant_field

    def test_bad_uniqueness(self) -> None:
        with self.assertRaises(ValueError):

            @unique
            class _BadUnique(hc.IntEnumPlus):
                a = 1
                b = 2
                c = 2


# %% ReturnCodes
class Test_ReturnCodes(unittest.TestCase):
    r"""
    Tests the ReturnCodes enumerator with the following cases:
        Clean code
        Not clean codes
        Verification codes
    """

    def test_clean(self) -> None:
        self.assertEqual(hc.ReturnCodes.clean, 0)

    def test_not_clean(self) -> None:
        rc = hc.ReturnCodes
        for key in rc.__members__:
            if key == "clean":
                continue
            value = getattr(rc, key)
            self.assertGreater(value, 0)
            self.assertIsInstance(value, int)

    def test_verification_codes(self) -> None:
        self.assertEqual(hc.ReturnCodes.bad_folder, 2)
        self.assertEqual(hc.ReturnCodes.bad_config, 7)
        self.assertEqual(hc.ReturnCodes.check_failures, 8)
        self.assertEqual(hc.ReturnCodes.pipeline_error, 9)


# %% LogLevel
class Test_LogLevel(unittest.TestCase):
    r"""
    Tests the LogLevel enumerator with the following cases:
        Ordering
        Registered level names
    """

    def test_ordering(self) -> None:
        self.assertGreater(hc.LogLevel.L0, hc.LogLevel.L3)
        self.assertGreater(hc.LogLevel.L3, hc.LogLevel.L5)
        self.assertGreater(hc.LogLevel.L5, hc.LogLevel.L8)
        self.assertEqual(hc.LogLevel.L5, logging.INFO)

    def test_level_names(self) -> None:
        self.assertEqual(logging.getLevelName(hc.LogLevel.L3), "L3")
        self.assertEqual(logging.getLevelName(hc.LogLevel.L8), "L8")


# %% CheckStatus
class Test_CheckStatus(unittest.TestCase):
    r"""
    Tests the CheckStatus enumerator with the following cases:
        Serialized values
        Lookup by value
    """

    def test_values(self) -> None:
        self.assertEqual([x.value for x in hc.CheckStatus], ["pass", "fail", "heuristic-pass", "skipped"])

    def test_lookup(self) -> None:
        self.assertIs(hc.CheckStatus("heuristic-pass"), hc.CheckStatus.heuristic_pass)


# %% EnumerationMode
class Test_EnumerationMode(unittest.TestCase):
    r"""
    Tests the EnumerationMode enumerator with the following cases:
        Lookup by value
        Unknown value
    """

    def test_lookup(self) -> None:
        self.assertIs(hc.EnumerationMode("exhaustive"), hc.EnumerationMode.exhaustive)

    def test_unknown(self) -> None:
        with self.assertRaises(ValueError):
            hc.EnumerationMode("greedy")


# %% Unit test execution
if __name__ == "__main__":
    unittest.main(exit=False)
