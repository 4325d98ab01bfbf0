r"""
Supporting utilities: error classes, the rational/matrix text codec and unit test helpers.

Notes
-----
#.  Written by David C. Stauffer in March 2015.
#.  Extended for the holcert library with the exact rational codec and the shared error classes.
"""

# %% Imports
from __future__ import annotations

from contextlib import contextmanager
import doctest
from io import StringIO
import re
import sys
from typing import Any, Callable, Iterable, Iterator, Sequence, TextIO, TypeVar
import unittest

from sympy import ImmutableMatrix, Integer, Rational

# %% Constants
_F = TypeVar("_F", bound=Callable[..., Any])

_RATIONAL_PATTERN = re.compile(r"(?P<num>[+-]?\d+)(?:\s*/\s*(?P<den>[+-]?\d+))?")


# %% Exceptions
class InputError(ValueError):
    r"""Raised for malformed inputs, with the offending (1-based) index or entry in the message."""


class ConsistencyError(RuntimeError):
    r"""Raised when an internal invariant fails, which indicates a construction bug rather than bad input."""


# %% Classes
class CaptureOutputResult:
    r"""Class used to keep track of the standard output and error streams to assist the capture_output function."""

    def __init__(self, stdout: StringIO | TextIO | None = None, stderr: StringIO | TextIO | None = None):
        self.stdout = stdout
        self.stderr = stderr

    def close(self) -> None:
        r"""Closes any open streams."""
        if self.stdout:
            self.stdout.close()

        if self.stderr:
            self.stderr.close()

    def get_output(self) -> str:
        r"""Returns what was captured in the output stream."""
        return CaptureOutputResult.get_stream(self.stdout)

    def get_error(self) -> str:
        r"""Returns what was captured in the error stream."""
        return CaptureOutputResult.get_stream(self.stderr)

    @staticmethod
    def get_stream(std: StringIO | TextIO | None) -> str:
        r"""Gets the contents of the given stream."""
        if not std:
            return ""
        if isinstance(std, StringIO):
            return std.getvalue().strip()
        return "\n".join(std.readlines())


# %% Decorators - consecutive
def consecutive(enumeration: _F) -> _F:
    r"""Class decorator for enumerations ensuring unique and consecutive member values that start from zero."""
    duplicates = []
    non_consecutive = []
    last_value = min(enumeration.__members__.values()) - 1  # type: ignore[attr-defined]
    if last_value != -1:
        raise ValueError(f"Bad starting value (should be zero): {last_value + 1}")
    for name, member in enumeration.__members__.items():  # type: ignore[attr-defined]
        if name != member.name:
            duplicates.append((name, member.name))
        if member != last_value + 1:
            non_consecutive.append((name, member))
        last_value = member
    if duplicates:
        alias_details = ", ".join([f"{alias} -> {name}" for (alias, name) in duplicates])
        raise ValueError(f"Duplicate values found in {enumeration.__name__}: {alias_details}")
    if non_consecutive:
        alias_details = ", ".join(f"{name}: {int(member)}" for (name, member) in non_consecutive)
        raise ValueError(f"Non-consecutive values found in {enumeration.__name__}: {alias_details}")
    return enumeration


# %% Functions - is_dunder
def is_dunder(name: str) -> bool:
    """
    Returns True if a __dunder__ name, False otherwise.

    Examples
    --------
    >>> from holcert import is_dunder
    >>> print(is_dunder('__init__'))
    True

    >>> print(is_dunder('_private'))
    False

    """
    return len(name) > 4 and name[:2] == name[-2:] == "__" and name[2] != "_" and name[-3] != "_"


# %% Functions - to_rational
def to_rational(value: Any) -> Rational:
    r"""
    Convert an integer, sympy Rational or ground-domain (QQ) element into a sympy Rational.

    Examples
    --------
    >>> from holcert import to_rational
    >>> from sympy.polys.domains import QQ
    >>> print(to_rational(QQ(3, 6)))
    1/2

    """
    if isinstance(value, bool):
        raise InputError(f"Boolean {value} is not a rational number.")
    if isinstance(value, (Rational, int)):
        return Rational(value)
    try:
        return Rational(int(value.numerator), int(value.denominator))
    except AttributeError:
        raise InputError(f"Cannot interpret {value!r} as an exact rational number.") from None


# %% Functions - parse_rational
def parse_rational(value: str | int | Rational) -> Rational:
    r"""
    Parse a rational number written as "p/q" (or "p", or an int).

    Parameters
    ----------
    value : str or int or sympy.Rational
        Value to parse, strings must be of the form "p/q" or "p"

    Returns
    -------
    sympy.Rational
        Exact value, always in lowest terms with a positive denominator

    Examples
    --------
    >>> from holcert import parse_rational
    >>> print(parse_rational("-6/4"))
    -3/2

    """
    if isinstance(value, str):
        match = _RATIONAL_PATTERN.fullmatch(value.strip())
        if match is None:
            raise InputError(f'Cannot parse a rational number from "{value}".')
        den = int(match["den"]) if match["den"] is not None else 1
        if den == 0:
            raise InputError(f'Zero denominator in "{value}".')
        return Rational(int(match["num"]), den)
    return to_rational(value)


# %% Functions - format_rational
def format_rational(value: Any) -> str:
    r"""
    Format an exact rational as "p/q", using "p/1" for integers.

    Examples
    --------
    >>> from holcert import format_rational
    >>> print(format_rational(-2))
    -2/1

    """
    rat = to_rational(value)
    return f"{rat.p}/{rat.q}"


# %% Functions - parse_matrix
def parse_matrix(data: Sequence[Any], *, size: int | None = None, name: str = "matrix") -> ImmutableMatrix:
    r"""
    Parse a row-major matrix of rational strings into an exact sympy matrix.

    Parameters
    ----------
    data : list of lists, or flat list
        Row-major entries, either nested rows or a flat list of size*size entries
    size : int, optional
        Expected number of rows and columns (matrices are square), required for flat lists
    name : str, optional
        Name used in error messages

    Examples
    --------
    >>> from holcert import parse_matrix
    >>> print(parse_matrix([["0/1", "-1/1"], ["1/1", "0/1"]]))
    Matrix([[0, -1], [1, 0]])

    """
    if not isinstance(data, (list, tuple)) or not data:
        raise InputError(f"{name} must be a non-empty list of rows.")
    if all(isinstance(row, (list, tuple)) for row in data):
        rows = [[parse_rational(x) for x in row] for row in data]
    else:
        if size is None:
            raise InputError(f"{name} is given as a flat list, so its size must be known.")
        if len(data) != size * size:
            raise InputError(f"{name} has {len(data)} entries, expected {size * size}.")
        flat = [parse_rational(x) for x in data]
        rows = [flat[i * size : (i + 1) * size] for i in range(size)]
    num_rows = len(rows)
    if any(len(row) != num_rows for row in rows):
        raise InputError(f"{name} is not square.")
    if size is not None and num_rows != size:
        raise InputError(f"{name} is {num_rows}x{num_rows}, expected {size}x{size}.")
    return ImmutableMatrix(rows)


# %% Functions - format_matrix
def format_matrix(mat: ImmutableMatrix) -> list[list[str]]:
    r"""Format an exact matrix as row-major nested lists of "p/q" strings."""
    return [[format_rational(mat[i, j]) for j in range(mat.cols)] for i in range(mat.rows)]


# %% Functions - format_vector
def format_vector(values: Iterable[Any]) -> list[str]:
    r"""Format a sequence of exact values as "p/q" strings."""
    return [format_rational(x) for x in values]


# %% Functions - is_zero_matrix
def is_zero_matrix(mat: ImmutableMatrix) -> bool:
    r"""Whether every entry of an exact matrix is zero."""
    return all(x == Integer(0) for x in mat)


# %% Functions - capture_output
@contextmanager
def capture_output(mode: str = "out") -> Iterator[CaptureOutputResult]:
    r"""
    Capture the stdout and stderr streams instead of displaying to the screen.

    Parameters
    ----------
    mode : str
        Mode to use when capturing output
            "out" captures just sys.stdout
            "err" captures just sys.stderr
            "all" captures both sys.stdout and sys.stderr

    Examples
    --------
    >>> from holcert import capture_output
    >>> with capture_output() as ctx:
    ...     print('Hello, World!')
    >>> output = ctx.get_output()
    >>> ctx.close()
    >>> print(output)
    Hello, World!

    """
    capture_out = mode in {"out", "all"}
    capture_err = mode in {"err", "all"}
    new_out, new_err = StringIO(), StringIO()
    old_out, old_err = sys.stdout, sys.stderr
    try:
        if capture_out:
            sys.stdout = new_out
        if capture_err:
            sys.stderr = new_err
        if mode == "out":
            yield CaptureOutputResult(stdout=sys.stdout)
        elif mode == "err":
            yield CaptureOutputResult(stderr=sys.stderr)
        elif mode == "all":
            yield CaptureOutputResult(stdout=sys.stdout, stderr=sys.stderr)
    finally:
        sys.stdout, sys.stderr = old_out, old_err


# %% Unit test
if __name__ == "__main__":
    unittest.main(module="holcert.tests.test_utils", exit=False)
    doctest.testmod(verbose=False)
