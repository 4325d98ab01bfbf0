r"""
Generic path functions that can be called independent of the current working directory.

Notes
-----
#.  Written by David C. Stauffer in March 2015.
#.  Moved out of utils and into paths.py file in February 2019 by David C. Stauffer.
#.  Adapted for the holcert library with relative path resolution for configuration files.
"""

# %% Imports
from __future__ import annotations

import doctest
from functools import lru_cache
from pathlib import Path
from typing import Any
import unittest


# %% Functions - get_root_dir
@lru_cache
def get_root_dir() -> Path:
    r"""
    Return the folder that contains this source file and thus the root folder for the whole code.

    Returns
    -------
    class pathlib.Path
        Location of the folder that contains all the source files for the code.

    Examples
    --------
    >>> from holcert import get_root_dir
    >>> print("p = ", repr(get_root_dir()))  # doctest: +ELLIPSIS
    p = .../holcert')

    """
    return Path(__file__).resolve().parent


# %% Functions - get_tests_dir
@lru_cache
def get_tests_dir() -> Path:
    r"""
    Return the default test folder location.

    Examples
    --------
    >>> from holcert import get_tests_dir
    >>> print("p = ", repr(get_tests_dir()))  # doctest: +ELLIPSIS
    p = .../holcert/tests')

    """
    return get_root_dir() / "tests"


# %% Functions - resolve_path
def resolve_path(value: Any, base_dir: Path | None = None) -> Path | None:
    r"""
    Turn a configured path into a Path, relative paths being taken against base_dir.

    Parameters
    ----------
    value : str or pathlib.Path or None
        Path as written in a configuration file or on the command line
    base_dir : pathlib.Path, optional
        Folder of the configuration file

    Returns
    -------
    pathlib.Path or None
        Resolved path, None when value is None

    Examples
    --------
    >>> from holcert import resolve_path
    >>> from pathlib import Path
    >>> print(resolve_path("out/report.json", Path("/runs")).as_posix())
    /runs/out/report.json
    >>> print(resolve_path(None))
    None

    """
    if value is None:
        return None
    path = Path(value)
    if not path.is_absolute() and base_dir is not None:
        path = base_dir / path
    return path


# %% Unit test
if __name__ == "__main__":
    unittest.main(module="holcert.tests.test_paths", exit=False)
    doctest.testmod(verbose=False)
